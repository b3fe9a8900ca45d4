# coding: utf-8

# # Mixing certificates
#
# u^n - 1 is outside the ideal <f, g> as soon as it is nonzero at one point
# of the variety.  The sweep looks for such a point for every nonzero n in a
# box and keeps an error bound with each value.

# In[1]:

import cmath
import math

from etdyn.classify import SystemPresentation, mixing_sweep, recheck_witness
from etdyn.laurent import parse_poly

P1 = SystemPresentation("P1", parse_poly("1+u1+u2", 2), parse_poly("u3-2", 1))
zeta3 = cmath.exp(2j * math.pi / 3)

# Points with x1 in {zeta3, 1, -2} already suffice for the box of radius 2.

# In[2]:

rep = mixing_sweep(P1, 2, radii=(), extra_x1=(zeta3, 1, -2))
print(len(rep.certified()), "of", len(rep.entries), "certified")

# In[3]:

for e in rep.entries[:6]:
    print(e.n, e.status, [complex(round(z.real, 3), round(z.imag, 3)) for z in e.witness],
          round(e.value, 6), "+-", e.error)

# Each witness survives a recheck at 40 digits:

# In[4]:

print(min(recheck_witness(P1, e) - e.error for e in rep.certified()) > 0)
