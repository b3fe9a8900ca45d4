# coding: utf-8

# # Entropy of a tilted sub-action
#
# Take f = 1 + u1 + u2 with two different g of degree two, both with roots of
# modulus sqrt(10).  Along the subgroup spanned by e1 and e2 - e3 the entropy
# of both systems is log 10.  Along e1, e2 + e3 they still agree with each
# other, at a larger value.

# In[1]:

import math

from etdyn.classify import SystemPresentation, eisenstein, is_ET
from etdyn.entropy import generic_relation, sublattice_entropy
from etdyn.laurent import parse_poly
from etdyn.lattice import classify_lattice, parse_lattice

f = parse_poly("1+u1+u2", 2)
g1 = SystemPresentation("g1", f, parse_poly("u3^2+2*u3+10", 1))
g2 = SystemPresentation("g2", f, parse_poly("u3^2+4*u3+10", 1))
for s in (g1, g2):
    print(s.name, is_ET(s).summary(), "irreducible (Eisenstein at 2):", eisenstein(s.g, 2))

# In[2]:

tilt = parse_lattice("1,0,0;0,1,-1")
case = classify_lattice(tilt)
print(case.tag, "n =", case.n, "m =", case.m)
print("relation:", generic_relation(g1, tilt))

# In[3]:

for s in (g1, g2):
    r = sublattice_entropy(s, tilt)
    print(s.name, r.value.value, "log 10 =", math.log(10))

# In[4]:

other = parse_lattice("1,0,0;0,1,1")
for s in (g1, g2):
    r = sublattice_entropy(s, other)
    print(s.name, r.value.value, "+-", r.value.error)
