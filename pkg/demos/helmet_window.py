# coding: utf-8

# # A window of the space helmet
#
# The helmet is the system with f = 1 + u1 + u2 and g = u3 - 2.  A point of
# it is a torus-valued configuration x on Z^3 with
#
#     x[n] + x[n + e1] + x[n + e2] = 0   and   x[n + e3] = 2 x[n]   (mod 1).
#
# On a finite box only a few cells can be chosen freely; everything else is
# forced.

# In[1]:

import numpy as np

from etdyn.classify import SystemPresentation
from etdyn.laurent import parse_poly
from etdyn.shiftspace import build_window, complete_window, relation_matrix, verify_window

helmet = SystemPresentation("helmet", parse_poly("1+u1+u2", 2), parse_poly("u3-2", 1))

# In[2]:

space = build_window(helmet, (10, 10, 6))
print("cells", space.size, "free", len(space.free_set))
print("f placements", space.f_placements, "g placements", space.g_placements)

# The free count is not size minus the number of placements, since the
# relations overlap.  It is size minus the rank of the relation matrix:

# In[3]:

small = build_window(helmet, (4, 4, 3))
A = relation_matrix(small)
print(small.size - np.linalg.matrix_rank(A), "==", len(small.free_set))

# In[4]:

rng = np.random.default_rng(0)
cfg = complete_window(space, {c: rng.random() for c in space.free_set})
print("max residual", verify_window(cfg))

# Going up one level doubles every value mod 1:

# In[5]:

print(np.round(cfg.values[:3, 0, :], 4))
