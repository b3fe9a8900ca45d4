# coding: utf-8

# # Comparing sub-action entropies
#
# Two systems are compared on every rank-two subgroup in a box.  P1 and P2
# differ only in the sign of the root of g, and have the same entropies.  The
# pair M, N is related by squaring u1 and u2.  The two helmets with
# g = u3 - 2 and g = u3 - 3 are told apart on a single tilted subgroup.

# In[1]:

from collections import Counter

from etdyn.classify import SystemPresentation
from etdyn.entropy import entropy_equivalent, sublattice_entropy
from etdyn.laurent import parse_poly
from etdyn.lattice import classify_lattice, enumerate_sublattices, parse_lattice


def mk(name, f, g):
    return SystemPresentation(name, parse_poly(f, 2), parse_poly(g, 1))


P1, P2 = mk("P1", "1+u1+u2", "u3-2"), mk("P2", "1+u1+u2", "u3+2")
M, N = mk("M", "1+u1+u2", "u3-4"), mk("N", "1+u1^2+u2^2", "u3-2")

# In[2]:

family = enumerate_sublattices(1)
rep = entropy_equivalent(P1, P2, family)
print(len(family), "subgroups", Counter(r.verdict for r in rep.rows), "->", rep.verdict)

# In[3]:

generic = [lat for lat in family if classify_lattice(lat).tag == "generic"]
rep = entropy_equivalent(M, N, generic)
for r in rep.rows[:5]:
    print(r.lattice, r.result1.value.value, r.result2.value.value, r.verdict)
print(rep.verdict)

# In[4]:

tilt = parse_lattice("1,0,0;0,1,-1")
for g in ("u3-2", "u3-3"):
    print(g, sublattice_entropy(mk(g, "1+u1+u2", g), tilt).value.value)
