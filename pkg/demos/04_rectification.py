"""
Rectification in Z/p
====================

Dilate a set until it sits inside (-p/4, p/4); then Z/p addition agrees
with integer addition on it, and a greedy pass produces an acyclic
matching.
"""

from matchlab import rectify as rc
from matchlab.abelian import GSubset, cyclic
from matchlab.acyclic import is_acyclic

G = cyclic(101)
phi = rc.find_embedding(GSubset(G, [0, 1, 50]))
print("dilation", phi.dilation, "values", phi.values)

A, B = GSubset(G, [1, 2, 9]), GSubset(G, [3, 4, 6])
f = rc.acyclic_via_rectification(A, B)
print("matching", f.perm, "acyclic:", is_acyclic(A, B, f).acyclic)

# %%
# Large primes are fine since only |X| elements are ever touched.
p = 999983
G = cyclic(p)
A, B = GSubset(G, [5, 1000, 250000]), GSubset(G, [3, 17, 999000])
f = rc.acyclic_via_rectification(A, B)
print("p =", p, "->", None if f is None else f.perm)
