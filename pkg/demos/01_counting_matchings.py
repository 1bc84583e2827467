"""
Counting matchings in Z/n
=========================

A matching sends A onto B with a + f(a) outside A.  The 0/1 matrix
with a 1 where a_i + b_j misses A has one permutation term per matching,
so its permanent counts them.
"""

import numpy as np

from matchlab import matchcount as mc
from matchlab.abelian import GSubset, cyclic

G = cyclic(7)
A = B = GSubset(G, [1, 2, 4])
M = mc.build_bigraph(A, B)
print(np.array(M.rows))

# two matchings, both 3-cycles
print("permanent:", mc.permanent(M))
for f in mc.iter_matchings(M):
    print("  matching", f.perm)

# %%
# Row sums give cheap bounds on either side of the permanent.
b = mc.bounds(M)
print("Ostrand lower", b.ostrand_lower, " Bregman-Minc upper", round(b.bregman_minc_upper, 3))

# %%
# A subgroup can block matchings altogether: in Z/6 every a + b with
# a in {0,2,4} and b in {2} stays inside A.
G6 = cyclic(6)
M6 = mc.build_bigraph(GSubset(G6, [0, 2, 4]), GSubset(G6, [1, 2, 3]))
print("Z/6 example has a perfect matching:", mc.has_perfect_matching(M6))

# %%
# Larger matrices go through the modular Ryser path.
J = np.ones((16, 16), dtype=int)
print("per(J_16) = 16! ?", mc.permanent(J.tolist()) == np.prod(np.arange(1, 17, dtype=object)))
