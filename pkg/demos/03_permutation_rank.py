"""
Rank of 2I - P_alpha - P_beta
=============================

The all-ones vector always lies in the kernel.  The rank over Q equals k
minus the number of orbits of the group generated by alpha and beta.
"""

import itertools

from matchlab import permrank as pr

for alpha, beta in [((1, 2, 0), (1, 2, 0)), ((1, 0, 2), (1, 0, 2)), ((1, 0, 2), (0, 2, 1))]:
    M = pr.theorem_matrix(alpha, beta)
    print(alpha, beta, "rank", pr.rank_rational(M), "orbits", pr.orbit_count(alpha, beta),
          "t-coefficient", pr.t_coefficient(M))

# %%
# Over all of S_4 x S_4, the t-coefficient stays below k 2^(k-1).
worst = max(abs(pr.t_coefficient(pr.theorem_matrix(a, b)))
            for a, b in itertools.product(itertools.permutations(range(4)), repeat=2))
print("max |t-coefficient| on S_4:", worst, "bound", 4 * 2**3)

# %%
rep = pr.nullity_property_check(3, 13)
print(rep.to_json())
