"""
Acyclic matchings
=================

A matching is acyclic when no other matching A -> B has the same
multiplicity function.  The orbit of 2 in Z/7 admits none.
"""

from matchlab import acyclic as ac
from matchlab.abelian import GSubset, cyclic
from matchlab.matchcount import MatchingFn

A = ac.jafari_set(7)
print("A =", A.as_ints(), " acyclic self-matching:", ac.find_acyclic_matching(A, A))

f = MatchingFn((1, 2, 0))
res = ac.is_acyclic(A, A, f)
print("f =", f.perm, "acyclic:", res.acyclic, " same multiplicities as", res.witness.perm)
print("multiplicity:", ac.multiplicity(A, A, f).to_json())

# %%
# Same story for p = 23, where 2 has order 11.
A23 = ac.jafari_set(23)
print(len(A23), "elements, acyclic:", ac.find_acyclic_matching(A23, A23))

# %%
# With B a Sidon set and A missing A + B, an acyclic matching exists.
A, B = ac.geometric_example(20, 3)
f = ac.sidon_acyclic_search(A, B)
print("A =", A.as_ints(), "B =", B.as_ints(), "->", f.perm)

# %%
# A small sweep of the weak property.
rep = ac.weak_acyclic_property(9, 3)
print(rep.to_json())

# %%
# Two-deficient closed form against enumeration.  When g2 - g1 does not
# generate Z/n some matchings fall outside the closed form.
for g in [(0, 1, 3), (0, 2, 2)]:
    n = 7 if g == (0, 1, 3) else 4
    ms = ac.two_deficient_matchings(cyclic(n), *g)
    print(f"Z/{n} g={g}: closed form gives l =", [m.l for m in ms])
