"""
Primitive subspaces of F_{q^n} over F_q
=======================================

A subspace is primitive when each nonzero element generates the whole
field, i.e. it misses every proper intermediate field.  The largest
dimension is n minus the largest proper divisor of n.
"""

from matchlab import gfield as gf

t = gf.make_tower(2, 1, 6)
for d, E in gf.subfield_lattice(t).items():
    print(f"degree {d}: basis {E.basis_elements()}")

rep = gf.max_primitive_subspace(t)
print("dimension", rep.dim, "spanned by", rep.witness.basis_elements(),
      "T indices", rep.T.T_indices())
print("every nonzero element has degree 6:", all(deg == 6 for _, deg in rep.certificate))

# %%
# The greedy complement of the maximal subfields reaches the same size.
print("greedy:", gf.max_primitive_subspace(t, method="greedy").dim)

# %%
# n = 12 has a square factor; the construction first moves to F_4.
rep = gf.max_primitive_subspace(gf.make_tower(2, 1, 12))
print("n=12: dim", rep.dim, "base degree", rep.reduced_base_degree)

# %%
T = gf.build_T_complement(30)
print("T for n=30 has", len(T.T), "points")
