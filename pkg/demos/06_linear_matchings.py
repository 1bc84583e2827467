"""
Linear matchings in F_16 / F_2
==============================

Matched bases, strong matchings and equivalent isomorphisms, using
F_4 inside F_16 as the running example.
"""

from matchlab import gfield as gf, linmatch as lm

t = gf.make_tower(2, 1, 4)
E = gf.subfield_lattice(t)[2]
omega = next(a for a in E.elements() if not t.in_F(a))

# %%
# With B spanned by omega and x the two sets a_i^-1 A n B coincide, so
# no basis of B can be matched to {1, omega}.
rep = lm.dimension_criterion(E, [1, omega], gf.span(t, [omega, 2]))
print(rep.to_json())

# %%
# B = alpha E with alpha outside E gives a strong matching, and
# multiplication by alpha has an equivalent map that is not a multiple.
res = lm.prop38_counterexample(t)
print("alpha", res.alpha, "beta", res.beta)
print("equivalent:", lm.equivalence_check(res.f, res.g, res.phi),
      " scalar multiple:", lm.is_scalar_multiple(res.f, res.g))

# %%
# The map a -> alpha * a^2 on the same pair has no such partner.
L = t.L
B = gf.scale(E, res.alpha)
conj = lm.LinearIso.from_function(E, B, lambda a: L.mul(res.alpha, L.pow(a, 2)))
print("alpha * conj acyclic:", lm.linear_acyclic_check(conj).acyclic)

# %%
# Exhaustively, every strong pair in F_16 has some acyclic isomorphism.
print(lm.linear_acyclic_property_sweep(t).to_json())

# %%
# In F_64 the degree-3 subfield gives a pair with none.
print(lm.non_acyclic_certificate(gf.make_tower(2, 1, 6)).to_json())
