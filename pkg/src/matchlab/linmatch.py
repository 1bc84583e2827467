"""Linear matchings between F-subspaces of a finite extension L/F.

For an ordered basis a_1..a_k of A, put S_i = a_i^-1 A n B.  A basis
b_1..b_k of B is matched to it when S_i lies in the span of the b_j with
j != i.  Choosing b amounts to choosing independent functionals
phi_i on B with phi_i vanishing on S_i (the dual basis of b), so the
dimension criterion is Rado's condition for the family Ann(S_i).

Maps are F-linear isomorphisms stored by the images of the echelon basis
of their domain; everything else is checked by exhaustive evaluation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import config
from .errors import CapExceeded, ClaimFailed, InputError, SoundnessError
from .gfield import (FieldTower, Subspace, all_subspaces, intersect, proper_subfields,
                     scale, span, subfield_lattice)


class LinearIso:
    """An F-linear bijection domain -> codomain."""

    def __init__(self, domain: Subspace, codomain: Subspace, images: Sequence[int]):
        t = domain.tower
        if codomain.tower != t:
            raise InputError("domain and codomain live in different towers")
        if domain.dim != codomain.dim:
            raise InputError(f"dimensions differ: {domain.dim} vs {codomain.dim}")
        images = tuple(int(y) for y in images)
        if len(images) != domain.dim:
            raise InputError("need one image per domain basis vector")
        if any(not codomain.contains(y) for y in images):
            raise InputError("an image lies outside the codomain")
        if t.rank([t.coords(y) for y in images]) != domain.dim:
            raise InputError("images are dependent; the map is not invertible")
        self.tower, self.domain, self.codomain, self.images = t, domain, codomain, images
        self._table = None

    @classmethod
    def multiplication(cls, domain, codomain, alpha):
        L = domain.tower.L
        return cls(domain, codomain, [L.mul(alpha, b) for b in domain.basis_elements()])

    @classmethod
    def from_function(cls, domain, codomain, fn, check=True):
        """Build from a Python function; with ``check`` it must agree with its
        linear extension everywhere on the domain."""
        f = cls(domain, codomain, [fn(b) for b in domain.basis_elements()])
        if check and any(f(a) != fn(a) for a in domain.elements()):
            raise InputError("function is not F-linear on the domain")
        return f

    @property
    def k(self):
        return self.domain.dim

    @property
    def matrix(self):
        """Row i holds the coefficients of f(basis_i) in the codomain echelon basis."""
        return [list(self.codomain.coefficients(y)) for y in self.images]

    def _apply(self, a):
        L = self.tower.L
        out = 0
        for c, y in zip(self.domain.coefficients(a), self.images):
            if c:
                out = L.add(out, L.mul(c, y))
        return out

    def table(self):
        if self._table is None:
            self._table = {a: self._apply(a) for a in self.domain.elements()}
        return self._table

    def __call__(self, a):
        if self._table is not None:
            return self._table[a]
        return self._apply(a)

    def __eq__(self, other):
        return (isinstance(other, LinearIso) and self.domain == other.domain
                and self.codomain == other.codomain and self.images == other.images)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.images))

    def __repr__(self):
        return f"LinearIso(images={list(self.images)})"

    def scaled(self, c):
        L = self.tower.L
        return LinearIso(self.domain, self.codomain, [L.mul(c, y) for y in self.images])

    def to_json(self):
        return {"domain": self.domain.to_json(), "codomain": self.codomain.to_json(),
                "images": list(self.images), "matrix": self.matrix}


def _check_same(A: Subspace, B: Subspace):
    if A.tower != B.tower:
        raise InputError("subspaces belong to different towers")


def is_scalar_multiple(f: LinearIso, g: LinearIso) -> bool:
    """True iff g = c f for some c in F \\ {0}."""
    if f.domain != g.domain or f.codomain != g.codomain:
        return False
    L, t = f.tower.L, f.tower
    c = L.div(g.images[0], f.images[0]) if f.images else 1
    return t.in_F(c) and all(L.mul(c, y) == z for y, z in zip(f.images, g.images))


def equivalence_check(f: LinearIso, g: LinearIso, phi: LinearIso) -> bool:
    """a f(a) = phi(a) g(phi(a)) for every a in A, checked at every point."""
    A = f.domain
    if g.domain != A or phi.domain != A or phi.codomain != A or g.codomain != f.codomain:
        raise InputError("f, g must share domain and codomain and phi must be an automorphism of A")
    L = f.tower.L
    return all(L.mul(a, f(a)) == L.mul(phi(a), g(phi(a))) for a in A.elements())


# -- dimension criterion ---------------------------------------------------------

@dataclass
class CriterionReport:
    basis: list
    subspaces: list  # S_i = a_i^-1 A n B
    failing: list = field(default_factory=list)  # every J (0-based) violating the inequality
    matched_basis: Optional[list] = None

    @property
    def passes(self):
        return not self.failing

    @property
    def failing_J(self):
        return self.failing[0] if self.failing else None

    def to_json(self):
        return {
            "passes": self.passes,
            "basis": list(self.basis),
            "subspaces": [S.to_json() for S in self.subspaces],
            "failing_J": None if self.failing_J is None else [i + 1 for i in self.failing_J],
            "failing_sizes": sorted({len(J) for J in self.failing}),
            "matched_basis": self.matched_basis,
        }


def _in_basis_coords(B: Subspace, S: Subspace):
    return [B.coefficients(y) for y in S.basis_elements()]


def _annihilator(t: FieldTower, k: int, vecs):
    """Basis of {phi in F^k : phi . v = 0 for all v in vecs}."""
    if not vecs:
        return [tuple(1 if i == j else 0 for j in range(k)) for i in range(k)]
    rows = [tuple(v[j] for v in vecs) for j in range(k)]
    return t.left_kernel(rows)


def _dot(L, u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = L.add(acc, L.mul(x, y))
    return acc


def _combos(t: FieldTower, basis):
    """Every F-combination of the given coordinate vectors, zero first."""
    L = t.L
    width = len(basis[0]) if basis else 0
    for cs in itertools.product(t.F, repeat=len(basis)):
        out = [0] * width
        for c, b in zip(cs, basis):
            if c:
                out = [L.add(o, L.mul(c, v)) for o, v in zip(out, b)]
        yield tuple(out)


def _rado_ok(t, anns, remaining, chosen, k):
    """Rado's condition for extending ``chosen`` by one functional from each
    Ann(S_i), i in remaining."""
    base = t.rank(chosen) if chosen else 0
    for r in range(1, len(remaining) + 1):
        for J in itertools.combinations(remaining, r):
            rows = list(chosen) + [v for i in J for v in anns[i]]
            if (t.rank(rows) if rows else 0) - base < r:
                return False
    return True


def per_basis_matched(A_basis, B_basis, A: Subspace, B: Subspace) -> bool:
    """Check a_i^-1 A n B inside <b_j : j != i> for every i."""
    t = A.tower
    L = t.L
    for i, a in enumerate(A_basis):
        S = intersect(scale(A, L.inv(a)), B)
        others = span(t, [b for j, b in enumerate(B_basis) if j != i])
        if any(not others.contains(y) for y in S.basis_elements()):
            return False
    return True


def dimension_criterion(A: Subspace, basisA: Sequence[int], B: Subspace,
                        cap: Optional[int] = None) -> CriterionReport:
    """Check dim of the intersection of S_i over J is at most k - #J for every
    nonempty J, and on success produce a matched basis of B."""
    _check_same(A, B)
    t = A.tower
    L = t.L
    basisA = [int(a) for a in basisA]
    k = len(basisA)
    cap = config.CAPS.criterion if cap is None else cap
    if k > cap:
        raise CapExceeded("dimension criterion", k, cap)
    if A.dim != B.dim:
        raise InputError(f"dim A = {A.dim} differs from dim B = {B.dim}")
    if k != A.dim or any(a == 0 or not A.contains(a) for a in basisA) \
            or t.rank([t.coords(a) for a in basisA]) != k:
        raise InputError("basisA is not a basis of A")

    S = [intersect(scale(A, L.inv(a)), B) for a in basisA]
    rep = CriterionReport(basisA, S)
    for r in range(1, k + 1):
        for J in itertools.combinations(range(k), r):
            inter = S[J[0]]
            for i in J[1:]:
                inter = intersect(inter, S[i])
            if inter.dim > k - r:
                rep.failing.append(J)
    if rep.failing:
        return rep

    anns = [_annihilator(t, k, _in_basis_coords(B, Si)) for Si in S]
    chosen = []
    for i in range(k):
        rest = list(range(i + 1, k))
        pick = None
        for phi in _combos(t, anns[i]):
            if not any(phi) or t.rank(chosen + [phi]) <= len(chosen):
                continue
            if _rado_ok(t, anns, rest, chosen + [phi], k):
                pick = phi
                break
        if pick is None:
            raise SoundnessError("criterion holds but no matched basis was found")
        chosen.append(pick)

    # b_j is the dual basis: phi_i(b_j) = [i == j]
    Binv = _invert(t, [list(r) for r in chosen])
    Bcoords = B.basis_elements()
    matched = []
    for j in range(k):
        col = [Binv[r][j] for r in range(k)]
        y = 0
        for c, b in zip(col, Bcoords):
            if c:
                y = L.add(y, L.mul(c, b))
        matched.append(y)
    for i in range(k):
        if any(_dot(L, chosen[i], B.coefficients(y)) != (1 if i == j else 0)
               for j, y in enumerate(matched)):
            raise SoundnessError("dual basis computation failed")
    if not per_basis_matched(basisA, matched, A, B):
        raise SoundnessError("produced basis does not satisfy the matching condition")
    full = S[0]
    for Si in S[1:]:
        full = intersect(full, Si)
    if full.dim or B.contains(1):
        raise SoundnessError("matched bases need a trivial total intersection and 1 outside B")
    rep.matched_basis = matched
    return rep


def _invert(t: FieldTower, M):
    k = len(M)
    aug = [list(r) + [1 if i == j else 0 for j in range(k)] for i, r in enumerate(M)]
    red, piv = t.rref(aug)
    if piv[:k] != list(range(k)):
        raise InputError("matrix is singular")
    return [list(r[k:]) for r in red]


def random_basis(A: Subspace, rng: random.Random):
    """A uniformly random ordered basis of A."""
    t = A.tower
    elems = list(A.elements())
    out = []
    while len(out) < A.dim:
        y = rng.choice(elems)
        if y and t.rank([t.coords(v) for v in out + [y]]) == len(out) + 1:
            out.append(y)
    return out


def ordered_bases(A: Subspace, cap: Optional[int] = None):
    """Every ordered basis of A (only for tiny A)."""
    t = A.tower
    cap = config.CAPS.gl_enum if cap is None else cap
    n = 1
    for i in range(A.dim):
        n *= A.size() - t.q**i
    if n > cap:
        raise CapExceeded("ordered bases", n, cap)
    elems = [a for a in A.elements() if a]

    def rec(prefix, rank_rows):
        if len(prefix) == A.dim:
            yield list(prefix)
            return
        for y in elems:
            c = t.coords(y)
            if t.rank(rank_rows + [c]) == len(prefix) + 1:
                yield from rec(prefix + [y], rank_rows + [c])

    yield from rec([], [])


def matchable_sample(A: Subspace, B: Subspace, trials: int = 100, seed: int = 0):
    """Run the criterion on random bases of A.  Returns (all passed, first failing basis)."""
    rng = random.Random(seed)
    for _ in range(trials):
        basis = random_basis(A, rng)
        if not dimension_criterion(A, basis, B).passes:
            return False, basis
    return True, None


# -- strong matchings ---------------------------------------------------------------

def product_in_A(A: Subspace, B: Subspace, cap: Optional[int] = None):
    """A pair (a', b') of nonzero elements with a'b' in A, or None."""
    _check_same(A, B)
    cap = config.CAPS.subspace_enum if cap is None else cap
    if A.size() * B.size() > cap:
        raise CapExceeded("product set", A.size() * B.size(), cap)
    L = A.tower.L
    Bs = [b for b in B.elements() if b]
    for a in A.elements():
        if a:
            for b in Bs:
                if A.contains(L.mul(a, b)):
                    return a, b
    return None


def strong_matching_exists(A: Subspace, B: Subspace, cap: Optional[int] = None) -> bool:
    """A n AB = {0}, with AB the set of products."""
    if A.dim == 0:
        return True
    return product_in_A(A, B, cap) is None


def is_strong_matching(f: LinearIso, cap: Optional[int] = None) -> bool:
    """Every ordered basis of A is matched to its image (enumerates all bases)."""
    A, B = f.domain, f.codomain
    return all(per_basis_matched(basis, [f(a) for a in basis], A, B)
               for basis in ordered_bases(A, cap))


# -- acyclicity -----------------------------------------------------------------------

def automorphisms(A: Subspace, cap: Optional[int] = None):
    """All of GL(A), each as a LinearIso A -> A."""
    for images in ordered_bases(A, cap):
        yield LinearIso(A, A, images)


@dataclass
class AcyclicReport:
    acyclic: bool
    witness: Optional[tuple] = None  # (g, phi)
    automorphisms_checked: int = 0

    def __bool__(self):
        return self.acyclic

    def to_json(self):
        w = None
        if self.witness:
            g, phi = self.witness
            w = {"g": g.to_json(), "phi": phi.to_json()}
        return {"acyclic": self.acyclic, "witness": w,
                "automorphisms_checked": self.automorphisms_checked}


def _solve_g(f: LinearIso, phi: LinearIso) -> Optional[LinearIso]:
    """The unique g with a f(a) = phi(a) g(phi(a)), if it is F-linear."""
    A, B = f.domain, f.codomain
    L = f.tower.L
    vals = {0: 0}
    for a in A.elements():
        if a:
            pa = phi(a)
            vals[pa] = L.div(L.mul(a, f(a)), pa)
    try:
        g = LinearIso(A, B, [vals[b] for b in A.basis_elements()])
    except InputError:
        return None
    if any(g(y) != v for y, v in vals.items()):
        return None
    return g


def multiplier_automorphisms(A: Subspace):
    """The automorphisms a -> beta a of A (beta A = A), beta in increasing order."""
    L = A.tower.L
    nz = [a for a in A.elements() if a]
    if not nz:
        return
    a0 = nz[0]
    for beta in sorted({L.div(a, a0) for a in nz}):
        if all(A.contains(L.mul(beta, b)) for b in A.basis_elements()):
            yield LinearIso.multiplication(A, A, beta)


def equivalent_maps(f: LinearIso, cap: Optional[int] = None):
    """Yield (g, phi) for every automorphism phi admitting an equivalent g.

    Multiplications come first since they give the usual witnesses; they
    are visited again (and yielded twice) in the full GL(A) sweep.
    """
    A = f.domain
    f.table()
    for phi in itertools.chain(multiplier_automorphisms(A), automorphisms(A, cap)):
        phi.table()
        g = _solve_g(f, phi)
        if g is not None:
            yield g, phi


def linear_acyclic_check(f: LinearIso, cap: Optional[int] = None) -> AcyclicReport:
    """Search GL(A) for an equivalent g that is not a scalar multiple of f."""
    if not strong_matching_exists(f.domain, f.codomain):
        raise InputError("A n AB is not {0}; f is not a strong matching")
    n = 0
    for g, phi in equivalent_maps(f, cap):
        n += 1
        if not is_scalar_multiple(f, g):
            if not equivalence_check(f, g, phi):
                raise SoundnessError("solved g fails the equivalence identity")
            return AcyclicReport(False, (g, phi), n)
    return AcyclicReport(True, None, n)


def classify_equivalence(f: LinearIso, g: LinearIso, phi: LinearIso) -> str:
    """Which branch of the two-way dichotomy an equivalent pair falls in:
    "scalar" (g = cf), "multiplication" (g o phi is multiplication by some
    alpha, so B = alpha A), or "neither"."""
    if is_scalar_multiple(f, g):
        return "scalar"
    L = f.tower.L
    A = f.domain
    nz = [a for a in A.elements() if a]
    if nz:
        alpha = L.div(g(phi(nz[0])), nz[0])
        if all(g(phi(a)) == L.mul(alpha, a) for a in nz):
            return "multiplication"
    return "neither"


# -- the construction for composite degree --------------------------------------------

@dataclass
class Prop38Result:
    E: Subspace
    alpha: int
    beta: int
    f: LinearIso
    g: LinearIso
    phi: LinearIso

    def to_json(self):
        return {"E_dim": self.E.dim, "alpha": self.alpha, "beta": self.beta,
                "f": self.f.to_json(), "g": self.g.to_json(), "phi": self.phi.to_json(),
                "equivalent": True, "scalar_multiple": False}


def smallest_intermediate_field(t: FieldTower) -> Subspace:
    props = [d for d in proper_subfields(t) if d > 1]
    if not props:
        raise InputError(f"no intermediate field strictly between F and L (n = {t.n})")
    return subfield_lattice(t)[min(props)]


def _is_intermediate(t: FieldTower, E: Subspace) -> bool:
    return any(E == S for d, S in subfield_lattice(t).items() if 1 < d < t.n)


def prop38_counterexample(t: FieldTower, E: Optional[Subspace] = None,
                          alpha: Optional[int] = None, beta: Optional[int] = None,
                          f: Optional[LinearIso] = None) -> Prop38Result:
    """g(a) = beta^-1 f(a / beta) and phi(a) = beta a for A = E, B = alpha E.

    Defaults: E the smallest intermediate field, alpha the least element
    outside E, f multiplication by alpha, and beta the least element of
    E \\ F making g a non-scalar multiple of f.  g is always equivalent to
    f; it is a scalar multiple exactly when f(a / beta) = c beta f(a) for
    some c in F, which happens e.g. for f = alpha * (multiplication) when
    beta^2 lies in F.  If no beta avoids this, ClaimFailed is raised.
    """
    L = t.L
    E = smallest_intermediate_field(t) if E is None else E
    if not _is_intermediate(t, E):
        raise InputError("E must be an intermediate field strictly between F and L")
    if alpha is None:
        alpha = next(a for a in range(1, L.order) if not E.contains(a))
    if not alpha or E.contains(alpha):
        raise InputError("alpha must lie outside E")
    B = scale(E, alpha)
    if f is None:
        f = LinearIso.multiplication(E, B, alpha)
    if f.domain != E or f.codomain != B:
        raise InputError("f must map E onto alpha E")
    if beta is not None:
        if not E.contains(beta) or t.in_F(beta):
            raise InputError("beta must lie in E \\ F")
        betas = [beta]
    else:
        betas = [b for b in E.elements() if not t.in_F(b)]
    for b in betas:
        binv = L.inv(b)
        g = LinearIso.from_function(E, B, lambda a: L.mul(binv, f(L.mul(a, binv))), check=False)
        phi = LinearIso.multiplication(E, E, b)
        if not equivalence_check(f, g, phi):
            raise SoundnessError("constructed g is not equivalent to f")
        if not is_scalar_multiple(f, g):
            return Prop38Result(E, alpha, b, f, g, phi)
    raise ClaimFailed("every admissible beta gives a scalar multiple of f")


def has_linear_acyclic_property(t: FieldTower, method: str = "theorem",
                                cap: Optional[int] = None) -> bool:
    """Whether every pair A, B with A n AB = {0} admits an acyclic isomorphism.

    "theorem" answers by the intermediate-field criterion ([L:F] is 1 or
    prime).  "sweep" decides it by exhaustive search over all subspace
    pairs (tiny towers only); the two disagree for instance on F_16/F_2,
    see :func:`non_acyclic_certificate`.
    """
    if method == "theorem":
        return len(subfield_lattice(t)) <= 2
    if method == "sweep":
        return linear_acyclic_property_sweep(t, cap).holds
    raise InputError(f"unknown method {method!r}")


@dataclass
class PropertySweep:
    holds: bool
    pairs_checked: int
    counterexample: Optional[tuple] = None  # (A basis, B basis)

    def to_json(self):
        return {"holds": self.holds, "pairs_checked": self.pairs_checked,
                "counterexample": self.counterexample}


def has_acyclic_iso(A: Subspace, B: Subspace, cap: Optional[int] = None) -> Optional[LinearIso]:
    """Some acyclic isomorphism A -> B, or None (A n AB = {0} assumed)."""
    for images in ordered_bases(B, cap):
        f = LinearIso(A, B, images)
        if linear_acyclic_check(f, cap).acyclic:
            return f
    return None


def linear_acyclic_property_sweep(t: FieldTower, cap: Optional[int] = None) -> PropertySweep:
    """Every pair of equal-dimensional proper subspaces with A n AB = {0},
    searched for one admitting no acyclic isomorphism."""
    n = 0
    for d in range(1, t.n):
        subs = list(all_subspaces(t, d, cap))
        for A in subs:
            for B in subs:
                if not strong_matching_exists(A, B):
                    continue
                n += 1
                if has_acyclic_iso(A, B, cap) is None:
                    return PropertySweep(False, n, (A.basis_elements(), B.basis_elements()))
    return PropertySweep(True, n)


@dataclass
class NonAcyclicCertificate:
    E: Subspace
    alpha: int
    B: Subspace
    maps_checked: int
    refuted_degrees: list  # degrees of intermediate fields where some f was acyclic

    def to_json(self):
        return {"E_degree": self.E.dim, "E_basis": self.E.basis_elements(),
                "alpha": self.alpha, "B_basis": self.B.basis_elements(),
                "maps_checked": self.maps_checked, "refuted_degrees": self.refuted_degrees}


def non_acyclic_certificate(t: FieldTower, cap: Optional[int] = None) -> NonAcyclicCertificate:
    """A pair A = E, B = alpha E for which every isomorphism has an equivalent
    non-scalar map, so that no acyclic matching A -> B exists.

    Intermediate fields are tried by increasing degree (alpha = least
    element outside E); fields whose GL is over the cap are skipped.  When
    [E:F] = 2 the map a -> alpha * conj(a) is acyclic (a conj(a) lies in
    F), so such E never certify.  Raises ClaimFailed when every
    intermediate field admits an acyclic isomorphism, CapExceeded when
    some field was skipped and none certified.
    """
    L = t.L
    lattice = subfield_lattice(t)
    refuted, skipped = [], []
    for d in sorted(lattice):
        if not 1 < d < t.n:
            continue
        E = lattice[d]
        alpha = next(a for a in range(1, L.order) if not E.contains(a))
        B = scale(E, alpha)
        if not strong_matching_exists(E, B):
            raise SoundnessError("E n (E alpha E) is not {0}")
        try:
            f = has_acyclic_iso(E, B, cap)
        except CapExceeded as e:
            skipped.append((d, e.size, e.cap))
            continue
        if f is None:
            n = sum(1 for _ in ordered_bases(B, cap))
            return NonAcyclicCertificate(E, alpha, B, n, refuted)
        refuted.append(d)
    if skipped:
        d, size, c = skipped[0]
        raise CapExceeded(f"GL sweep for intermediate degrees {[s[0] for s in skipped]} "
                          f"(refuted: {refuted}), first at degree {d}", size, c)
    raise ClaimFailed(f"every intermediate field (degrees {refuted}) admits an acyclic isomorphism")
