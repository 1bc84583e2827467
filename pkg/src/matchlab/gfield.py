"""Finite field towers F_p < F = F_{p^m} < L = F_{p^{mn}} and F-subspaces of L.

L is F_p[x]/(f) for the least monic irreducible f of degree mn, where
polynomials are ordered by their coefficient list read from the top
(equivalently by the integer sum c_i p^i).  An element of L is stored as
that integer.  F is never built separately: it is the set of elements
fixed by x -> x^q (q = p^m), so F-arithmetic is L-arithmetic.  F-linear
algebra is done in coordinates with respect to the F-basis 1, x, ...,
x^(n-1) of L.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import config
from ._numtheory import divisors, factorize, is_prime, prime_factors
from .errors import CapExceeded, InputError, SoundnessError


# -- polynomials over F_p (coefficient lists, low degree first) ----------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, f, p):
    a = list(a)
    n = len(f) - 1
    inv = pow(f[-1], -1, p)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] * inv % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * f[j]) % p
    return _trim(a[:n])


def _polymulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _polymod(out, f, p)


def _polypowmod(a, e, f, p):
    result, base = [1], _polymod(a, f, p)
    while e:
        if e & 1:
            result = _polymulmod(result, base, f, p)
        base = _polymulmod(base, base, f, p)
        e >>= 1
    return result


def _polygcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _polymod(a, b, p)
    return a


def is_irreducible(f, p) -> bool:
    """Ben-Or: f of degree N is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= N/2."""
    N = len(f) - 1
    if N < 1:
        return False
    if N == 1:
        return True
    h = [0, 1]
    for _ in range(N // 2):
        h = _polypowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        if len(_polygcd(f, _trim(diff), p)) > 1:
            return False
    return True


def least_irreducible(p, N):
    """Least monic irreducible of degree N, ordered by sum c_i p^i over the
    non-leading coefficients."""
    for c in range(p**N):
        coeffs = [(c // p**i) % p for i in range(N)] + [1]
        if N > 1 and coeffs[0] == 0:
            continue
        if is_irreducible(coeffs, p):
            return coeffs
    raise SoundnessError(f"no irreducible polynomial of degree {N} over F_{p}")


# -- the field L = F_{p^N} ------------------------------------------------------

class GF:
    """F_{p^N} with elements encoded as integers sum c_i p^i."""

    def __init__(self, p: int, N: int):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if N < 1:
            raise InputError("degree must be positive")
        self.p, self.N, self.order = p, N, p**N
        self.poly = least_irreducible(p, N)
        self._pw = [p**i for i in range(N)]
        self._build_tables()

    def digits(self, a):
        p = self.p
        out = []
        for _ in range(self.N):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def from_digits(self, ds):
        return sum(int(d) % self.p * w for d, w in zip(ds, self._pw))

    def _mul_matrix(self, h):
        """Rows are the digit vectors of h * x^i, so v @ M = digits(a * h)."""
        p, f, N = self.p, self.poly, self.N
        rows = []
        cur = self.digits(h)
        for _ in range(N):
            rows.append(list(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                cur = [(c - lead * fc) % p for c, fc in zip(cur, f)]
        return np.array(rows, dtype=np.int64)

    def _poly_pow(self, a, e):
        return self.from_digits(_polypowmod(self.digits(a), e, self.poly, self.p))

    def _build_tables(self):
        Q, p = self.order, self.p
        n1 = Q - 1
        rs = prime_factors(n1) if n1 > 1 else []
        g = next(c for c in range(1, Q)
                 if all(self._poly_pow(c, n1 // r) != 1 for r in rs))
        self.generator = g
        block = min(n1, 1024)
        Mg = self._mul_matrix(g)
        first = np.zeros((block, self.N), dtype=np.int64)
        cur = np.array(self.digits(1), dtype=np.int64)
        for i in range(block):
            first[i] = cur
            cur = cur @ Mg % p
        chunks = [first]
        step = self._mul_matrix(self._poly_pow(g, block))
        done = block
        while done < n1:
            nxt = chunks[-1] @ step % p
            chunks.append(nxt)
            done += block
        digs = np.concatenate(chunks)[:n1]
        exp = (digs @ np.array(self._pw, dtype=np.int64)).tolist()
        log = [0] * Q
        for i, a in enumerate(exp):
            log[a] = i
        if len(set(exp)) != n1:
            raise SoundnessError("generator search produced a non-generator")
        self.exp, self.log = exp, log

    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        p, out, w = self.p, 0, 1
        while a or b:
            a, x = divmod(a, p)
            b, y = divmod(b, p)
            out += (x + y) % p * w
            w *= p
        return out

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        p, out, w = self.p, 0, 1
        while a:
            a, x = divmod(a, p)
            out += -x % p * w
            w *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % (self.order - 1)]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0")
        return self.exp[-self.log[a] % (self.order - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if not a:
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0 if e else 1
        return self.exp[self.log[a] * e % (self.order - 1)]

    def frob(self, a, e=1):
        """a^(p^e)."""
        return self.pow(a, self.p**e)

    def elements(self):
        return range(self.order)


@functools.lru_cache(maxsize=None)
def _gf(p, N):
    return GF(p, N)


# -- towers ------------------------------------------------------------------------

class FieldTower:
    """F_p < F = F_{p^m} < L = F_{p^{mn}}, with [L : F] = n."""

    def __init__(self, p: int, m: int, n: int):
        if not is_prime(p):
            raise InputError(f"{p} is not prime")
        if m < 1 or n < 1:
            raise InputError("m and n must be positive")
        if p ** (m * n) > config.CAPS.field:
            raise CapExceeded("field tower", p ** (m * n), config.CAPS.field)
        self.p, self.m, self.n = p, m, n
        self.q = p**m
        self.L = _gf(p, m * n)
        L = self.L
        step = (L.order - 1) // (self.q - 1)
        self.F = [0] + sorted(L.exp[i] for i in range(0, L.order - 1, step))
        self._F_set = frozenset(self.F)
        self.x = L.from_digits([0, 1]) if m * n > 1 else 0
        self.basis = [1] + [L.pow(self.x, i) for i in range(1, n)]
        self._setup_coords()

    def __repr__(self):
        return f"FieldTower(p={self.p}, m={self.m}, n={self.n})"

    def __eq__(self, other):
        return isinstance(other, FieldTower) and (self.p, self.m, self.n) == (other.p, other.m, other.n)

    def __hash__(self):
        return hash((self.p, self.m, self.n))

    @property
    def defining_poly(self):
        return list(self.L.poly)

    def to_json(self):
        return {"p": self.p, "m": self.m, "n": self.n, "defining_poly": self.defining_poly}

    def in_F(self, a):
        return a in self._F_set

    # coordinates over F
    def _setup_coords(self):
        L, p, m, n = self.L, self.p, self.m, self.n
        if m == 1:
            self._inv = None
            return
        fb = []  # an F_p-basis of F
        for a in self.F:
            if _rank_mod_p([L.digits(b) for b in fb + [a]], p) == len(fb) + 1:
                fb.append(a)
            if len(fb) == m:
                break
        self._Fbasis = fb
        cols = [L.digits(L.mul(f, xi)) for xi in self.basis for f in fb]
        self._inv = _inverse_mod_p([list(r) for r in zip(*cols)], p)

    @functools.lru_cache(maxsize=None)
    def coords(self, y) -> tuple:
        """Coordinates of y in the F-basis 1, x, ..., x^(n-1)."""
        L = self.L
        if self._inv is None:
            return tuple(L.digits(y))
        d = L.digits(y)
        c = [sum(r * v for r, v in zip(row, d)) % self.p for row in self._inv]
        m = self.m
        out = []
        for i in range(self.n):
            acc = 0
            for j, f in enumerate(self._Fbasis):
                acc = L.add(acc, L.mul(c[i * m + j], f))
            out.append(acc)
        return tuple(out)

    def from_coords(self, c) -> int:
        L = self.L
        acc = 0
        for ci, xi in zip(c, self.basis):
            acc = L.add(acc, L.mul(ci, xi))
        return acc

    # Frobenius over F
    def sigma(self, a, j=1):
        """a -> a^(q^j), a generator of Gal(L/F) applied j times."""
        return self.L.pow(a, self.q**j) if a else 0

    def minimal_poly_degree(self, a) -> int:
        b, d = self.sigma(a), 1
        while b != a:
            b, d = self.sigma(b), d + 1
        return d

    def is_primitive_element(self, a) -> bool:
        return self.minimal_poly_degree(a) == self.n

    # exact linear algebra over F on coordinate rows
    def rref(self, rows):
        L = self.L
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        pivots, r = [], 0
        for c in range(ncols):
            pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = L.inv(rows[r][c])
            rows[r] = [L.mul(v, inv) for v in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [L.sub(v, L.mul(f, w)) for v, w in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return [tuple(row) for row in rows[:r]], pivots

    def rank(self, rows):
        return len(self.rref(rows)[0])

    def left_kernel(self, rows):
        """Basis of {c : sum c_i rows_i = 0}."""
        k = len(rows)
        if not k:
            return []
        width = len(rows[0])
        aug = [list(r) + [1 if i == j else 0 for j in range(k)] for i, r in enumerate(rows)]
        red, _ = self.rref(aug)
        # rows whose left block vanished are kernel vectors; rref puts them last
        out = [row[width:] for row in red if not any(row[:width])]
        return out


def _rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pr = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if pr is None:
            continue
        rows[rank], rows[pr] = rows[pr], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(v - f * w) % p for v, w in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _inverse_mod_p(M, p):
    n = len(M)
    aug = [[v % p for v in row] + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        pr = next((i for i in range(c, n) if aug[i][c]), None)
        if pr is None:
            raise SoundnessError("singular coordinate matrix")
        aug[c], aug[pr] = aug[pr], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [v * inv % p for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(v - f * w) % p for v, w in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def make_tower(p: int, m: int, n: int) -> FieldTower:
    # the cap is checked on every call, not only when the tower is first built
    if p ** (m * n) > config.CAPS.field:
        raise CapExceeded("field tower", p ** (m * n), config.CAPS.field)
    return _tower(p, m, n)


@functools.lru_cache(maxsize=None)
def _tower(p, m, n):
    return FieldTower(p, m, n)


# -- subspaces -----------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """An F-subspace of L, stored as reduced row echelon coordinate rows."""

    tower: FieldTower
    basis: tuple
    pivots: tuple = field(default=(), compare=False)

    def __post_init__(self):
        red, piv = self.tower.rref(self.basis) if self.basis else ([], [])
        object.__setattr__(self, "basis", tuple(red))
        object.__setattr__(self, "pivots", tuple(piv))

    @property
    def dim(self):
        return len(self.basis)

    def basis_elements(self):
        return [self.tower.from_coords(b) for b in self.basis]

    def coefficients(self, y):
        """Coefficients of y in the echelon basis (y must lie in the subspace)."""
        c = self.tower.coords(y)
        coeffs = tuple(c[j] for j in self.pivots)
        if self._combine(coeffs) != tuple(c):
            raise InputError(f"{y} is not in the subspace")
        return coeffs

    def _combine(self, coeffs):
        L = self.tower.L
        out = [0] * self.tower.n
        for a, row in zip(coeffs, self.basis):
            if a:
                out = [L.add(o, L.mul(a, v)) for o, v in zip(out, row)]
        return tuple(out)

    def contains(self, y) -> bool:
        c = self.tower.coords(y) if isinstance(y, int) else tuple(y)
        L = self.tower.L
        rem = list(c)
        for j, row in zip(self.pivots, self.basis):
            a = rem[j]
            if a:
                rem = [L.sub(v, L.mul(a, w)) for v, w in zip(rem, row)]
        return not any(rem)

    __contains__ = contains

    def size(self):
        return self.tower.q ** self.dim

    def elements(self, cap: Optional[int] = None):
        """All elements of the subspace (coefficient tuples in lexicographic order)."""
        cap = config.CAPS.subspace_enum if cap is None else cap
        if self.size() > cap:
            raise CapExceeded("subspace enumeration", self.size(), cap)
        t = self.tower
        return (t.from_coords(self._combine(c)) for c in itertools.product(t.F, repeat=self.dim))

    def to_json(self):
        return [list(b) for b in self.basis]


def span(t: FieldTower, elements: Iterable[int]) -> Subspace:
    return Subspace(t, tuple(t.coords(a) for a in elements))


def zero_subspace(t: FieldTower) -> Subspace:
    return Subspace(t, ())


def whole_space(t: FieldTower) -> Subspace:
    return span(t, t.basis)


def dim(U: Subspace) -> int:
    return U.dim


def contains(U: Subspace, x) -> bool:
    return U.contains(x)


def _same_tower(U, V):
    if U.tower != V.tower:
        raise InputError("subspaces belong to different towers")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _same_tower(U, V)
    return Subspace(U.tower, U.basis + V.basis)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """Zassenhaus: echelonize [u | u] over [v | 0]; rows with zero left half span U n V."""
    _same_tower(U, V)
    t = U.tower
    n = t.n
    if not U.dim or not V.dim:
        return zero_subspace(t)
    rows = [tuple(u) + tuple(u) for u in U.basis] + [tuple(v) + (0,) * n for v in V.basis]
    red, _ = t.rref(rows)
    return Subspace(t, tuple(r[n:] for r in red if not any(r[:n])))


def scale(U: Subspace, a: int) -> Subspace:
    """The subspace a * U."""
    t = U.tower
    return span(t, [t.L.mul(a, b) for b in U.basis_elements()])


# -- subfields -------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def subfield_lattice(t: FieldTower) -> dict:
    """d -> the intermediate field of degree d over F, for each d | n.

    Each is the kernel of the F-linear map y -> y^(q^d) - y.
    """
    L = t.L
    out = {}
    for d in divisors(t.n):
        rows = [t.coords(L.sub(t.sigma(b, d), b)) for b in t.basis]
        out[d] = Subspace(t, tuple(t.left_kernel(rows)))
        if out[d].dim != d:
            raise SoundnessError(f"subfield of degree {d} came out with dimension {out[d].dim}")
    return out


def proper_subfields(t: FieldTower) -> dict:
    return {d: E for d, E in subfield_lattice(t).items() if d < t.n}


def maximal_subfields(t: FieldTower) -> dict:
    return {t.n // r: subfield_lattice(t)[t.n // r] for r in prime_factors(t.n)}


def is_primitive_subspace(t: FieldTower, W: Subspace, method: str = "auto",
                          cap: Optional[int] = None) -> bool:
    """True iff W meets every proper intermediate field only in 0.

    ``method`` is "lattice" (echelon intersections), "elements" (minimal
    polynomial degree of every nonzero element) or "auto" (lattice, plus
    the element route as a cross-check when W is small enough).
    """
    if W.tower != t:
        raise InputError("subspace belongs to another tower")
    cap = config.CAPS.subspace_enum if cap is None else cap

    def by_lattice():
        return all(intersect(W, E).dim == 0 for E in proper_subfields(t).values())

    def by_elements():
        return all(t.minimal_poly_degree(a) == t.n for a in W.elements(cap) if a)

    if method == "lattice":
        return by_lattice()
    if method == "elements":
        return by_elements()
    if method != "auto":
        raise InputError(f"unknown method {method!r}")
    res = by_lattice()
    if W.size() <= cap and by_elements() != res:
        raise SoundnessError("lattice and elementwise primitivity checks disagree")
    return res


def normal_basis_element(t: FieldTower) -> int:
    """Least theta whose conjugates theta^(q^j), j < n, are F-independent."""
    for theta in range(1, t.L.order):
        orbit = [t.coords(t.sigma(theta, j)) for j in range(t.n)]
        if t.rank(orbit) == t.n:
            return theta
    raise SoundnessError("no normal basis element found")


# -- the index set T -----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitIndexSet:
    """T and its complement inside Z/p_1 x ... x Z/p_s (n' = p_1...p_s squarefree).

    T^c = {(f_2(j_2) + ... + f_s(j_s), j_2, ..., j_s)} with f_i(j) = j mod p_1
    meets every axis-parallel line, so T contains none.
    """

    primes: tuple
    T: tuple
    Tc: tuple

    @property
    def n(self):
        out = 1
        for p in self.primes:
            out *= p
        return out

    def lines(self):
        """All axis-parallel lines {j_1} x ... x Z/p_i x ... x {j_s}."""
        ps = self.primes
        for i, pi in enumerate(ps):
            others = [range(p) for k, p in enumerate(ps) if k != i]
            for fixed in itertools.product(*others):
                pts = []
                for v in range(pi):
                    pt = list(fixed)
                    pt.insert(i, v)
                    pts.append(tuple(pt))
                yield i, pts

    def to_index(self, point) -> int:
        """CRT: the j in Z/n' with j = point_i mod p_i."""
        n = self.n
        j = 0
        for r, p in zip(point, self.primes):
            M = n // p
            j += r * M * pow(M, -1, p)
        return j % n

    def T_indices(self):
        return sorted(self.to_index(pt) for pt in self.T)

    def to_json(self):
        return {"primes": list(self.primes), "T": [list(x) for x in self.T],
                "Tc": [list(x) for x in self.Tc], "T_indices": self.T_indices()}


def build_T_complement(n: int) -> OrbitIndexSet:
    """The T-construction for the squarefree radical of n."""
    if n < 2:
        raise InputError("n must be at least 2")
    ps = tuple(prime_factors(n))
    p1 = ps[0]
    Tc = set()
    for rest in itertools.product(*(range(p) for p in ps[1:])):
        Tc.add((sum(j % p1 for j in rest) % p1,) + tuple(rest))
    allpts = itertools.product(*(range(p) for p in ps))
    T = tuple(sorted(pt for pt in allpts if pt not in Tc))
    out = OrbitIndexSet(ps, T, tuple(sorted(Tc)))
    nrad = out.n
    if len(T) != nrad - nrad // p1:
        raise SoundnessError("T has the wrong size")
    for _, pts in out.lines():
        if not any(pt in Tc for pt in pts):
            raise SoundnessError(f"line {pts} misses T^c")
    return out


# -- maximal primitive subspaces ------------------------------------------------------

def complement_subspace(V: Subspace, family, cap: Optional[int] = None) -> Subspace:
    """W inside V of dimension dim V - max dim V_i meeting every V_i trivially.

    Greedy: x_j is the first element of V (lexicographic coefficient order)
    outside every V_i + <x_1, ..., x_(j-1)>.  Needs #family <= #F.
    """
    t = V.tower
    family = list(family)
    if len(family) > t.q:
        raise InputError(f"{len(family)} subspaces exceed #F = {t.q}; V may be covered")
    for Vi in family:
        _same_tower(V, Vi)
        if any(not V.contains(b) for b in Vi.basis):
            raise InputError("family members must lie in V")
    target = V.dim - max((Vi.dim for Vi in family), default=0)
    elems = sorted(V.elements(cap), key=t.coords)
    chosen = []
    for _ in range(target):
        blocks = [Subspace(t, Vi.basis + tuple(t.coords(x) for x in chosen)) for Vi in family]
        x = next((y for y in elems if y and not any(B.contains(y) for B in blocks)), None)
        if x is None:
            raise SoundnessError("greedy complement ran out of candidates")
        chosen.append(x)
    W = span(t, chosen)
    if any(intersect(W, Vi).dim for Vi in family):
        raise SoundnessError("greedy complement meets a family member")
    return W


@dataclass
class PrimitiveReport:
    dim: int
    witness: Subspace
    route: str
    reduced_base_degree: int  # r with base F_{q^r} after radical reduction
    dim_over_reduced_base: int
    T: Optional[OrbitIndexSet] = None
    certificate: Optional[list] = None  # (element, minimal polynomial degree)

    def to_json(self):
        return {
            "dim": self.dim,
            "witness_basis": self.witness.to_json(),
            "witness_elements": self.witness.basis_elements(),
            "route": self.route,
            "reduced_base_degree": self.reduced_base_degree,
            "dim_over_reduced_base": self.dim_over_reduced_base,
            "T": None if self.T is None else self.T.to_json(),
            "certificate": self.certificate,
        }


def max_primitive_dimension(n: int) -> int:
    """n minus the largest proper divisor of n."""
    if n < 2:
        raise InputError("need n >= 2")
    return n - n // prime_factors(n)[0]


def max_primitive_subspace(t: FieldTower, method: str = "normal",
                           cap: Optional[int] = None) -> PrimitiveReport:
    """A primitive F-subspace of L of the largest possible dimension.

    "normal": pass to the base F_{q^r} (r = n / radical(n)), take a normal
    basis theta of L over it and span the conjugates indexed by T.
    "greedy": complement of the maximal subfields (needs their number <= #F).
    """
    n = t.n
    target = max_primitive_dimension(n)
    cap = config.CAPS.subspace_enum if cap is None else cap
    rad = 1
    for r in prime_factors(n):
        rad *= r
    r = n // rad
    T = None
    if method == "normal":
        red = make_tower(t.p, t.m * r, rad) if r > 1 else t
        theta = normal_basis_element(red)
        T = build_T_complement(rad)
        gens = [red.sigma(theta, j) for j in T.T_indices()]
        base = subfield_lattice(t)[r].basis_elements()
        W = span(t, [t.L.mul(e, g) for e in base for g in gens])
    elif method == "greedy":
        W = complement_subspace(whole_space(t), maximal_subfields(t).values(), cap)
    else:
        raise InputError(f"unknown method {method!r}")
    if W.dim != target or not is_primitive_subspace(t, W, cap=cap):
        raise SoundnessError(f"{method} construction failed for {t}")
    cert = None
    if W.size() <= cap:
        cert = [(a, t.minimal_poly_degree(a)) for a in W.elements(cap) if a]
    return PrimitiveReport(W.dim, W, method, r, W.dim // r, T, cert)


def all_subspaces(t: FieldTower, d: int, cap: Optional[int] = None):
    """Every d-dimensional F-subspace of L, one echelon matrix each."""
    cap = config.CAPS.subspace_enum if cap is None else cap
    n, F = t.n, t.F
    if not 0 <= d <= n:
        raise InputError(f"dimension {d} out of range 0..{n}")
    for piv in itertools.combinations(range(n), d):
        free = [(i, j) for i in range(d) for j in range(n) if j > piv[i] and j not in piv]
        if t.q ** len(free) > cap:
            raise CapExceeded("subspace enumeration", t.q ** len(free), cap)
        for vals in itertools.product(F, repeat=len(free)):
            rows = [[0] * n for _ in range(d)]
            for i, c in enumerate(piv):
                rows[i][c] = 1
            for (i, j), v in zip(free, vals):
                rows[i][j] = v
            yield Subspace(t, tuple(tuple(r) for r in rows))
