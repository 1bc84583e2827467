"""Counting matchings A -> B through the bipartite graph G_{A,B}.

Row i of the biadjacency matrix is a_i, column j is b_j, and the entry is
1 exactly when a_i + b_j lies outside A.  Matchings A -> B are then the
permutations supported on the 1-entries, so their number is the
permanent of the matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import Iterator, Optional, Sequence

import numpy as np

from . import config
from ._numtheory import is_prime
from .abelian import GroupSpec, GSubset, add
from .errors import CapExceeded, InputError


@dataclass(frozen=True)
class Biadjacency:
    rows: tuple
    a_labels: tuple = ()
    b_labels: tuple = ()
    group: Optional[GroupSpec] = None

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        k = len(rows)
        if any(len(r) != k for r in rows):
            raise InputError("biadjacency matrix must be square")
        if any(v not in (0, 1) for r in rows for v in r):
            raise InputError("biadjacency entries must be 0 or 1")
        object.__setattr__(self, "rows", rows)
        if not self.a_labels:
            object.__setattr__(self, "a_labels", tuple((i,) for i in range(k)))
            object.__setattr__(self, "b_labels", tuple((j,) for j in range(k)))

    @property
    def k(self):
        return len(self.rows)

    def array(self):
        return np.array(self.rows, dtype=np.int64).reshape(self.k, self.k)

    def degrees(self) -> "DegreeProfile":
        return DegreeProfile(
            tuple(sum(r) for r in self.rows),
            tuple(sum(col) for col in zip(*self.rows)) if self.rows else (),
        )

    def to_json(self):
        return {"k": self.k, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj):
        rows = obj["rows"]
        if "k" in obj and obj["k"] != len(rows):
            raise InputError(f"declared k={obj['k']} but {len(rows)} rows given")
        return cls(rows)


@dataclass(frozen=True)
class DegreeProfile:
    row_sums: tuple  # #B_a for each a in A
    col_sums: tuple  # #A_b for each b in B


@dataclass(frozen=True)
class MatchingFn:
    """A bijection a_i -> b_perm[i] in the canonical label order."""

    perm: tuple

    def __post_init__(self):
        perm = tuple(int(j) for j in self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise InputError(f"{perm} is not a permutation")
        object.__setattr__(self, "perm", perm)

    @property
    def k(self):
        return len(self.perm)

    def inverse(self) -> "MatchingFn":
        inv = [0] * self.k
        for i, j in enumerate(self.perm):
            inv[j] = i
        return MatchingFn(tuple(inv))

    def as_pairs(self, A: GSubset, B: GSubset):
        return [(A[i], B[j]) for i, j in enumerate(self.perm)]

    def to_json(self):
        return list(self.perm)


class MatchingList(list):
    """List of matchings that remembers whether enumeration was cut short."""

    truncated = False


def _check_cap(k, cap, what):
    if k > cap:
        raise CapExceeded(what, k, cap)


def build_bigraph(A: GSubset, B: GSubset) -> Biadjacency:
    if A.group != B.group:
        raise InputError("A and B live in different groups")
    if len(A) != len(B):
        raise InputError(f"#A={len(A)} differs from #B={len(B)}")
    g = A.group
    rows = [[0 if add(g, a, b) in A else 1 for b in B] for a in A]
    return Biadjacency(rows, A.elems, B.elems, g)


def is_matching(M: Biadjacency, f: MatchingFn) -> bool:
    return f.k == M.k and all(M.rows[i][j] for i, j in enumerate(f.perm))


def find_perfect_matching(M: Biadjacency) -> Optional[MatchingFn]:
    """Augmenting-path (Kuhn) maximum matching; a witness when it is perfect."""
    k = M.k
    adj = [[j for j in range(k) if M.rows[i][j]] for i in range(k)]
    owner = [-1] * k  # column -> row

    def augment(i, seen):
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(k):
        if not augment(i, [False] * k):
            return None
    perm = [0] * k
    for j, i in enumerate(owner):
        perm[i] = j
    return MatchingFn(tuple(perm))


def has_perfect_matching(M: Biadjacency) -> bool:
    return find_perfect_matching(M) is not None


def iter_matchings(M: Biadjacency, cap: Optional[int] = None) -> Iterator[MatchingFn]:
    """All matchings in lexicographic order of the permutation."""
    k = M.k
    _check_cap(k, config.CAPS.enum if cap is None else cap, "matching enumeration")
    adj = [[j for j in range(k) if M.rows[i][j]] for i in range(k)]
    used = [False] * k
    perm = [0] * k

    def rec(i):
        if i == k:
            yield MatchingFn(tuple(perm))
            return
        for j in adj[i]:
            if not used[j]:
                used[j] = True
                perm[i] = j
                yield from rec(i + 1)
                used[j] = False

    yield from rec(0)


def enumerate_matchings(M: Biadjacency, limit: Optional[int] = None,
                        cap: Optional[int] = None) -> MatchingList:
    out = MatchingList()
    for f in iter_matchings(M, cap):
        if limit is not None and len(out) >= limit:
            out.truncated = True
            break
        out.append(f)
    return out


# -- permanents --------------------------------------------------------------

def _as_rows(M) -> list:
    if isinstance(M, Biadjacency):
        return [list(r) for r in M.rows]
    rows = [[int(v) for v in r] for r in M]
    if any(len(r) != len(rows) for r in rows):
        raise InputError("permanent needs a square matrix")
    return rows


def ryser_gray(rows: Sequence[Sequence[int]]) -> int:
    """Ryser's inclusion-exclusion over column subsets, visited in Gray-code order.

    Consecutive subsets differ by one column, so the row sums are updated
    in O(k) per subset.
    """
    k = len(rows)
    if k == 0:
        return 1
    cols = [[rows[i][j] for i in range(k)] for j in range(k)]
    sums = [0] * k
    state = 0
    total = 0
    odd = False
    for t in range(1, 1 << k):
        j = (t & -t).bit_length() - 1
        state ^= 1 << j
        col = cols[j]
        if state >> j & 1:
            for i in range(k):
                sums[i] += col[i]
        else:
            for i in range(k):
                sums[i] -= col[i]
        odd = not odd
        p = 1
        for s in sums:
            if not s:
                p = 0
                break
            p *= s
        if p:
            total += -p if odd else p
    return -total if k % 2 else total


_CRT_PRIMES = []


def _crt_primes():
    """Primes just below 2**31, largest first, generated on demand."""
    yield from _CRT_PRIMES
    cand = _CRT_PRIMES[-1] - 2 if _CRT_PRIMES else (1 << 31) - 1
    while True:
        if is_prime(cand):
            _CRT_PRIMES.append(cand)
            yield cand
        cand -= 2


def ryser_modular(rows: Sequence[Sequence[int]], low_bits: int = 12) -> int:
    """Ryser's formula vectorized over column subsets, evaluated modulo several
    primes below 2**31 and recombined by CRT.

    Exact for matrices with entries in [0, 64): the permanent is bounded by the
    product of row sums and enough primes are used to exceed that bound.
    """
    k = len(rows)
    if k == 0:
        return 1
    A = np.asarray(rows, dtype=np.int64).reshape(k, k)
    if A.min() < 0 or A.max() >= 64:
        raise InputError("modular Ryser path needs entries in [0, 64)")
    bound = prod(int(s) for s in A.sum(axis=1))
    if bound == 0:
        return 0
    modulus, primes = 1, []
    for P in _crt_primes():
        if modulus > bound:
            break
        primes.append(P)
        modulus *= P

    L = min(k, low_bits)
    H = k - L
    low = np.zeros((1 << L, k), dtype=np.int64)
    for b in range(L):
        low[1 << b: 2 << b] = low[: 1 << b] + A[:, b]
    low_par = np.zeros(1 << L, dtype=np.int64)
    for b in range(L):
        low_par[1 << b: 2 << b] = low_par[: 1 << b] ^ 1
    low_t = np.ascontiguousarray(low.T)  # row i -> sums over low subsets

    acc = [0] * len(primes)
    high = np.zeros(k, dtype=np.int64)
    hstate = 0
    for h in range(1 << H):
        if h:
            j = (h & -h).bit_length() - 1
            hstate ^= 1 << j
            if hstate >> j & 1:
                high += A[:, L + j]
            else:
                high -= A[:, L + j]
        hodd = bin(hstate).count("1") & 1
        sign = np.where(low_par ^ hodd, -1, 1)
        for n, P in enumerate(primes):
            p = np.ones(1 << L, dtype=np.int64)
            for i in range(k):
                p = p * (low_t[i] + high[i]) % P
            acc[n] = (acc[n] + int((sign * p % P).sum())) % P

    value, mod = 0, 1
    for r, P in zip(acc, primes):
        r = -r % P if k % 2 else r % P
        # incremental CRT: value == r (mod P)
        t = (r - value) * pow(mod, -1, P) % P
        value += mod * t
        mod *= P
    return value


def permanent(M, cap: Optional[int] = None) -> int:
    """Exact permanent of a square nonnegative integer matrix (usually 0/1)."""
    rows = _as_rows(M)
    k = len(rows)
    _check_cap(k, config.CAPS.perm if cap is None else cap, "permanent")
    if not all(any(r) for r in rows):
        return 0
    if k >= 15 and all(0 <= v < 64 for r in rows for v in r):
        return ryser_modular(rows)
    return ryser_gray(rows)


# -- bounds ------------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    bregman_minc_upper: float
    ostrand_lower: int
    row_or_col_choice: str  # which side gives the upper bound; "row" on ties
    lower_choice: str

    def to_json(self):
        return {
            "bregman_minc_upper": self.bregman_minc_upper,
            "ostrand_lower": str(self.ostrand_lower),
            "row_or_col_choice": self.row_or_col_choice,
            "lower_choice": self.lower_choice,
        }


def bregman_minc(degrees) -> float:
    """prod (r!)^(1/r); an empty row (r = 0) makes the product 0."""
    out = 1.0
    for r in degrees:
        if r == 0:
            return 0.0
        out *= factorial(r) ** (1.0 / r)
    return out


def ostrand(degrees) -> int:
    out = 1
    for i, r in enumerate(sorted(degrees), start=1):
        out *= max(r - i + 1, 0)
    return out


def bounds(M: Biadjacency) -> Bounds:
    deg = M.degrees()
    up_row, up_col = bregman_minc(deg.row_sums), bregman_minc(deg.col_sums)
    lo_row, lo_col = ostrand(deg.row_sums), ostrand(deg.col_sums)
    return Bounds(
        min(up_row, up_col),
        max(lo_row, lo_col),
        "row" if up_row <= up_col else "col",
        "row" if lo_row >= lo_col else "col",
    )


def vdw_lower(k: int, r: int) -> float:
    """r^k k!/k^k, the van der Waerden lower bound for an r-regular k x k 0/1 matrix."""
    if not 1 <= r <= k:
        raise InputError(f"need 1 <= r <= k, got r={r}, k={k}")
    return float(Fraction(r**k * factorial(k), k**k))


# -- multiplicity-constrained counting ----------------------------------------

def _sum_table(M: Biadjacency):
    if M.group is None:
        raise InputError("multiplicities need a biadjacency built from group subsets")
    g = M.group
    return [[add(g, a, b) for b in M.b_labels] for a in M.a_labels]


def iter_with_multiplicity(M: Biadjacency, target: dict,
                           cap: Optional[int] = None) -> Iterator[MatchingFn]:
    """Matchings f (lexicographic order) with a + f(a) realizing ``target`` exactly.

    ``target`` maps group elements to counts; the search prunes any branch
    that would overshoot a count.
    """
    k = M.k
    _check_cap(k, config.CAPS.enum if cap is None else cap, "matching enumeration")
    sums = _sum_table(M)
    left = {x: c for x, c in target.items() if c > 0}
    if sum(left.values()) != k:
        return
    used = [False] * k
    perm = [0] * k

    def rec(i):
        if i == k:
            yield MatchingFn(tuple(perm))
            return
        for j in range(k):
            if used[j] or not M.rows[i][j]:
                continue
            s = sums[i][j]
            if left.get(s, 0) <= 0:
                continue
            left[s] -= 1
            used[j] = True
            perm[i] = j
            yield from rec(i + 1)
            used[j] = False
            left[s] += 1

    yield from rec(0)


def count_with_multiplicity(A: GSubset, B: GSubset, m, cap: Optional[int] = None) -> int:
    """Number of matchings f: A -> B whose multiplicity function equals ``m``."""
    counts = dict(m.items())
    if sum(counts.values()) != len(A):
        raise InputError(f"multiplicity mass {sum(counts.values())} differs from #A={len(A)}")
    M = build_bigraph(A, B)
    return sum(1 for _ in iter_with_multiplicity(M, counts, cap))
