"""The matrix 2I - P_alpha - P_beta for two non-identity permutations.

Every row of this matrix sums to zero, so the all-ones vector is in its
null space.  Over the rationals a null vector is constant on each orbit
of the group generated by alpha and beta (maximum principle on the
orbit), so the rank is k minus the number of orbits: k - 1 exactly when
that group is transitive.  A vector with distinct entries is annihilated
only when every orbit is a point, i.e. alpha = beta = id.

The coefficient of t in the characteristic polynomial is a sum of
principal minors; its absolute value is at most k * 2^(k-1).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import config
from ._numtheory import is_prime
from .errors import InputError


def _check_perm(sigma):
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(len(sigma))):
        raise InputError(f"{sigma} is not a permutation of 0..{len(sigma) - 1}")
    return sigma


def perm_matrix(sigma) -> np.ndarray:
    """P with P[i, sigma(i)] = 1."""
    sigma = _check_perm(sigma)
    k = len(sigma)
    P = np.zeros((k, k), dtype=np.int64)
    P[np.arange(k), sigma] = 1
    return P


def theorem_matrix(alpha, beta) -> np.ndarray:
    alpha, beta = _check_perm(alpha), _check_perm(beta)
    if len(alpha) != len(beta):
        raise InputError("permutations of different sizes")
    k = len(alpha)
    return 2 * np.eye(k, dtype=np.int64) - perm_matrix(alpha) - perm_matrix(beta)


def rank_mod_p(M, p: int) -> int:
    """Rank of an integer matrix reduced mod p, by Gaussian elimination."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    rows = [[int(v) % p for v in r] for r in np.asarray(M).tolist()]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [(v - f * w) % p for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def rank_rational(M) -> int:
    """Exact rank over Q."""
    rows = [[Fraction(int(v)) for v in r] for r in np.asarray(M).tolist()]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def bareiss_det(M) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [[int(v) for v in r] for r in M]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if a[r][c]), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, n):
            for j in range(c + 1, n):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


def t_coefficient(M) -> int:
    """Coefficient of t in det(tI - M): (-1)^(k-1) times the sum of the
    principal (k-1) x (k-1) minors."""
    a = np.asarray(M).tolist()
    k = len(a)
    if k == 0:
        raise InputError("empty matrix")
    total = 0
    for i in range(k):
        minor = [[a[r][c] for c in range(k) if c != i] for r in range(k) if r != i]
        total += bareiss_det(minor)
    return (-1) ** (k - 1) * total


def orbit_count(alpha, beta) -> int:
    """Number of orbits of the group generated by alpha and beta on 0..k-1."""
    alpha, beta = _check_perm(alpha), _check_perm(beta)
    k = len(alpha)
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(k):
        for j in (alpha[i], beta[i]):
            parent[find(i)] = find(j)
    return len({find(i) for i in range(k)})


@dataclass
class NullityReport:
    """Outcome of a pair sweep.

    ``holds`` is the claim rank = k - 1 with null space spanned by the
    all-ones vector.  That claim fails whenever alpha and beta generate an
    intransitive group (e.g. alpha = beta = a transposition fixing a
    point): the null space then contains every vector constant on orbits.
    ``orbit_rank_ok`` checks the corrected statement rank = k - #orbits.
    """

    k: int
    p: int
    exhaustive: bool
    pairs_checked: int
    min_rank: int
    max_rank: int
    max_abs_t_coeff: int
    ones_span_null_space: bool
    holds: bool
    intransitive_pairs: int = 0
    orbit_rank_ok: bool = True
    t_bound_ok: bool = True

    def to_json(self):
        return dict(self.__dict__)


def _non_identity(k):
    ident = tuple(range(k))
    return [s for s in itertools.permutations(range(k)) if s != ident]


def nullity_property_check(k: int, p: int, trials: int = 200,
                           exhaustive: Optional[bool] = None,
                           seed: int = 0) -> NullityReport:
    """Check rank(2I - P_alpha - P_beta) = k - 1 over F_p for non-identity alpha, beta.

    All pairs are visited when ``exhaustive`` (default: k below the
    configured switch point); otherwise ``trials`` random pairs are drawn.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if k < 2:
        raise InputError("need k >= 2 for a non-identity permutation")
    if k * 2 ** (k - 1) >= p:
        raise InputError(f"hypothesis k*2^(k-1) < p fails: {k * 2 ** (k - 1)} >= {p}")
    if exhaustive is None:
        exhaustive = k < config.CAPS.exhaustive_perm_switch
    perms = _non_identity(k)
    if exhaustive:
        pairs = itertools.product(perms, repeat=2)
    else:
        rng = random.Random(seed)
        pairs = ((rng.choice(perms), rng.choice(perms)) for _ in range(trials))
    ones = np.ones(k, dtype=np.int64)
    n = intransitive = 0
    lo, hi, tmax, ones_ok, orbit_ok = k, 0, 0, True, True
    for alpha, beta in pairs:
        M = theorem_matrix(alpha, beta)
        r = rank_mod_p(M, p)
        orbits = orbit_count(alpha, beta)
        intransitive += orbits > 1
        orbit_ok &= r == k - orbits
        lo, hi = min(lo, r), max(hi, r)
        tmax = max(tmax, abs(t_coefficient(M)))
        ones_ok &= bool(not (M @ ones % p).any()) and r == k - 1
        n += 1
    return NullityReport(k, p, exhaustive, n, lo, hi, tmax, ones_ok,
                         lo == hi == k - 1 and ones_ok, intransitive, orbit_ok,
                         tmax <= k * 2 ** (k - 1))
