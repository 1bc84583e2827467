"""Rectification of small subsets of Z/p and the greedy acyclic matching.

A subset X of Z/p is rectified by a dilation lambda that moves every
element into the open interval (-p/4, p/4) around 0.  Sums of two such
representatives stay inside (-p/2, p/2), so a relation x + y = z + w mod p
holds over the integers too: phi(x) = centered(lambda * x) is a Freiman
2-isomorphism onto its image.  The result is re-verified pair by pair at
construction, so correctness never rests on the search heuristic.

With phi in hand, elements of B split by the sign of phi, and A is matched
greedily in phi-order to positive and negative targets separately.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import config
from .abelian import GSubset, add, sumset
from .acyclic import is_acyclic
from .errors import InputError, SoundnessError
from .matchcount import MatchingFn, build_bigraph, is_matching

log = logging.getLogger(__name__)


def centered_rep(x: int, p: int) -> int:
    """The integer congruent to x mod p in (-p/2, p/2]."""
    r = x % p
    return r - p if r > p // 2 else r


@dataclass(frozen=True)
class FreimanEmbedding:
    domain: GSubset
    dilation: int
    values: dict  # residue -> integer

    def __call__(self, x):
        if isinstance(x, tuple):
            x = x[0]
        return self.values[x % self.domain.group.order]

    def covers(self, S) -> bool:
        return all(x[0] in self.values for x in S)

    def to_json(self):
        return {"lambda": self.dilation,
                "phi": {str(x): v for x, v in sorted(self.values.items())}}


def _check_zp(X: GSubset):
    if not X.group.is_cyclic_prime:
        raise InputError("rectification works in Z/p with p prime")


def verify_freiman(values: dict, p: int) -> bool:
    """Injective, and x + y = z + w (mod p) forces phi(x) + phi(y) = phi(z) + phi(w).

    Grouping unordered pairs by their residue sum covers every quadruple.
    """
    if len(set(values.values())) != len(values):
        return False
    xs = sorted(values)
    by_sum = {}
    for i, x in enumerate(xs):
        for y in xs[i:]:
            s = values[x] + values[y]
            if by_sum.setdefault((x + y) % p, s) != s:
                return False
    return True


def find_embedding(X: GSubset) -> Optional[FreimanEmbedding]:
    """Smallest dilation putting X inside (-p/4, p/4), or None."""
    _check_zp(X)
    p = X.group.order
    xs = np.array(X.as_ints(), dtype=np.int64)
    if p <= 2 or not len(xs):
        lam = 1
    else:
        lams = np.arange(1, p, dtype=np.int64)
        worst = np.zeros(p - 1, dtype=np.int64)
        for x in xs:
            r = lams * x % p
            r = np.where(r > p // 2, p - r, r)  # |centered representative|
            np.maximum(worst, r, out=worst)
        ok = np.nonzero(4 * worst < p)[0]
        if not len(ok):
            return None
        lam = int(ok[0]) + 1
    base = centered_rep(0, p)
    values = {int(x): centered_rep(lam * int(x), p) - base for x in xs}
    if not verify_freiman(values, p):
        raise SoundnessError(f"dilation {lam} does not rectify {X.to_json()}")
    return FreimanEmbedding(X, lam, values)


def _greedy(order, targets, phi, A_rest, G):
    """Match ``order`` to ``targets``: each a takes the unused b with
    a + b outside the not-yet-processed part of A, smallest phi(b) first."""
    f = {}
    remaining = set(A_rest)
    free = sorted(targets, key=phi)
    for a in order:
        for b in free:
            if add(G, a, b) not in remaining:
                f[a] = b
                free.remove(b)
                break
        else:
            raise SoundnessError(f"no admissible target for {a}")
        remaining.discard(a)
    return f


def greedy_acyclic(A: GSubset, B: GSubset, phi: FreimanEmbedding,
                   verify: bool = True, cap=None) -> MatchingFn:
    """The greedy matching ordered by phi.

    Positive targets (phi(b) > 0) go to the largest elements of A, taken in
    increasing phi order and given the smallest admissible phi(b); the
    negative side is the mirror image.  With ``verify`` the result is
    checked to be acyclic by exhaustive search whenever k is within the
    enumeration cap.
    """
    _check_zp(A)
    if len(A) != len(B):
        raise InputError(f"#A={len(A)} differs from #B={len(B)}")
    G = A.group
    if G.zero in B:
        raise InputError("B must not contain 0")
    needed = list(sumset(A, B)) + list(A) + list(B) + [G.zero]
    if not phi.covers(needed):
        raise InputError("embedding domain must contain (A+B), A, B and 0")
    if phi(G.zero) != 0:
        raise InputError("embedding must send 0 to 0")

    order = sorted(A, key=phi)
    neg = [b for b in B if phi(b) < 0]
    pos = [b for b in B if phi(b) > 0]
    l = len(neg)
    A_neg, A_pos = order[:l], order[l:]
    f = _greedy(A_pos, pos, phi, A_pos, G)
    f.update(_greedy(A_neg[::-1], neg, lambda b: -phi(b), A_neg, G))

    for a, b in f.items():
        if phi(add(G, a, b)) != phi(a) + phi(b):
            raise SoundnessError(f"embedding not additive on {a} + {b}")
    perm = MatchingFn(tuple(B.index(f[a]) for a in A))
    if not is_matching(build_bigraph(A, B), perm):
        raise SoundnessError(f"greedy output {perm.perm} is not a matching")
    cap = config.CAPS.enum if cap is None else cap
    if verify and len(A) <= cap:
        res = is_acyclic(A, B, perm, cap)
        if not res.acyclic:
            raise SoundnessError(
                f"greedy matching {perm.perm} shares its multiplicity with {res.witness.perm}")
    return perm


def rectification_domain(A: GSubset, B: GSubset) -> GSubset:
    G = A.group
    return GSubset(G, list(sumset(A, B)) + list(A) + list(B) + [G.zero])


def acyclic_via_rectification(A: GSubset, B: GSubset, verify: bool = True,
                              cap=None) -> Optional[MatchingFn]:
    """Rectify (A+B) u A u B u {0} and run the greedy construction; None if no
    dilation rectifies that set."""
    _check_zp(A)
    X = rectification_domain(A, B)
    phi = find_embedding(X)
    if phi is None:
        log.info("no dilation rectifies a set of size %d in Z/%d", len(X), A.group.order)
        return None
    return greedy_acyclic(A, B, phi, verify, cap)
