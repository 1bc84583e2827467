"""Multiplicity functions, acyclicity, and explicit (non-)acyclic constructions.

A matching f: A -> B is acyclic when no other matching g: A -> B has the
same multiplicity function x -> #{a : a + f(a) = x}.  There is no known
efficient test, so acyclicity is decided here by exhaustive search under
the enumeration cap.
"""

from __future__ import annotations

import itertools
import json
from collections.abc import Mapping
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import config
from ._numtheory import is_prime, multiplicative_order
from .abelian import (GroupSpec, GSubset, add, cyclic, dilate, element_order,
                      is_sidon, scalar_mul, sub, sumset)
from .errors import InputError, SoundnessError
from .matchcount import (MatchingFn, build_bigraph, is_matching, iter_matchings,
                         iter_with_multiplicity)


class MultiplicityFn(Mapping):
    """Sparse map from group elements to positive counts (absent means 0)."""

    def __init__(self, counts, group: Optional[GroupSpec] = None):
        self.group = group
        self._items = tuple(sorted((tuple(x), int(c)) for x, c in dict(counts).items() if c))
        if any(c < 0 for _, c in self._items):
            raise InputError("multiplicities must be nonnegative")
        self._map = dict(self._items)

    def __getitem__(self, x):
        return self._map[tuple(x)]

    def __call__(self, x):
        return self._map.get(tuple(x), 0)

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __eq__(self, other):
        if isinstance(other, MultiplicityFn):
            return self._items == other._items
        return NotImplemented

    def __hash__(self):
        return hash(self._items)

    def __repr__(self):
        return f"MultiplicityFn({dict(self._items)})"

    @property
    def mass(self):
        return sum(self._map.values())

    def support(self) -> GSubset:
        return GSubset(self.group, list(self._map))

    def to_json(self):
        return {",".join(map(str, x)): c for x, c in self._items}

    @classmethod
    def from_json(cls, obj, group: Optional[GroupSpec] = None):
        counts = {}
        for key, c in obj.items():
            x = tuple(int(v) for v in str(key).split(","))
            if group is not None:
                x = group.element(x)
            counts[x] = int(c)
        return cls(counts, group)


def _sums(A: GSubset, B: GSubset, f: MatchingFn):
    g = A.group
    return [add(g, a, B[j]) for a, j in zip(A, f.perm)]


def multiplicity(A: GSubset, B: GSubset, f: MatchingFn) -> MultiplicityFn:
    if f.k != len(A) or len(A) != len(B):
        raise InputError("matching size does not match the subsets")
    counts = {}
    for x in _sums(A, B, f):
        if x in A:
            raise InputError(f"{f.perm} is not a matching: a + f(a) = {x} lies in A")
        counts[x] = counts.get(x, 0) + 1
    return MultiplicityFn(counts, A.group)


def support(A: GSubset, B: GSubset, f: MatchingFn) -> GSubset:
    return multiplicity(A, B, f).support()


class Acyclicity(NamedTuple):
    acyclic: bool
    witness: Optional[MatchingFn]  # another matching with the same multiplicity

    def __bool__(self):
        return self.acyclic


def is_acyclic(A: GSubset, B: GSubset, f: MatchingFn, cap=None) -> Acyclicity:
    m = multiplicity(A, B, f)
    M = build_bigraph(A, B)
    for g in iter_with_multiplicity(M, dict(m.items()), cap):
        if g != f:
            return Acyclicity(False, g)
    return Acyclicity(True, None)


def _signature(sums):
    return tuple(sorted(sums))


def find_acyclic_matching(A: GSubset, B: GSubset, cap=None) -> Optional[MatchingFn]:
    """Lexicographically least matching whose multiplicity class is a singleton."""
    if len(A) != len(B):
        raise InputError(f"#A={len(A)} differs from #B={len(B)}")
    if A.group.zero in B:
        raise InputError("B must not contain the neutral element")
    M = build_bigraph(A, B)
    g = A.group
    sums = [[add(g, a, b) for b in B] for a in A]
    classes = {}
    for f in iter_matchings(M, cap):
        sig = _signature(sums[i][j] for i, j in enumerate(f.perm))
        hit = classes.get(sig)
        if hit is None:
            classes[sig] = f
        elif hit is not _SHARED:
            classes[sig] = _SHARED
    for f in classes.values():
        if f is not _SHARED:
            return f
    return None


_SHARED = object()


# -- constructions in cyclic groups -------------------------------------------

def jafari_set(p: int) -> GSubset:
    """The orbit {1, 2, 4, ...} of 2 in Z/p; it has no acyclic self-matching
    when the multiplicative order of 2 mod p is odd."""
    if p < 3 or not is_prime(p):
        raise InputError(f"p={p} must be an odd prime")
    t = multiplicative_order(2, p)
    if t % 2 == 0:
        raise InputError(f"the order of 2 mod {p} is {t}, which is even")
    return GSubset(cyclic(p), [pow(2, i, p) for i in range(t)])


def inverse_witness(A: GSubset, f: MatchingFn) -> Acyclicity:
    """For a self-matching f: A -> A, report f^{-1} as a witness when it differs.

    f and its inverse always share a multiplicity function, so f can only
    be acyclic when it is an involution.
    """
    g = f.inverse()
    if g == f:
        return is_acyclic(A, A, f)
    if multiplicity(A, A, g) != multiplicity(A, A, f):
        raise SoundnessError("f and its inverse have different multiplicities")
    return Acyclicity(False, g)


@dataclass(frozen=True)
class IdentityReport:
    is_matching: bool
    guaranteed: bool
    verified: Optional[bool]

    def to_json(self):
        return {"is_matching": self.is_matching, "guaranteed": self.guaranteed,
                "verified": self.verified}


def identity_acyclic(A: GSubset, cap=None) -> IdentityReport:
    """Is id: A -> A an (acyclic) matching in Z/p?

    ``guaranteed`` records whether k * 2^(k-1) < p, under which the
    identity is known to be acyclic; ``verified`` is the exhaustive answer
    (None when id is not a matching or k is over the cap).
    """
    if not A.group.is_cyclic_prime:
        raise InputError("identity_acyclic works in Z/p with p prime")
    p, k = A.group.order, len(A)
    matching = not (set(dilate(2, A)) & set(A))
    guaranteed = matching and k * 2 ** (k - 1) < p
    verified = None
    cap = config.CAPS.enum if cap is None else cap
    if matching and k <= cap:
        verified = is_acyclic(A, A, MatchingFn(tuple(range(k))), cap).acyclic
    return IdentityReport(matching, guaranteed, verified)


def sumset_disjoint(A: GSubset, B: GSubset) -> bool:
    """A and A + B do not meet (then every bijection A -> B is a matching)."""
    return not (set(sumset(A, B)) & set(A))


def sidon_acyclic_search(A: GSubset, B: GSubset, cap=None) -> MatchingFn:
    """An acyclic matching A -> B when A misses A + B and B is a Sidon set.

    Such a matching always exists; failing to find one raises
    :class:`SoundnessError`.
    """
    if len(A) != len(B):
        raise InputError(f"#A={len(A)} differs from #B={len(B)}")
    if not sumset_disjoint(A, B):
        raise InputError("A meets A + B")
    if not is_sidon(B):
        raise InputError("B is not a Sidon set")
    f = find_acyclic_matching(A, B, cap)
    if f is None:
        raise SoundnessError(f"no acyclic matching for A={A.to_json()}, B={B.to_json()}")
    return f


def geometric_example(n: int, k: int, a: int = 0):
    """B = {1, 2, ..., 2^(k-1)} and A = {a + i(2^(k-1) + 1)} in Z/n."""
    step = 2 ** (k - 1) + 1
    if k <= 1 or (k - 1) * step >= n:
        raise InputError(f"need k > 1 and (k-1)(2^(k-1)+1) < n, got n={n}, k={k}")
    G = cyclic(n)
    B = GSubset(G, [2**i for i in range(k)])
    A = GSubset(G, [a + i * step for i in range(k)])
    if len(A) != k or len(B) != k or not sumset_disjoint(A, B) or not is_sidon(B):
        raise SoundnessError(f"geometric example failed its postcondition for n={n}, k={k}")
    return A, B


# -- the largest matchings: #A = #G - 1 and #G - 2 ------------------------------

def max_size_matchings(G: GroupSpec, g1):
    """The only matching G \\ {g1} -> G \\ {0}, namely a -> g1 - a."""
    g1 = G.element(g1)
    A = GSubset(G, [x for x in G.elements() if x != g1])
    B = GSubset(G, [x for x in G.elements() if x != G.zero])
    perm = tuple(B.index(sub(G, g1, a)) for a in A)
    return A, B, MatchingFn(perm)


@dataclass(frozen=True)
class TwoDeficientMatching:
    """A matching G \\ {g1, g2} -> G \\ {0, g3} described by the length l of
    the progression B2 = {g3 + i(g2 - g1) : 1 <= i <= l}."""

    group: GroupSpec
    g1: tuple
    g2: tuple
    g3: tuple
    l: int
    f: MatchingFn = field(compare=False)

    @property
    def A(self):
        return GSubset(self.group, [x for x in self.group.elements() if x not in (self.g1, self.g2)])

    @property
    def B(self):
        return GSubset(self.group, [x for x in self.group.elements()
                                    if x not in (self.group.zero, self.g3)])


def _two_deficient(G, g1, g2, g3, l):
    d = sub(G, g2, g1)
    A = GSubset(G, [x for x in G.elements() if x not in (g1, g2)])
    B = GSubset(G, [x for x in G.elements() if x not in (G.zero, g3)])
    B2 = {add(G, g3, scalar_mul(G, i, d)) for i in range(1, l + 1)}
    perm = []
    for a in A:
        options = []
        x = sub(G, g1, a)
        if x in B and x not in B2:
            options.append(x)
        x = sub(G, g2, a)
        if x in B2:
            options.append(x)
        if len(options) != 1:
            return None
        perm.append(B.index(options[0]))
    if len(set(perm)) != len(perm):
        return None
    f = MatchingFn(tuple(perm))
    if not is_matching(build_bigraph(A, B), f):
        return None
    return f


def two_deficient_matchings(G: GroupSpec, g1, g2, g3) -> list:
    """All matchings G \\ {g1, g2} -> G \\ {0, g3}, one per admissible l.

    Candidate lengths are those with i(g2 - g1) not in {0, -g3} for
    1 <= i <= l; each candidate is expanded through the two-branch
    formula and kept only if it really is a matching.
    """
    g1, g2, g3 = G.element(g1), G.element(g2), G.element(g3)
    if g1 == g2:
        raise InputError("g1 and g2 must differ")
    if g3 == G.zero:
        raise InputError("g3 must be nonzero")
    d = sub(G, g2, g1)
    bad = {G.zero, sub(G, G.zero, g3)}
    out = []
    for l in range(0, element_order(G, d)):
        if l and scalar_mul(G, l, d) in bad:
            break
        f = _two_deficient(G, g1, g2, g3, l)
        if f is not None:
            out.append(TwoDeficientMatching(G, g1, g2, g3, l, f))
    return out


# -- sweeps over Z/n ------------------------------------------------------------

def disjoint_pairs(n: int, k: int, sidon_only: bool = False):
    """All (A, B) in Z/n with #A = #B = k and A disjoint from A + B, as int tuples.

    A misses A + B exactly when no difference of two elements of A lies in
    B, so A is grown as an independent set avoiding differences in B and -B.
    Pairs come out ordered by B, then A, lexicographically.
    """
    for B in itertools.combinations(range(1, n), k):
        if sidon_only and not _is_sidon_ints(B, n):
            continue
        forbidden = [False] * n
        for b in B:
            forbidden[b] = forbidden[-b % n] = True
        for A in _independent_sets(n, k, forbidden):
            yield A, B


def _is_sidon_ints(B, n):
    seen = set()
    for i, x in enumerate(B):
        for y in B[i:]:
            s = (x + y) % n
            if s in seen:
                return False
            seen.add(s)
    return True


def _independent_sets(n, k, forbidden):
    chosen = []

    def rec(start):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for x in range(start, n - (k - len(chosen)) + 1):
            if all(not forbidden[(x - y) % n] for y in chosen):
                chosen.append(x)
                yield from rec(x + 1)
                chosen.pop()

    yield from rec(0)


@dataclass
class SweepReport:
    n: int
    k_max: int
    holds: bool
    counterexample: Optional[tuple]
    pairs_checked: int
    complete: bool
    last_pair: Optional[tuple] = None

    def to_json(self):
        return {
            "n": self.n, "k_max": self.k_max, "holds": self.holds,
            "counterexample": None if self.counterexample is None
            else {"A": list(self.counterexample[0]), "B": list(self.counterexample[1])},
            "pairs_checked": self.pairs_checked, "complete": self.complete,
            "last_pair": None if self.last_pair is None
            else {"A": list(self.last_pair[0]), "B": list(self.last_pair[1])},
        }


def _sweep_chunk(args):
    n, k, B, sidon_only = args
    G = cyclic(n)
    Bs = GSubset(G, B)
    forbidden = [False] * n
    for b in B:
        forbidden[b] = forbidden[-b % n] = True
    out = []
    for A in _independent_sets(n, k, forbidden):
        f = find_acyclic_matching(GSubset(G, A), Bs)
        out.append((A, None if f is None else f.perm))
    return out


def weak_acyclic_property(n: int, k_max: int, sidon_only: bool = False,
                          budget: Optional[int] = None, jsonl=None,
                          jobs: int = 1) -> SweepReport:
    """Check that every pair A, B in Z/n with #A = #B <= k_max and A disjoint
    from A + B has an acyclic matching.

    With ``sidon_only`` only Sidon sets B are visited.  ``budget`` bounds
    the number of pairs; when it is hit the report is marked incomplete.
    ``jsonl`` (a writable text file) receives one record per pair.
    """
    checked = 0
    last = None
    for k in range(1, k_max + 1):
        Bs = [B for B in itertools.combinations(range(1, n), k)
              if not sidon_only or _is_sidon_ints(B, n)]
        tasks = [(n, k, B, sidon_only) for B in Bs]
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as ex:
                results = ex.map(_sweep_chunk, tasks, chunksize=8)
                rows = list(zip(Bs, results))
        else:
            rows = ((B, _sweep_chunk(t)) for B, t in zip(Bs, tasks))
        for B, res in rows:
            for A, perm in res:
                if budget is not None and checked >= budget:
                    return SweepReport(n, k_max, True, None, checked, False, last)
                checked += 1
                last = (A, B)
                if jsonl is not None:
                    jsonl.write(json.dumps({"n": n, "A": list(A), "B": list(B),
                                            "acyclic_matching": perm}) + "\n")
                if perm is None:
                    return SweepReport(n, k_max, False, (A, B), checked, False, last)
    return SweepReport(n, k_max, True, None, checked, True, last)
