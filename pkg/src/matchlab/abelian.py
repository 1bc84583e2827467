"""Finite abelian groups Z/n_1 x ... x Z/n_r and their subsets.

Elements are tuples of residues.  Subsets are stored as strictly sorted
tuples of elements, so two subsets are equal exactly when their element
tuples are equal, and iteration order is reproducible.

>>> G = cyclic(7)
>>> sumset(G.subset([1, 2]), G.subset([0, 3])).as_ints()
[1, 2, 4, 5]
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator

import numpy as np

from . import config
from ._numtheory import is_prime, lcm
from .errors import InputError

GElem = tuple


@dataclass(frozen=True)
class GroupSpec:
    orders: tuple

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        if not orders:
            raise InputError("a group needs at least one cyclic factor")
        if any(n < 2 for n in orders):
            raise InputError(f"cyclic factor orders must be >= 2, got {orders}")
        if prod(orders) > config.CAPS.group_order:
            raise InputError(
                f"group order {prod(orders)} exceeds cap {config.CAPS.group_order}")
        object.__setattr__(self, "orders", orders)

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return prod(self.orders)

    @property
    def zero(self):
        return (0,) * self.rank

    @property
    def is_cyclic_prime(self):
        return self.rank == 1 and is_prime(self.orders[0])

    def element(self, x) -> GElem:
        """Coerce ``x`` (an int for cyclic groups, or a sequence) to a reduced element."""
        if isinstance(x, int):
            if self.rank != 1:
                raise InputError(f"integer element {x} given for a rank-{self.rank} group")
            return (x % self.orders[0],)
        coords = tuple(int(c) for c in x)
        if len(coords) != self.rank:
            raise InputError(f"element {coords} has wrong length for orders {self.orders}")
        return tuple(c % n for c, n in zip(coords, self.orders))

    def elements(self) -> Iterator[GElem]:
        return itertools.product(*(range(n) for n in self.orders))

    def subset(self, elems: Iterable) -> "GSubset":
        return GSubset(self, elems)

    def to_json(self):
        return {"orders": list(self.orders)}

    @classmethod
    def from_json(cls, obj):
        return cls(tuple(obj["orders"]))


def cyclic(n) -> GroupSpec:
    return GroupSpec((n,))


@dataclass(frozen=True)
class GSubset:
    group: GroupSpec
    elems: tuple
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elems = tuple(sorted({self.group.element(x) for x in self.elems}))
        object.__setattr__(self, "elems", elems)
        object.__setattr__(self, "_members", frozenset(elems))

    def __len__(self):
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __contains__(self, x):
        if isinstance(x, int):
            x = self.group.element(x)
        return x in self._members

    def __getitem__(self, i):
        return self.elems[i]

    def index(self, x):
        return self.elems.index(self.group.element(x))

    def as_ints(self):
        """Elements of a cyclic-group subset as plain integers."""
        if self.group.rank != 1:
            raise InputError("as_ints is only defined for cyclic groups")
        return [x[0] for x in self.elems]

    def to_json(self):
        return [list(x) for x in self.elems]


def _check_elem(g: GroupSpec, x):
    if len(x) != g.rank:
        raise InputError(f"element {tuple(x)} does not belong to group with orders {g.orders}")


def _same_group(A: GSubset, B: GSubset):
    if A.group != B.group:
        raise InputError(f"subsets live in different groups {A.group.orders} and {B.group.orders}")


def add(g: GroupSpec, x, y) -> GElem:
    _check_elem(g, x)
    _check_elem(g, y)
    return tuple((a + b) % n for a, b, n in zip(x, y, g.orders))


def sub(g: GroupSpec, x, y) -> GElem:
    _check_elem(g, x)
    _check_elem(g, y)
    return tuple((a - b) % n for a, b, n in zip(x, y, g.orders))


def neg(g: GroupSpec, x) -> GElem:
    _check_elem(g, x)
    return tuple(-a % n for a, n in zip(x, g.orders))


def scalar_mul(g: GroupSpec, m: int, x) -> GElem:
    _check_elem(g, x)
    return tuple(m * a % n for a, n in zip(x, g.orders))


def sumset(A: GSubset, B: GSubset) -> GSubset:
    _same_group(A, B)
    g = A.group
    return GSubset(g, [add(g, a, b) for a in A for b in B])


def dilate(m: int, A: GSubset) -> GSubset:
    return GSubset(A.group, [scalar_mul(A.group, m, a) for a in A])


def translate(A: GSubset, t) -> GSubset:
    t = A.group.element(t)
    return GSubset(A.group, [add(A.group, a, t) for a in A])


def complement(A: GSubset) -> GSubset:
    return GSubset(A.group, [x for x in A.group.elements() if x not in A])


def cauchy_davenport_holds(A: GSubset, B: GSubset) -> bool:
    """Check #(A+B) >= min(p, #A + #B - 1) in Z/p."""
    _same_group(A, B)
    if not A.group.is_cyclic_prime:
        raise InputError("the Cauchy-Davenport bound is only guaranteed in Z/p, p prime")
    if not len(A) or not len(B):
        raise InputError("Cauchy-Davenport needs nonempty sets")
    p = A.group.order
    return len(sumset(A, B)) >= min(p, len(A) + len(B) - 1)


def cauchy_davenport_sweep(p: int, cap: int | None = None):
    """Check the Cauchy-Davenport bound for every pair of nonempty subsets of Z/p.

    Subsets are bitmasks; for a fixed B the sumsets of all A at once are
    ORs of cyclic rotations.  Returns (pairs checked, first failing (A, B)
    or None), failures ordered by B mask then A mask.
    """
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    cap = config.CAPS.group_order if cap is None else cap
    if 4**p > cap:
        raise InputError(f"2^p x 2^p = {4**p} pairs exceeds the cap {cap}")
    full = (1 << p) - 1
    masks = np.arange(1, full + 1, dtype=np.int64)
    pop = np.array([bin(m).count("1") for m in range(full + 1)], dtype=np.int64)
    sizeA = pop[masks]
    for bmask in range(1, full + 1):
        acc = np.zeros_like(masks)
        for b in range(p):
            if bmask >> b & 1:
                acc |= ((masks << b) | (masks >> (p - b))) & full
        need = np.minimum(p, sizeA + pop[bmask] - 1)
        bad = np.nonzero(pop[acc] < need)[0]
        if bad.size:
            a = int(masks[bad[0]])
            return full * (bmask - 1) + int(bad[0]) + 1, (
                [i for i in range(p) if a >> i & 1], [i for i in range(p) if bmask >> i & 1])
    return full * full, None


def is_sidon(B: GSubset) -> bool:
    """True iff x + y = z + w has no solution in B with {x, y} and {z, w} disjoint.

    Two different unordered pairs with a common sum are automatically
    disjoint, so it is enough that all pair sums x + y (x <= y) differ.
    """
    g = B.group
    seen = set()
    for i, x in enumerate(B.elems):
        for y in B.elems[i:]:
            s = add(g, x, y)
            if s in seen:
                return False
            seen.add(s)
    return True


def element_order(g: GroupSpec, x) -> int:
    _check_elem(g, x)
    t = 1
    for a, n in zip(x, g.orders):
        t = lcm(t, n // gcd(a, n))
    return t


def cyclic_subgroup(g: GroupSpec, x) -> GSubset:
    return GSubset(g, [scalar_mul(g, t, x) for t in range(element_order(g, x))])
