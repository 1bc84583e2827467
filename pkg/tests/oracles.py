"""Slow, independent reference implementations used only by the tests.

Nothing here imports matchlab: each oracle recomputes its answer from the
definitions with plain loops over itertools.permutations, sets and dicts.
"""

import itertools
from collections import Counter
from math import gcd


# -- groups ---------------------------------------------------------------------

def matchings_bruteforce(n, A, B):
    """All bijections A -> B (as index permutations) with a + f(a) outside A, in Z/n."""
    A, B = sorted(A), sorted(B)
    Aset = set(A)
    out = []
    for perm in itertools.permutations(range(len(B))):
        if all((a + B[j]) % n not in Aset for a, j in zip(A, perm)):
            out.append(perm)
    return out


def permanent_bruteforce(M):
    k = len(M)
    total = 0
    for perm in itertools.permutations(range(k)):
        prod = 1
        for i, j in enumerate(perm):
            prod *= M[i][j]
            if not prod:
                break
        total += prod
    return total


def acyclic_bruteforce(n, A, B):
    """Matchings whose multiset of sums a + f(a) is shared by no other matching."""
    A, B = sorted(A), sorted(B)
    classes = Counter()
    ms = matchings_bruteforce(n, A, B)
    sig = {}
    for perm in ms:
        s = tuple(sorted((a + B[j]) % n for a, j in zip(A, perm)))
        sig[perm] = s
        classes[s] += 1
    return [perm for perm in ms if classes[sig[perm]] == 1]


def is_sidon_bruteforce(n, B):
    B = sorted(B)
    sums = Counter()
    for x, y in itertools.combinations_with_replacement(B, 2):
        sums[(x + y) % n] += 1
    return all(v == 1 for v in sums.values())


def freiman2_bruteforce(values, p):
    """Every quadruple (x, y, z, w): x + y = z + w mod p iff phi sums agree."""
    xs = list(values)
    for x, y, z, w in itertools.product(xs, repeat=4):
        lhs = (x + y - z - w) % p == 0
        rhs = values[x] + values[y] == values[z] + values[w]
        if lhs != rhs:
            return False
    return True


def primes_upto(n):
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(n + 1) if sieve[i]]


# -- finite fields -----------------------------------------------------------------

class PolyField:
    """F_p[x]/(f) with elements as coefficient tuples (low degree first)."""

    def __init__(self, p, N):
        self.p, self.N = p, N
        self.f = self._first_irreducible()
        self.elements = list(itertools.product(range(p), repeat=N))
        self.zero = (0,) * N
        self.one = (1,) + (0,) * (N - 1)

    def _first_irreducible(self):
        p, N = self.p, self.N
        for tail in itertools.product(range(p), repeat=N):
            f = list(tail) + [1]
            if self._irreducible(f):
                return f
        raise AssertionError("no irreducible polynomial")

    def _irreducible(self, f):
        # no monic factor of degree 1 .. N//2
        p, N = self.p, len(f) - 1
        for d in range(1, N // 2 + 1):
            for tail in itertools.product(range(p), repeat=d):
                g = list(tail) + [1]
                if not self._polyrem(f, g):
                    return False
        return True

    def _polyrem(self, a, g):
        a = list(a)
        p = self.p
        while len(a) >= len(g):
            c = a[-1] % p
            shift = len(a) - len(g)
            for i, gi in enumerate(g):
                a[shift + i] = (a[shift + i] - c * gi) % p
            a.pop()
        return any(x % p for x in a)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def smul(self, c, a):
        return tuple(c * x % self.p for x in a)

    def mul(self, a, b):
        p, N, f = self.p, self.N, self.f
        prod = [0] * (2 * N - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        for i in range(2 * N - 2, N - 1, -1):
            c = prod[i]
            if c:
                for j in range(N + 1):
                    prod[i - N + j] = (prod[i - N + j] - c * f[j]) % p
        return tuple(prod[:N])

    def power(self, a, e):
        out = self.one
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def frob_q(self, a, q):
        """a^q by repeated p-th powers."""
        out = a
        e = q
        while e > 1:
            out = self.power(out, self.p)
            e //= self.p
        return out

    def degree_over(self, a, q):
        """Size of the orbit of a under x -> x^q."""
        b, d = self.frob_q(a, q), 1
        while b != a:
            b, d = self.frob_q(b, q), d + 1
        return d


def subfield_elements(K, q):
    """The base field F = {a : a^q = a} inside K."""
    return [a for a in K.elements if K.frob_q(a, q) == a]


def all_F_subspaces(K, F):
    """Every F-subspace of K as a frozenset; span(S + v) = {s + c v}."""
    scaled = {v: [K.mul(c, v) for c in F] for v in K.elements}
    seen = {frozenset([K.zero])}
    frontier = list(seen)
    while frontier:
        nxt = []
        for S in frontier:
            for v in K.elements:
                if v not in S:
                    T = frozenset(K.add(s, cv) for s in S for cv in scaled[v])
                    if T not in seen:
                        seen.add(T)
                        nxt.append(T)
        frontier = nxt
    return seen


def max_primitive_dim_bruteforce(p, m, n):
    K = PolyField(p, m * n)
    q = p**m
    F = subfield_elements(K, q)
    deg = {a: K.degree_over(a, q) for a in K.elements}
    best = 0
    for S in all_F_subspaces(K, F):
        if all(deg[a] == n for a in S if a != K.zero):
            d = 0
            size = len(S)
            while size > 1:
                size //= q
                d += 1
            best = max(best, d)
    return best


def gl_order(d, q):
    out = 1
    for i in range(d):
        out *= q**d - q**i
    return out


def multiplicative_order(a, n):
    assert gcd(a, n) == 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k
