"""Small integer helpers (trial division is plenty at these sizes)."""

from math import gcd


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n):
    """Prime factorization as a sorted list of ``(prime, exponent)``."""
    out = []
    d = 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def prime_factors(n):
    return [p for p, _ in factorize(n)]


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def lcm(a, b):
    return a * b // gcd(a, b)


def multiplicative_order(a, n):
    """Least t >= 1 with a**t == 1 (mod n); requires gcd(a, n) == 1."""
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit modulo {n}")
    t, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        t += 1
    return t
