import random

import pytest
from hypothesis import given, settings, strategies as st

from matchlab import rectify as rc
from matchlab.abelian import GSubset, cyclic
from matchlab.acyclic import find_acyclic_matching, is_acyclic
from matchlab.errors import InputError
from matchlab.matchcount import build_bigraph, is_matching

from oracles import freiman2_bruteforce, primes_upto

PRIMES = [p for p in primes_upto(400) if p > 20]


def test_centered_rep():
    assert rc.centered_rep(98, 101) == -3
    assert rc.centered_rep(50, 101) == 50
    assert rc.centered_rep(51, 101) == -50


def test_embedding_example():
    X = GSubset(cyclic(101), [0, 1, 3, 98])
    phi = rc.find_embedding(X)
    assert phi.dilation == 1
    assert phi.values == {0: 0, 1: 1, 3: 3, 98: -3}
    assert freiman2_bruteforce(phi.values, 101)


def test_embedding_needs_dilation():
    # 0, 1, 50 is spread out; dilation by 2 brings 50 to 100 = -1
    X = GSubset(cyclic(101), [0, 1, 50])
    phi = rc.find_embedding(X)
    assert phi is not None and phi.dilation > 1
    assert freiman2_bruteforce(phi.values, 101)


def test_embedding_none_for_large_set():
    X = GSubset(cyclic(11), range(11))
    assert rc.find_embedding(X) is None


@settings(max_examples=100, deadline=None)
@given(p=st.sampled_from(PRIMES), data=st.data())
def test_embedding_is_freiman(p, data):
    X = data.draw(st.sets(st.integers(0, p - 1), min_size=1, max_size=5))
    phi = rc.find_embedding(GSubset(cyclic(p), X))
    if phi is not None:
        assert freiman2_bruteforce(phi.values, p)
        assert all(4 * abs(v - phi.values.get(0, 0)) < 2 * p for v in phi.values.values())


def test_greedy_small_example():
    G = cyclic(101)
    A, B = GSubset(G, [1, 2]), GSubset(G, [3, 4])
    f = rc.acyclic_via_rectification(A, B)
    assert f.perm == (0, 1)


@settings(max_examples=150, deadline=None)
@given(p=st.sampled_from(PRIMES), data=st.data())
def test_greedy_agrees_with_oracle(p, data):
    k = data.draw(st.integers(1, 3))
    G = cyclic(p)
    A = GSubset(G, data.draw(st.sets(st.integers(0, p - 1), min_size=k, max_size=k)))
    B = GSubset(G, data.draw(st.sets(st.integers(1, p - 1), min_size=k, max_size=k)))
    f = rc.acyclic_via_rectification(A, B)
    if f is not None:
        assert is_matching(build_bigraph(A, B), f)
        assert is_acyclic(A, B, f).acyclic
        assert find_acyclic_matching(A, B) is not None


def test_greedy_rejects():
    G = cyclic(101)
    A, B = GSubset(G, [1, 2]), GSubset(G, [0, 4])
    phi = rc.find_embedding(rc.rectification_domain(A, B))
    with pytest.raises(InputError):
        rc.greedy_acyclic(A, B, phi)
    with pytest.raises(InputError):
        rc.find_embedding(GSubset(cyclic(100), [1]))


def test_large_prime_instances():
    rng = random.Random(5)
    for p in (999983, 1000003 - 70, 65537):
        if not all(p % d for d in range(2, int(p**0.5) + 1)):
            continue
        G = cyclic(p)
        A = GSubset(G, rng.sample(range(p), 3))
        B = GSubset(G, rng.sample(range(1, p), 3))
        f = rc.acyclic_via_rectification(A, B)
        if f is not None:
            assert is_acyclic(A, B, f).acyclic
