import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from matchlab import config, matchcount as mc
from matchlab.abelian import GSubset, cyclic
from matchlab.errors import CapExceeded, InputError

from oracles import matchings_bruteforce, permanent_bruteforce

square01 = st.integers(1, 7).flatmap(
    lambda k: st.lists(st.lists(st.integers(0, 1), min_size=k, max_size=k), min_size=k, max_size=k))


def test_build_bigraph_z7():
    G = cyclic(7)
    A = B = GSubset(G, [1, 2, 4])
    M = mc.build_bigraph(A, B)
    # 1+1, 2+2, 4+4 land in A: J - I
    assert M.rows == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert mc.permanent(M) == 2
    assert mc.Biadjacency.from_json(M.to_json()).rows == M.rows


def test_biadjacency_validation():
    with pytest.raises(InputError):
        mc.Biadjacency([[1, 0]])
    with pytest.raises(InputError):
        mc.Biadjacency([[2]])
    with pytest.raises(InputError):
        mc.Biadjacency.from_json({"k": 3, "rows": [[1]]})


@settings(max_examples=300, deadline=None)
@given(rows=square01)
def test_ryser_matches_bruteforce(rows):
    assert mc.permanent(rows) == permanent_bruteforce(rows)
    assert mc.ryser_gray(rows) == permanent_bruteforce(rows)


@settings(max_examples=60, deadline=None)
@given(rows=square01)
def test_modular_ryser_matches(rows):
    assert mc.ryser_modular(rows) == mc.ryser_gray(rows)


def test_modular_ryser_larger():
    rng = random.Random(1)
    for k in (9, 12, 15):
        rows = [[rng.randint(0, 1) for _ in range(k)] for _ in range(k)]
        assert mc.ryser_modular(rows, low_bits=6) == mc.ryser_gray(rows)


def test_permanent_of_all_ones():
    assert mc.permanent([[1] * 16 for _ in range(16)]) == math.factorial(16)
    assert mc.permanent([]) == 1


def test_permanent_derangements():
    # per(J - I) counts derangements
    for k in range(1, 9):
        rows = [[int(i != j) for j in range(k)] for i in range(k)]
        d = round(math.factorial(k) / math.e) if k else 1
        assert mc.permanent(rows) == d


def test_permanent_cap():
    with pytest.raises(CapExceeded):
        mc.permanent([[1] * 5 for _ in range(5)], cap=4)


def test_enumeration_matches_bruteforce_group():
    G = cyclic(8)
    A, B = GSubset(G, [0, 1, 3, 5]), GSubset(G, [1, 2, 6, 7])
    M = mc.build_bigraph(A, B)
    got = [f.perm for f in mc.iter_matchings(M)]
    assert got == matchings_bruteforce(8, [0, 1, 3, 5], [1, 2, 6, 7])
    assert len(got) == mc.permanent(M)


def test_enumerate_limit():
    M = mc.Biadjacency([[1] * 4 for _ in range(4)])
    ms = mc.enumerate_matchings(M, limit=5)
    assert len(ms) == 5 and ms.truncated
    full = mc.enumerate_matchings(M)
    assert len(full) == 24 and not full.truncated


def test_find_perfect_matching_and_obstruction():
    G = cyclic(7)
    M = mc.build_bigraph(GSubset(G, [1, 2, 4]), GSubset(G, [1, 2, 4]))
    f = mc.find_perfect_matching(M)
    assert f is not None and mc.is_matching(M, f)
    G6 = cyclic(6)
    M6 = mc.build_bigraph(GSubset(G6, [0, 2, 4]), GSubset(G6, [1, 2, 3]))
    assert mc.find_perfect_matching(M6) is None
    assert mc.permanent(M6) == 0


@settings(max_examples=200, deadline=None)
@given(rows=square01)
def test_kuhn_agrees_with_permanent(rows):
    M = mc.Biadjacency(rows)
    assert mc.has_perfect_matching(M) == (mc.permanent(M) > 0)


@settings(max_examples=300, deadline=None)
@given(rows=square01)
def test_bound_sandwich(rows):
    M = mc.Biadjacency(rows)
    b = mc.bounds(M)
    per = mc.permanent(M)
    assert b.ostrand_lower <= per
    assert per <= b.bregman_minc_upper * (1 + 1e-9) + 1e-9


def test_bounds_examples():
    J3 = mc.Biadjacency([[1] * 3] * 3)
    b = mc.bounds(J3)
    assert b.ostrand_lower == 6
    assert b.bregman_minc_upper == pytest.approx(6.0)
    zero_row = mc.Biadjacency([[0, 0], [1, 1]])
    assert mc.bounds(zero_row).bregman_minc_upper == 0.0
    # J - I of size 3: rows have degree 2, Bregman gives 2^(3/2)*... = (2!)^(3/2)
    b = mc.bounds(mc.Biadjacency([[0, 1, 1], [1, 0, 1], [1, 1, 0]]))
    assert b.bregman_minc_upper == pytest.approx(2 ** 1.5)
    assert b.ostrand_lower == 0


def test_bounds_json_strings():
    js = mc.bounds(mc.Biadjacency([[1] * 3] * 3)).to_json()
    assert js["ostrand_lower"] == "6"


def test_vdw_lower():
    assert mc.vdw_lower(3, 3) == pytest.approx(6 * 27 / 27)
    for k in range(1, 7):
        for r in range(1, k + 1):
            # circulant r-regular matrix
            rows = [[int((j - i) % k < r) for j in range(k)] for i in range(k)]
            assert mc.permanent(rows) >= mc.vdw_lower(k, r) - 1e-9
    with pytest.raises(InputError):
        mc.vdw_lower(3, 4)


def test_count_with_multiplicity():
    G = cyclic(7)
    A = GSubset(G, [1, 2, 4])
    M = mc.build_bigraph(A, A)
    total = 0
    seen = set()
    for f in mc.iter_matchings(M):
        m = {}
        for i, j in enumerate(f.perm):
            s = ((A[i][0] + A[j][0]) % 7,)
            m[s] = m.get(s, 0) + 1
        key = tuple(sorted(m.items()))
        if key not in seen:
            seen.add(key)
            total += mc.count_with_multiplicity(A, A, m)
    assert total == mc.permanent(M)


def test_matching_fn():
    f = mc.MatchingFn((2, 0, 1))
    assert f.inverse().perm == (1, 2, 0)
    with pytest.raises(InputError):
        mc.MatchingFn((0, 0))


def test_array_view():
    M = mc.Biadjacency([[1, 0], [1, 1]])
    assert isinstance(M.array(), np.ndarray) and M.array().sum() == 3
    assert M.degrees().row_sums == (1, 2) and M.degrees().col_sums == (2, 1)


def test_caps_override():
    with config.override(perm=3):
        with pytest.raises(CapExceeded):
            mc.permanent([[1] * 4] * 4)
    assert mc.permanent([[1] * 4] * 4) == 24
