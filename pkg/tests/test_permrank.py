import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from matchlab import permrank as pr
from matchlab.errors import InputError

perms = st.integers(2, 6).flatmap(lambda k: st.tuples(st.permutations(range(k)), st.permutations(range(k))))


def test_matrix_shape():
    alpha, beta = (1, 2, 0), (0, 2, 1)
    M = pr.theorem_matrix(alpha, beta)
    expected = 2 * np.eye(3, dtype=np.int64)
    for i in range(3):
        expected[i, alpha[i]] -= 1
        expected[i, beta[i]] -= 1
    assert (M == expected).all() or (M == expected.T).all()
    assert not (M @ np.ones(3, dtype=np.int64)).any()


def test_rank_examples():
    three_cycle = (1, 2, 0)
    assert pr.rank_mod_p(pr.theorem_matrix(three_cycle, three_cycle), 13) == 2
    swap = (1, 0, 2)
    # <swap> has orbits {0,1}, {2}
    assert pr.rank_mod_p(pr.theorem_matrix(swap, swap), 13) == 1
    assert pr.orbit_count(swap, swap) == 2


def test_t_coefficient_three_cycle():
    M = pr.theorem_matrix((1, 2, 0), (1, 2, 0))
    t = sympy.symbols("t")
    poly = sympy.Matrix(M.tolist()).charpoly(t).as_expr()
    assert pr.t_coefficient(M) == sympy.Poly(poly, t).coeff_monomial(t) == 12


@settings(max_examples=200, deadline=None)
@given(ab=perms)
def test_t_coefficient_matches_sympy(ab):
    alpha, beta = ab
    M = pr.theorem_matrix(alpha, beta)
    t = sympy.symbols("t")
    coeff = sympy.Poly(sympy.Matrix(M.tolist()).charpoly(t).as_expr(), t).coeff_monomial(t)
    assert pr.t_coefficient(M) == coeff


@settings(max_examples=200, deadline=None)
@given(ab=perms)
def test_rank_is_k_minus_orbits(ab):
    alpha, beta = ab
    k = len(alpha)
    M = pr.theorem_matrix(alpha, beta)
    r = pr.rank_rational(M)
    assert r == sympy.Matrix(M.tolist()).rank()
    assert r == k - pr.orbit_count(alpha, beta)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_sympy(rows):
    assert pr.bareiss_det(rows) == sympy.Matrix(rows).det()


def test_rank_mod_p_over_q_agree_when_p_large():
    for alpha, beta in itertools.product(itertools.permutations(range(4)), repeat=2):
        M = pr.theorem_matrix(alpha, beta)
        assert pr.rank_mod_p(M, 37) == pr.rank_rational(M)


def test_nullity_check_reports_intransitive_pairs():
    rep = pr.nullity_property_check(3, 13)
    assert rep.exhaustive and rep.pairs_checked == 25
    assert rep.intransitive_pairs == 3 and rep.min_rank == 1
    assert rep.orbit_rank_ok and rep.t_bound_ok and not rep.holds


def test_nullity_sampling_deterministic():
    a = pr.nullity_property_check(4, 37, trials=50, exhaustive=False, seed=3)
    b = pr.nullity_property_check(4, 37, trials=50, exhaustive=False, seed=3)
    assert a.to_json() == b.to_json() and a.pairs_checked == 50


def test_t_bound_exhaustive_k4():
    worst = max(abs(pr.t_coefficient(pr.theorem_matrix(a, b)))
                for a, b in itertools.product(itertools.permutations(range(4)), repeat=2))
    assert worst <= 4 * 2**3


def test_input_errors():
    with pytest.raises(InputError):
        pr.theorem_matrix((0, 0), (0, 1))
    with pytest.raises(InputError):
        pr.nullity_property_check(3, 11)  # 3 * 4 = 12 >= 11
    with pytest.raises(InputError):
        pr.rank_mod_p([[1]], 4)
