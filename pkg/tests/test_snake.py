import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from sawlab.errors import HypothesisUnmet, InvalidParams, NotExtendable
from sawlab.exact import power_cmp
from sawlab.lattice import Polygon, Walk
from sawlab.snake import (
    SnakeParams,
    TypicalityParams,
    charming_indices,
    charming_snake_test,
    closecard,
    conditional_closing_q,
    cs_probability,
    first_parts,
    phi_hat,
    q_by_filtering,
    snake_hypothesis_eval,
    theorem_constants,
    typical_pair_checks,
    x_statistic,
)

WEST = Walk.from_directions("W")
SOUTH = Walk.from_directions("S")


def test_q_examples():
    assert conditional_closing_q(1, 3, WEST) == Fraction(1, 3)
    with pytest.raises(NotExtendable):
        conditional_closing_q(1, 3, SOUTH)
    with pytest.raises(InvalidParams):
        conditional_closing_q(1, 1, WEST)
    with pytest.raises(InvalidParams):
        conditional_closing_q(2, 3, WEST)


@pytest.mark.parametrize("m", range(2, 8))
def test_q_two_routes(m):
    for n in range(0, m):
        direct = {tuple(g.vertices): conditional_closing_q(n, m, g) for g in first_parts(n, m)}
        assert direct == q_by_filtering(n, m)
        assert all(0 <= q <= 1 for q in direct.values())


def test_phi_hat():
    assert phi_hat(1, 3, 2) == [WEST]
    assert phi_hat(1, 3, 0) == []
    assert phi_hat(1, 3, -1) == []


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5), st.fractions(0, 2), st.fractions(0, 2))
def test_phi_hat_monotone(n, a, b):
    lo, hi = sorted((a, b))
    m = n + 2
    assert set(phi_hat(n, m, lo)) <= set(phi_hat(n, m, hi))


def test_charming_examples():
    assert 1 in charming_indices(WEST, SnakeParams(3, 1, 2))
    assert 1 not in charming_indices(WEST, SnakeParams(3, 1, Fraction(1, 2)))


def test_charming_parity():
    poly = Polygon.from_directions("WWSSEENN")
    for ell in range(0, 8):
        params = SnakeParams(7, ell, 1)
        assert all((ell - k) % 2 == 0 for k in charming_indices(poly.traversal[: ell + 1], params))


def test_charming_threshold_exact():
    n, beta, eta = 9, Fraction(1), Fraction(1, 2)
    for poly in Polygon.from_directions("WWSSEENN"), Polygon.from_directions("WSSSEENWNN"):
        for ell in range(0, min(poly.length, n + 1)):
            params = SnakeParams(n, ell, 1, beta, eta)
            count = len(charming_indices(poly.traversal[: ell + 1], params))
            # 4 * count >= 9**(1/2) = 3 exactly when count >= 1
            assert charming_snake_test(poly.traversal[: ell + 1], params) == (count >= 1)


def test_cs_probability_monotone_in_alpha():
    prev = Fraction(0)
    for alpha in ("0", "1/4", "1/2", "1", "2", "4"):
        p = cs_probability(SnakeParams(7, 3, alpha))
        assert 0 <= p <= 1
        assert p >= prev
        prev = p


def test_theorem_constants_d2():
    e, k = theorem_constants(2)
    assert e == Fraction(1, 5 * 9)
    assert k == pytest.approx(20 * 9 * 3)


def test_snake_eval_two_paths():
    rep = snake_hypothesis_eval(SnakeParams(9, 3, "0.8"))
    assert rep.delta == "1/5"
    assert abs(rep.rhs - rep.rhs_check) < 1e-12
    e, _ = theorem_constants(2)
    with mpmath.workdps(30):
        direct = mpmath.power(2, -mpmath.mpf(e.numerator) / e.denominator * mpmath.power(9, 0.2) / 2)
    assert abs(rep.rhs - float(direct)) < 1e-12
    with pytest.raises(InvalidParams):
        snake_hypothesis_eval(SnakeParams(9, 3, 1))


def _x_oracle(poly, ell, m_prime, alpha):
    t = poly.traversal
    total = 0
    for k in range(ell + 1):
        m = m_prime + k - 1
        q = q_by_filtering(k, m).get(tuple(t[: k + 1]), Fraction(0))
        total += q > 0 and power_cmp([(q, 1)], [(m, -alpha)]) > 0
    return total


def test_x_statistic_unit_square():
    sq = Polygon.from_directions("WSEN")
    for m_prime in (2, 3, 4):
        for alpha in (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)):
            for ell in range(4):
                x = x_statistic(sq, ell, m_prime, alpha)
                assert 0 <= x <= ell + 1
                assert x == _x_oracle(sq, ell, m_prime, alpha)


def test_typicality_params():
    with pytest.raises(InvalidParams):
        TypicalityParams(0, 0, "0.1")
    with pytest.raises(InvalidParams):
        TypicalityParams(0, "0.2", "0.1")
    with pytest.raises(InvalidParams):
        TypicalityParams(-1, "0.1", "0.1")


def test_typical_pair_example():
    rep = typical_pair_checks(1, 4, TypicalityParams(0, "0.1", "0.1"))
    # both orientations of each walk are counted: 6 walks vs 2 closing
    assert (rep.count, rep.closing) == (6, 2)
    assert power_cmp([(6, 1)], [(3, Fraction(3, 5)), (2, 1)]) > 0
    assert rep.in_E is False
    assert rep.cpt_ok is True


def test_closecard_n5():
    rep = closecard(5, 1, "1/2")
    assert rep.bound == pytest.approx(2 * math.sqrt(5))
    assert rep.within_bound == (len(rep.violating) <= 2 * math.sqrt(5))
    assert rep.hypothesis_met is False
    with pytest.raises(HypothesisUnmet):
        closecard(5, 1, "1/2", strict=True)


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_closecard_bound_when_hypothesis_holds(n):
    for a in ("1/2", "1", "3/2", "2"):
        for d in ("1/4", "1/2", "3/4"):
            rep = closecard(n, a, d)
            if rep.hypothesis_met:
                assert rep.within_bound
