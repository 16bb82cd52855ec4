from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sawlab.errors import AmbiguousComparison, InvalidParams
from sawlab.exact import floor_root_product, power_cmp, rational

small = st.fractions(min_value=Fraction(1, 20), max_value=50, max_denominator=20)
expo = st.fractions(min_value=-3, max_value=3, max_denominator=12)


def test_rational():
    assert rational(0.1) == Fraction(1, 10)
    assert rational("3/7") == Fraction(3, 7)
    assert rational(2) == 2


def test_power_cmp_examples():
    assert power_cmp([(Fraction(1, 3), 1)], [(3, -2)]) == 1
    assert power_cmp([(Fraction(1, 3), 1)], [(3, Fraction(-1, 2))]) == -1
    assert power_cmp([(4, Fraction(1, 2))], [(2, 1)]) == 0
    assert power_cmp([(0, 1)], [(2, -5)]) == -1
    with pytest.raises(InvalidParams):
        power_cmp([(0, -1)], [(1, 1)])


@given(small, expo, small, expo)
def test_power_cmp_matches_integer_powers(a, p, b, q):
    den = p.denominator * q.denominator
    lhs = a ** int(p * den)
    rhs = b ** int(q * den)
    assert power_cmp([(a, p)], [(b, q)]) == (lhs > rhs) - (lhs < rhs)


def test_power_cmp_large_denominators():
    tiny = Fraction(1, 1945910149056)
    assert power_cmp([(1, 1)], [(7, -tiny)]) == 1
    assert power_cmp([(7, tiny)], [(1, 1)]) == 1
    with pytest.raises(AmbiguousComparison):
        power_cmp([(4, Fraction(1, 5003))], [(2, Fraction(2, 5003))])


@given(st.fractions(min_value=0, max_value=20, max_denominator=30), st.integers(0, 10_000))
def test_floor_root_product(c, k):
    w = floor_root_product(c, k)
    assert w >= 0
    assert Fraction(w) ** 2 <= c * c * k < Fraction(w + 1) ** 2
