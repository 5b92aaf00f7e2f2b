from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ehcert.numerics import Power, ceil_frac, ceil_of, ceil_pow, ceil_scaled_power, exact, parse_real, pow_le, real_text


def test_ceil_and_floor():
    assert ceil_frac(Fraction(7, 2)) == 4
    assert ceil_frac(Fraction(-7, 2)) == -3
    assert ceil_frac(3) == 3


def test_ceil_pow_exact_roots():
    assert ceil_pow(64, Fraction(1, 2)) == 8
    assert ceil_pow(65, Fraction(1, 2)) == 9
    assert ceil_pow(1000, Fraction(1, 3)) == 10
    assert ceil_scaled_power(Fraction(1, 2), 16, Fraction(1, 4)) == 1
    assert ceil_scaled_power(3, Fraction(1, 8), Fraction(1, 3)) == 2


def test_power_comparisons_are_exact():
    root2 = Power.of(2, Fraction(1, 2))
    assert root2 > Fraction(141421356, 10**8)
    assert root2 < Fraction(141421357, 10**8)
    assert Power(3, 4, Fraction(1, 2)) == 6
    assert Power.of(8, Fraction(1, 3)) == Power.of(4, Fraction(1, 2))
    assert Power.of(2, Fraction(1, 3)) < Power.of(2, Fraction(1, 2))


def test_power_tiny_values_compare_without_overflow():
    y = Fraction(1, 2**192)
    tiny = Power.of(y, Fraction(1, 6))
    assert tiny == Fraction(1, 2**32)
    assert tiny * 2**31 < 1
    assert exact(Power.of(y, 1)) == y


def test_text_round_trip():
    for x in (Fraction(3, 7), Fraction(5), Power(Fraction(1, 2), Fraction(1, 9), Fraction(1, 6))):
        assert parse_real(real_text(x)) == x
    assert ceil_of(Power(1, 10, Fraction(1, 2))) == 4


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 50), st.integers(1, 6))
def test_ceil_pow_is_least_integer(n, p, q):
    e = Fraction(p, q)
    w = ceil_pow(n, e)
    # w >= n^e and w - 1 < n^e, in integer arithmetic
    assert Fraction(w) ** q >= Fraction(n) ** p
    assert w == 0 or Fraction(w - 1) ** q < Fraction(n) ** p


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=Fraction(1, 1000), max_value=1000), st.integers(1, 100), st.integers(1, 12))
def test_power_ordering_matches_integer_check(q, p, d):
    x = Power.of(Fraction(17, 5), Fraction(p, d))
    lhs = Fraction(17, 5) ** p
    rhs = q ** d
    assert (x > q) == (lhs > rhs)
    assert (x == q) == (lhs == rhs)


def test_power_rejects_nonpositive():
    with pytest.raises(ValueError):
        Power(0, 2, 1)
    with pytest.raises(AttributeError):
        Power.of(2, 1).coef = 3
