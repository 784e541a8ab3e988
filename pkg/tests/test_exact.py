from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circle_patterns.exact import LaurentSeries, bernoulli, cot_series, csc2_series, rat, series_mul

F = Fraction


def test_rat_normalises():
    assert rat(2, 4) == F(1, 2)
    r = rat(3, -6)
    assert (r.numerator, r.denominator) == (-1, 2)
    z = rat(0, 7)
    assert (z.numerator, z.denominator) == (0, 1)


def test_rat_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        rat(1, 0)


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == F(-1, 2)
    assert bernoulli(2) == F(1, 6)
    assert bernoulli(4) == F(-1, 30)
    assert bernoulli(6) == F(1, 42)
    assert all(bernoulli(n) == 0 for n in range(3, 20, 2))


def test_bernoulli_against_generating_function():
    # x/(e^x - 1) = sum B_n x^n / n!, checked in floating point
    x = 0.3
    approx = sum(float(bernoulli(n)) * x**n / math.factorial(n) for n in range(16))
    assert approx == pytest.approx(x / math.expm1(x), rel=1e-12)


def test_cot_series_examples():
    assert cot_series(1, 3).terms() == {-1: F(1), 1: F(-1, 3), 3: F(-1, 45)}
    assert cot_series(2, 1).terms() == {-1: F(1, 2), 1: F(-2, 3)}
    assert cot_series(-1, 1).terms() == {-1: F(-1), 1: F(1, 3)}


def test_cot_series_zero_speed():
    with pytest.raises(ValueError):
        cot_series(0, 3)


@pytest.mark.parametrize("m", [1, 2, 3, -5, 7])
def test_cot_series_numeric(m):
    x = 1 / 1000
    s = cot_series(m, 5)
    # next omitted term is O((m x)^7)
    bound = 10 * abs(m * x) ** 7 + 1e-15 * abs(1 / (m * x))
    assert abs(float(s.evaluate(F(1, 1000))) - 1 / math.tan(m * x)) <= bound


def test_csc2_examples():
    assert csc2_series(0).terms() == {-2: F(1), 0: F(1, 3)}
    assert csc2_series(-2).terms() == {-2: F(1)}
    assert csc2_series(2).terms() == {-2: F(1), 0: F(1, 3), 2: F(1, 15)}


def test_csc2_numeric():
    x = 0.01
    assert float(csc2_series(4).evaluate(F(1, 100))) == pytest.approx(1 / math.sin(x) ** 2, rel=1e-12)


def test_derivative_of_cot_is_minus_csc2():
    for top in range(-2, 8):
        lhs = cot_series(1, top + 1).derivative()
        rhs = -csc2_series(top)
        assert lhs.window_top == rhs.window_top == top
        assert lhs.terms() == rhs.terms()


def test_series_mul_examples():
    sq = series_mul(cot_series(1, 3), cot_series(1, 3))
    assert sq.coeff(-2) == 1 and sq.coeff(0) == F(-2, 3)
    one = series_mul(LaurentSeries.monomial(-1, 1, 3), LaurentSeries.monomial(1, 1, 3))
    assert one.terms() == {0: F(1)}
    zero = series_mul(cot_series(3, 4), LaurentSeries.zero(4))
    assert zero.terms() == {}


def test_coefficients_beyond_window_are_refused():
    s = cot_series(1, 1)
    with pytest.raises(ValueError):
        s.coeff(2)
    with pytest.raises(ValueError):
        s.truncate(3)


def test_addition_uses_tighter_window():
    s = cot_series(1, 5) + csc2_series(1)
    assert s.window_top == 1
    assert s.lowest_order == -2


small = st.fractions(min_value=-50, max_value=50, max_denominator=50)


@given(small, small, small)
def test_field_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + 0 == p and p * 1 == p
    if p:
        assert p * (1 / p) == 1
    assert math.gcd(p.numerator, p.denominator) == 1 and p.denominator > 0


series = st.builds(
    lambda low, coeffs, extra: LaurentSeries(low, tuple(coeffs), low + len(coeffs) - 1 + extra),
    st.integers(-3, 2),
    st.lists(small, min_size=1, max_size=5),
    st.integers(0, 2),
)


@settings(max_examples=200)
@given(series, series, small)
def test_truncation_honesty(a, b, junk):
    prod = series_mul(a, b)
    # perturb a coefficient just past each operand's window: the product's window must not see it
    a_wide = LaurentSeries(a.lowest_order, a.coefficients + (junk,), a.window_top + 1)
    b_wide = LaurentSeries(b.lowest_order, b.coefficients + (junk,), b.window_top + 1)
    wide = series_mul(a_wide, b_wide)
    assert wide.window_top >= prod.window_top
    for k in range(prod.lowest_order, prod.window_top + 1):
        assert wide.coeff(k) == prod.coeff(k)


@settings(max_examples=100)
@given(series, series)
def test_mul_commutes(a, b):
    assert series_mul(a, b) == series_mul(b, a)
