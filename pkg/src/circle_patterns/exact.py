"""Exact rationals and finite-window Laurent series.

Series are in the variable x = pi*t, so the trigonometric expansions used by
the equivariant signature formula have rational coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

__all__ = [
    "rat",
    "bernoulli",
    "LaurentSeries",
    "cot_series",
    "csc2_series",
    "series_mul",
]

Rational = Fraction


def rat(num: int, den: int = 1) -> Fraction:
    """Reduced rational num/den with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("rat: zero denominator")
    return Fraction(num, den)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, B_0 = 1
    table = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum((comb(m + 1, k) * table[k] for k in range(m)), Fraction(0))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """n-th Bernoulli number, convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli: n must be >= 0")
    return _bernoulli_table(n)[n]


@dataclass(frozen=True)
class LaurentSeries:
    """Truncated Laurent series sum_i c_i x^(lowest_order + i).

    Coefficients of orders above ``window_top`` are unknown, not zero.
    """

    lowest_order: int
    coefficients: tuple[Fraction, ...]
    window_top: int

    def __post_init__(self) -> None:
        if self.window_top < self.lowest_order - 1:
            raise ValueError("window_top below lowest_order")
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        keep = self.window_top - self.lowest_order + 1
        coeffs = coeffs[:keep] + (Fraction(0),) * (keep - len(coeffs))
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def zero(cls, window_top: int, lowest_order: int = 0) -> "LaurentSeries":
        return cls(lowest_order, (), window_top)

    @classmethod
    def monomial(cls, order: int, coeff=1, window_top: int | None = None) -> "LaurentSeries":
        top = order if window_top is None else window_top
        return cls(order, (Fraction(coeff),), top)

    def coeff(self, order: int) -> Fraction:
        if order > self.window_top:
            raise ValueError(f"order {order} lies beyond the window (top {self.window_top})")
        i = order - self.lowest_order
        if i < 0:
            return Fraction(0)
        return self.coefficients[i]

    def terms(self) -> dict[int, Fraction]:
        """Nonzero coefficients keyed by order."""
        return {
            self.lowest_order + i: c for i, c in enumerate(self.coefficients) if c != 0
        }

    def truncate(self, window_top: int) -> "LaurentSeries":
        if window_top > self.window_top:
            raise ValueError("cannot widen a truncated series")
        return LaurentSeries(self.lowest_order, self.coefficients, window_top)

    def __neg__(self) -> "LaurentSeries":
        return LaurentSeries(self.lowest_order, tuple(-c for c in self.coefficients), self.window_top)

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        top = min(self.window_top, other.window_top)
        low = min(self.lowest_order, other.lowest_order)
        coeffs = [self.coeff(k) + other.coeff(k) for k in range(low, top + 1)]
        return LaurentSeries(low, tuple(coeffs), top)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + (-other)

    def scale(self, factor) -> "LaurentSeries":
        f = Fraction(factor)
        return LaurentSeries(self.lowest_order, tuple(f * c for c in self.coefficients), self.window_top)

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return series_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def derivative(self) -> "LaurentSeries":
        coeffs = [
            (self.lowest_order + i) * c for i, c in enumerate(self.coefficients)
        ]
        return LaurentSeries(self.lowest_order - 1, tuple(coeffs), self.window_top - 1)

    def evaluate(self, x) -> Fraction:
        """Value of the truncated sum at a rational point."""
        x = Fraction(x)
        return sum(
            (c * x ** (self.lowest_order + i) for i, c in enumerate(self.coefficients) if c),
            Fraction(0),
        )


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Cauchy product, truncated where either factor stops being known."""
    low = a.lowest_order + b.lowest_order
    top = min(a.window_top + b.lowest_order, b.window_top + a.lowest_order)
    n = top - low + 1
    if n <= 0:
        return LaurentSeries(low, (), top)
    out = [Fraction(0)] * n
    for i, ca in enumerate(a.coefficients):
        if not ca or i >= n:
            continue
        for j, cb in enumerate(b.coefficients):
            if i + j >= n:
                break
            if cb:
                out[i + j] += ca * cb
    return LaurentSeries(low, tuple(out), top)


def cot_series(speed: int, window_top: int) -> LaurentSeries:
    """Laurent expansion of cot(speed * x) about 0 through ``window_top``."""
    if speed == 0:
        raise ValueError("cot_series: speed must be nonzero")
    if window_top < -1:
        raise ValueError("cot_series: window_top must be >= -1")
    coeffs: list[Fraction] = []
    for order in range(-1, window_top + 1):
        if order % 2 == 0:
            coeffs.append(Fraction(0))
            continue
        n = (order + 1) // 2
        c = (-1) ** n * 4**n * bernoulli(2 * n) / factorial(2 * n)
        coeffs.append(c * Fraction(speed) ** order)
    return LaurentSeries(-1, tuple(coeffs), window_top)


def csc2_series(window_top: int) -> LaurentSeries:
    """Laurent expansion of 1/sin(x)^2 = -d/dx cot(x) through ``window_top``."""
    if window_top < -2:
        raise ValueError("csc2_series: window_top must be >= -2")
    return -cot_series(1, window_top + 1).derivative()
