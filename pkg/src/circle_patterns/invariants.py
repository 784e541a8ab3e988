"""Global invariants read off from the fixed-point data of an action."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exact import LaurentSeries, cot_series, csc2_series, series_mul
from .patterns import ActionDescription, FixedSurface, Pattern, fixed_points

__all__ = [
    "InvariantReport",
    "ExpansionCheck",
    "constraint_lhs",
    "signature_lhs",
    "signature",
    "euler_characteristic",
    "q_value",
    "derdzinski_rigas",
    "signature_series",
    "verify_expansion",
    "invariant_report",
    "rational_to_obj",
]


def _isolated_weights(action: ActionDescription):
    for p in action.patterns:
        yield from fixed_points(p)


def _surfaces(action: ActionDescription):
    return [p for p in action.patterns if isinstance(p, FixedSurface)]


def constraint_lhs(action: ActionDescription) -> Fraction:
    """-sum 1/(a b) over isolated fixed points + sum of fixed-surface self-intersections."""
    total = Fraction(0)
    for w in _isolated_weights(action):
        total -= Fraction(1, w.a * w.b)
    for s in _surfaces(action):
        total += s.self_int
    return total


def signature_lhs(action: ActionDescription) -> Fraction:
    """sum (a^2 + b^2)/(a b) + sum of fixed-surface self-intersections; equals 3 sigma."""
    total = Fraction(0)
    for w in _isolated_weights(action):
        total += Fraction(w.a * w.a + w.b * w.b, w.a * w.b)
    for s in _surfaces(action):
        total += s.self_int
    return total


def signature(action: ActionDescription) -> tuple[Fraction, int | None]:
    """Return (three_sigma, sigma); sigma is None when three_sigma/3 is not an integer."""
    three_sigma = signature_lhs(action)
    if three_sigma.denominator == 1 and three_sigma.numerator % 3 == 0:
        return three_sigma, three_sigma.numerator // 3
    return three_sigma, None


def euler_characteristic(action: ActionDescription) -> int:
    chi = 0
    for p in action.patterns:
        if isinstance(p, FixedSurface):
            chi += 2 - 2 * p.genus
        else:
            chi += len(fixed_points(p))
    return chi


def q_value(p: Pattern) -> Fraction:
    """Contribution of a pattern of isolated fixed points to ``constraint_lhs``.

    Sign convention: q = -sum 1/(a b), so a (1,-1) point has q = 1 and a
    (1,1) point has q = -1.
    """
    if isinstance(p, FixedSurface):
        raise ValueError("q_value is defined only for patterns of isolated fixed points")
    return -sum((Fraction(1, w.a * w.b) for w in fixed_points(p)), Fraction(0))


def derdzinski_rigas(euler: int, sigma: int) -> bool:
    """Obstruction for definite connections: 2 chi + 3 sigma > 0."""
    return 2 * euler + 3 * sigma > 0


def signature_series(action: ActionDescription, window_top: int = 2) -> LaurentSeries:
    """Right-hand side of the equivariant signature formula as a series in x = pi t.

    -sum_j cot(a_j x) cot(b_j x) + sum_k s_k csc(x)^2
    """
    if window_top < 0:
        raise ValueError("window_top must be >= 0")
    total = LaurentSeries.zero(window_top, lowest_order=-2)
    cache: dict[int, LaurentSeries] = {}

    def cot(k: int) -> LaurentSeries:
        if k not in cache:
            cache[k] = cot_series(k, window_top + 1)
        return cache[k]

    for w in _isolated_weights(action):
        total = total - series_mul(cot(w.a), cot(w.b))
    surfaces = _surfaces(action)
    if surfaces:
        csc2 = csc2_series(window_top)
        for s in surfaces:
            total = total + csc2.scale(s.self_int)
    return total


@dataclass(frozen=True)
class ExpansionCheck:
    """Coefficients of the signature series against the closed-form sums."""

    pole_coeff: Fraction
    constraint: Fraction
    constant_coeff: Fraction
    three_sigma: Fraction

    @property
    def pole_matches(self) -> bool:
        return self.pole_coeff == self.constraint

    @property
    def constant_matches(self) -> bool:
        return 3 * self.constant_coeff == self.three_sigma

    @property
    def ok(self) -> bool:
        return self.pole_matches and self.constant_matches

    def to_obj(self) -> dict:
        return {
            "pole_coeff": rational_to_obj(self.pole_coeff),
            "constraint_lhs": rational_to_obj(self.constraint),
            "pole_matches": self.pole_matches,
            "constant_coeff": rational_to_obj(self.constant_coeff),
            "three_sigma": rational_to_obj(self.three_sigma),
            "constant_matches": self.constant_matches,
        }


def verify_expansion(action: ActionDescription, window_top: int = 2) -> ExpansionCheck:
    """Compare the x^-2 and x^0 coefficients with the two closed-form sums.

    The x^-2 coefficient must equal ``constraint_lhs`` and three times the
    constant term must equal ``signature_lhs``.  Mismatches are reported in
    the returned object, never raised.
    """
    series = signature_series(action, window_top)
    return ExpansionCheck(
        pole_coeff=series.coeff(-2),
        constraint=constraint_lhs(action),
        constant_coeff=series.coeff(0),
        three_sigma=signature_lhs(action),
    )


def rational_to_obj(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


@dataclass(frozen=True)
class InvariantReport:
    constraint_lhs: Fraction
    three_sigma: Fraction
    sigma: int | None
    euler: int
    derdzinski_rigas_ok: bool
    q_by_pattern: list[tuple[int, Fraction]] = field(default_factory=list)

    def to_obj(self) -> dict:
        return {
            "constraint_lhs": rational_to_obj(self.constraint_lhs),
            "three_sigma": rational_to_obj(self.three_sigma),
            "sigma": self.sigma if self.sigma is not None else "non-integral",
            "euler": self.euler,
            "derdzinski_rigas_ok": self.derdzinski_rigas_ok,
            "q_by_pattern": [
                {"pattern": i, "q": rational_to_obj(q)} for i, q in self.q_by_pattern
            ],
        }


def invariant_report(action: ActionDescription) -> InvariantReport:
    three_sigma, sigma = signature(action)
    chi = euler_characteristic(action)
    return InvariantReport(
        constraint_lhs=constraint_lhs(action),
        three_sigma=three_sigma,
        sigma=sigma,
        euler=chi,
        derdzinski_rigas_ok=sigma is not None and derdzinski_rigas(chi, sigma),
        q_by_pattern=[
            (i, q_value(p)) for i, p in enumerate(action.patterns) if not isinstance(p, FixedSurface)
        ],
    )
