"""Walk through the equivariant signature expansion on a few fixed-point sets."""
from __future__ import annotations

from circle_patterns import (
    ActionDescription,
    Arc,
    FixedSurface,
    IsolatedPoint,
    StabSphere,
    WeightPair,
    constraint_lhs,
    cot_series,
    csc2_series,
    signature,
    signature_series,
    verify_expansion,
)

# cot(m x) about 0, in the variable x = pi t so every coefficient is rational
for m in (1, 2, 3):
    print(f"cot({m}x) =", cot_series(m, 3).terms())
print("csc^2(x) =", csc2_series(2).terms())

W = WeightPair
sphere = Arc((StabSphere(2, -1, W(1, -2), W(1, -2)),))  # speed-2 sphere, both ends (1,-2)
examples = {
    "two points": ActionDescription((IsolatedPoint(W(1, 1)), IsolatedPoint(W(1, -1)))),
    "point + sphere": ActionDescription((IsolatedPoint(W(1, 1)), sphere)),
    "fixed sphere + point": ActionDescription((FixedSurface(0, -1), IsolatedPoint(W(1, -1)))),
    "two maxima": ActionDescription((IsolatedPoint(W(1, 1)), IsolatedPoint(W(1, 1)))),
}

for name, action in examples.items():
    series = signature_series(action, window_top=4)
    chk = verify_expansion(action)
    three_sigma, sigma = signature(action)
    print(f"\n{name}")
    print("  series terms      :", series.terms())  # constant series <=> the x^-2 term vanishes
    print("  constraint sum    :", constraint_lhs(action), " pole coeff:", chk.pole_coeff)
    print("  3 sigma           :", three_sigma, " sigma:", sigma if sigma is not None else "non-integral")
    print("  coefficients agree:", chk.ok)
