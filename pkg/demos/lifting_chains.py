"""Lift chains of spheres to the twistor space and follow the Hamiltonian."""
from __future__ import annotations

from circle_patterns import (
    Arc,
    Circle,
    StabSphere,
    WeightPair,
    build_config,
    check_extrema,
    circle_lift_connectivity,
    hamiltonian_delta,
    lift_fiber,
    propagate_chain,
)
from circle_patterns.lifts import ChainStep, change_of_sign_value

W = WeightPair

# fibres over isolated points: H = +-(a + b), or a fixed fibre when a + b = 0
for w in [(1, 1), (1, -2), (1, -1)]:
    lift = lift_fiber(w)
    print(w, "->", "fixed fibre at H = 0" if lift.fixed else [z.h_value for z in lift.points])

# a lifted sphere of speed m and self-intersection s climbs (2 + s) m
print("H gap, m=3 s=-1:", hamiltonian_delta(3, -1))

# propagate from an end (1,-m) across a sphere with s = -1
for m in (2, 3, 5):
    pts = propagate_chain((1, -m), [(m, -1)])
    print(f"m={m}:", [(z.h_weights, z.h_value) for z in pts])

# the two-sphere arc through (1,2), (2,-3), (3,-1); self-intersections solved from the weights
pts = propagate_chain((1, 2), [ChainStep(2, companion=3), ChainStep(3, companion=1)])
print("arc H values:", [z.h_value for z in pts])

arc = Arc((StabSphere(2, -1, W(1, 2), W(2, -3)), StabSphere(3, -1, W(2, -3), W(3, -1))))
ext = check_extrema(build_config([arc]))
print("arc maxima", ext.maxima, "at", ext.max_value, "minima", ext.minima, "at", ext.min_value)

# circles: one pass around either lands on the other lift (connected) or on the start
good = Circle(
    (
        StabSphere(2, -1, W(3, 2), W(2, -5)),
        StabSphere(5, -1, W(2, -5), W(5, -3)),
        StabSphere(3, -1, W(5, -3), W(3, 2)),
    )
)
split = Circle(
    (
        StabSphere(2, 0, W(3, 2), W(2, 5)),
        StabSphere(5, 0, W(2, 5), W(5, -3)),
        StabSphere(3, 0, W(5, -3), W(3, 2)),
    )
)
for name, c in (("(2,5,3) circle", good), ("mis-signed circle", split)):
    rep = circle_lift_connectivity(c)
    print(name, "components:", rep.components, "cycle:", rep.cycle)

# descending two steps from a non-negative level always lands below zero
print("H(z3) samples:", [change_of_sign_value(m1, m2, s) for m1, m2, s in [(2, 3, -1), (2, 3, 0), (7, 11, 3)]])
