"""Fixed-point patterns of circle actions on 4-manifolds with definite connections.

Exact invariants of fixed-point data, the Hamiltonian lift to the twistor
space, and a bounded search that rebuilds the classification.
"""
from __future__ import annotations

from .classify import Classification, arc2_middle_weights_rule, classify_action, three_sphere_circle_sign
from .enumeration import (
    EnumerationResult,
    SearchBounds,
    enumerate_actions,
    enumerate_arcs,
    enumerate_circles,
    infeasibility_oracle,
)
from .exact import LaurentSeries, bernoulli, cot_series, csc2_series, rat, series_mul
from .invariants import (
    constraint_lhs,
    derdzinski_rigas,
    euler_characteristic,
    invariant_report,
    q_value,
    signature,
    signature_lhs,
    signature_series,
    verify_expansion,
)
from .lifts import (
    build_config,
    check_archimedes,
    check_extrema,
    circle_lift_connectivity,
    hamiltonian_delta,
    lift_fiber,
    propagate_chain,
)
from .patterns import (
    ActionDescription,
    Arc,
    Circle,
    FixedSurface,
    IsolatedPoint,
    StabSphere,
    WeightPair,
    canonical_form,
    canonicalize_weights,
    parse_action,
    serialize_action,
    validate_pattern,
)

__version__ = "0.1.0"
