"""From fixed-point data to a diffeomorphism type.

The pipeline runs the structural checks, the two global equations, the
lift checks and the Derdzinski-Rigas bound, then reads (chi, sigma) through
the classification of simply connected 4-manifolds with a circle action.
The fundamental group is not computable from this data, so triviality is
recorded as an assumption on every result.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import constraint_lhs, derdzinski_rigas, euler_characteristic, signature, signature_lhs
from .lifts import circle_lift_connectivity, lift_violations
from .patterns import (
    ActionDescription,
    Arc,
    Circle,
    Pattern,
    StabSphere,
    Violation,
    WeightPair,
    validate_pattern,
)

__all__ = [
    "Classification",
    "ArcResolution",
    "classify_action",
    "diffeo_lookup",
    "three_sphere_circle_sign",
    "arc2_middle_weights_rule",
    "SIMPLY_CONNECTED",
]

SIMPLY_CONNECTED = (
    "pi1 = 1 (assumed: follows from the fixed-point structure of the lifted "
    "action; not computed from the combinatorial data)"
)

S4 = "S4"
CP2BAR = "CP2bar"
INADMISSIBLE = "Inadmissible"


@dataclass
class Classification:
    admissible: bool
    violations: list[Violation]
    euler: int
    sigma: int | None
    b2: int
    diffeo_type: str
    assumptions: list[str] = field(default_factory=lambda: [SIMPLY_CONNECTED])
    flags: list[str] = field(default_factory=list)

    def to_obj(self) -> dict:
        return {
            "admissible": self.admissible,
            "diffeo_type": self.diffeo_type,
            "euler": self.euler,
            "sigma": self.sigma if self.sigma is not None else "non-integral",
            "b2": self.b2,
            "b2_basis": "b2 = euler - 2, valid under the pi1 assumption",
            "assumptions": list(self.assumptions),
            "flags": list(self.flags),
            "violations": [
                {"rule": v.rule, "location": v.location, "detail": v.detail} for v in self.violations
            ],
        }

    def to_text(self) -> str:
        sigma = self.sigma if self.sigma is not None else "non-integral"
        lines = [
            f"diffeo type : {self.diffeo_type}",
            f"admissible  : {'yes' if self.admissible else 'no'}",
            f"euler       : {self.euler}",
            f"signature   : {sigma}",
            f"b2          : {self.b2} (euler - 2, assuming pi1 = 1)",
        ]
        lines += [f"assumption  : {a}" for a in self.assumptions]
        lines += [f"flag        : {f}" for f in self.flags]
        lines += [f"violation   : {v}" for v in self.violations]
        return "\n".join(lines)


def diffeo_lookup(b2: int, sigma: int) -> tuple[str, list[str]]:
    """Connected-sum model for a simply connected 4-manifold with circle action."""
    if b2 == 0 and sigma == 0:
        return S4, []
    if b2 == 1 and sigma == -1:
        return CP2BAR, []
    if b2 == 1 and sigma == 1:
        return "ConnectedSum(CP2)", ["unreachable: no admissible action has sigma = +1"]
    if b2 < 0 or abs(sigma) > b2 or (b2 - sigma) % 2:
        return f"ConnectedSum(none: b2={b2}, sigma={sigma} has no model)", ["no_model"]
    p, q = (b2 + sigma) // 2, (b2 - sigma) // 2
    parts = ([f"{p}CP2"] if p else []) + ([f"{q}CP2bar"] if q else [])
    desc = " # ".join(parts)
    if sigma == 0:
        desc += f" or {b2 // 2}(S2xS2)" if b2 % 2 == 0 else ""
    return f"ConnectedSum({desc})", []


def _circle_sign_problems(action: ActionDescription) -> list[Violation]:
    out = []
    for i, p in enumerate(action.patterns):
        if isinstance(p, Circle) and len(p.spheres) == 3:
            if circle_lift_connectivity(p).closure_sign != -1:
                out.append(Violation("circle_orientation", f"P{i}", "closing intersection sign is +1"))
    return out


def classify_action(action: ActionDescription) -> Classification:
    """Run every admissibility check and map (chi, sigma) to a diffeomorphism type."""
    violations: list[Violation] = []
    structural = False
    for i, p in enumerate(action.patterns):
        v = validate_pattern(p, f"P{i}")
        structural = structural or bool(v)
        violations += v
    if not action.patterns:
        violations.append(Violation("empty", "action", "no fixed points"))
    chi = euler_characteristic(action)
    if structural or not action.patterns:
        # invariants are meaningless (possibly undefined) on malformed data
        return Classification(False, violations, chi, None, chi - 2, INADMISSIBLE)
    lhs = constraint_lhs(action)
    if lhs != 0:
        violations.append(Violation("constraint", "action", f"constraint sum is {lhs}, not 0"))
    three_sigma, sigma = signature(action)
    if sigma is None:
        violations.append(Violation("signature_integrality", "action", f"3 sigma = {three_sigma}"))
    violations += lift_violations(action, require_max=True)
    violations += _circle_sign_problems(action)
    if sigma is not None and not derdzinski_rigas(chi, sigma):
        violations.append(
            Violation("derdzinski_rigas", "action", f"2 chi + 3 sigma = {2 * chi + 3 * sigma} <= 0")
        )
    b2 = chi - 2
    if violations:
        return Classification(False, violations, chi, sigma, b2, INADMISSIBLE)
    diffeo, flags = diffeo_lookup(b2, sigma)
    return Classification(True, [], chi, sigma, b2, diffeo, flags=flags)


def three_sphere_circle_sign(circle: Pattern) -> int:
    """Sign of the closing intersection of a circle of spheres.

    Spheres are oriented one after another so consecutive ones meet
    positively; going once round, the lifted double cover either closes up
    with the weights negated (connected, sign -1) or returns to the start
    (two components, sign +1, inadmissible).  For a 2-circle the sign is
    read off from the signature sum instead.
    """
    if not isinstance(circle, Circle):
        raise TypeError("three_sphere_circle_sign needs a circle of spheres")
    if len(circle.spheres) == 2:
        three_sigma = signature_lhs(ActionDescription((circle,)))
        if three_sigma % 3:
            raise ValueError(f"signature sum {three_sigma} is not divisible by 3")
        s = int(three_sigma / 3)
        return (s > 0) - (s < 0)
    if len(circle.spheres) != 3:
        raise ValueError(f"expected 2 or 3 spheres, got {len(circle.spheres)}")
    return circle_lift_connectivity(circle).closure_sign


# ---------------------------------------------------------------------------
# two-sphere arcs


@dataclass
class ArcResolution:
    a: int
    given_b: int
    branches: dict[str, dict]
    resolved_middle: tuple[int, int] | None
    sigma: int | None
    consistent: bool

    def to_obj(self) -> dict:
        return {
            "a": self.a,
            "given_b": self.given_b,
            "branches": self.branches,
            "resolved_middle": list(self.resolved_middle) if self.resolved_middle else None,
            "sigma": self.sigma,
            "consistent": self.consistent,
        }


def _arc_through(points: list[tuple[int, int]]) -> Arc | str:
    """Arc through the given relative weights, solving each self-intersection."""
    u, v = points[0]
    spheres = []
    prev = WeightPair(*points[0])
    for x, y in points[1:]:
        if abs(x) == abs(v):
            c = (-v // x) * y
        elif abs(y) == abs(v):
            c = (-v // y) * x
        else:
            return f"no entry of ({x},{y}) matches speed {abs(v)}"
        if (u - c) % v:
            return f"self-intersection ({u} - {c})/{v} is not an integer"
        s = (u - c) // v
        nxt = WeightPair(x, y)
        spheres.append(StabSphere(abs(v), s, prev, nxt))
        prev = nxt
        u, v = -v, c
    return Arc(tuple(spheres))


def _branch(a: int, middle: tuple[int, int], b: int, level_condition: bool) -> dict:
    pts = [(1, a), middle, (b, 1)]
    info: dict = {"middle": list(middle), "b": b}
    arc = _arc_through(pts)
    if isinstance(arc, str):
        info.update(feasible=False, reason=arc)
        return info
    info["self_ints"] = [s.self_int for s in arc.spheres]
    problems = validate_pattern(arc) or lift_violations([arc])
    action = ActionDescription((arc,))
    three_sigma = signature_lhs(action)
    info["constraint_lhs"] = str(constraint_lhs(action))
    info["three_sigma"] = str(three_sigma)
    info["feasible"] = level_condition and not problems
    if problems:
        info["reason"] = str(problems[0])
    elif not level_condition:
        info["reason"] = "H at the middle point cannot be +-1"
    return info


def arc2_middle_weights_rule(arc: Pattern) -> ArcResolution:
    """Decide the middle weights of a two-sphere arc with ends (1,a) and (b,1).

    The middle point carries either (a, b) or (-a, b).  The constraint sum
    forces b = 1 - a on the second branch, which then needs |1 - 2a| = 1 and
    so a in {0, 1}; on the first branch it forces b = -1 - a.
    """
    if not isinstance(arc, Arc) or len(arc.spheres) != 2:
        raise ValueError("expected an arc of two spheres")
    problems = validate_pattern(arc)
    if problems:
        raise ValueError(f"invalid arc: {problems[0]}")
    first, last = arc.spheres[0], arc.spheres[1]
    along, free = first.endpoint_lo.entry(first.speed)
    a = along * free
    along, free = last.endpoint_hi.entry(last.speed)
    given_b = along * free

    same_b = -1 - a
    same = _branch(a, (a, same_b), same_b, True)
    opp_b = 1 - a
    opposite = _branch(a, (-a, opp_b), opp_b, abs(1 - 2 * a) == 1)

    resolved = (a, same_b) if same["feasible"] else None
    sigma = None
    if resolved is not None:
        three_sigma = Fraction(same["three_sigma"])
        sigma = int(three_sigma / 3) if three_sigma % 3 == 0 else None
    mid = arc.spheres[0].endpoint_hi
    consistent = resolved is not None and given_b == same_b and mid.matches(WeightPair(*resolved))
    return ArcResolution(a, given_b, {"same": same, "opposite": opposite}, resolved, sigma, consistent)
