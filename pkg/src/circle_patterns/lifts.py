"""Lifting fixed-point data to the sphere bundle Z and tracking the Hamiltonian.

Upstairs every fixed point carries genuine signed weights: two horizontal
weights (a, b), which agree up to sign with the relative weights below, and
the vertical weight a + b.  The normalised Hamiltonian satisfies H = a + b
at isolated fixed points and H(gamma z) = -H(z).

Along a lifted stabilised sphere of speed m and self-intersection s the
weight tangent to the sphere is +m at one pole and -m at the other; H is
larger at the +m pole by exactly (2 + s) m.  Written for a chain of
lifted spheres with weights (u_i, v_i) at the i-th point (u toward the
previous sphere, v toward the next) this becomes

    u_{i+1} = -v_i,    v_{i+1} = u_i - s_{i+1} v_i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .patterns import (
    ActionDescription,
    Arc,
    Circle,
    FixedSurface,
    IsolatedPoint,
    Pattern,
    Violation,
    WeightPair,
    chain_pairs,
)

__all__ = [
    "LiftedFixedPoint",
    "LiftedSphere",
    "FixedFiber",
    "LiftedSurface",
    "LiftedConfig",
    "FiberLift",
    "ChainStep",
    "ChainInfeasible",
    "ExtremaReport",
    "ConnectivityReport",
    "lift_fiber",
    "hamiltonian_delta",
    "propagate_chain",
    "chain_step",
    "build_config",
    "check_archimedes",
    "check_extrema",
    "circle_lift_connectivity",
    "change_of_sign_value",
    "lift_violations",
    "config_to_obj",
]


@dataclass(frozen=True)
class LiftedFixedPoint:
    id: str
    below: str
    h_weights: tuple[int, int]
    v_weight: int
    h_value: int

    @property
    def is_local_max(self) -> bool:
        return self.h_weights[0] > 0 and self.h_weights[1] > 0 and self.v_weight > 0

    @property
    def is_local_min(self) -> bool:
        return self.h_weights[0] < 0 and self.h_weights[1] < 0 and self.v_weight < 0


def _point(id_: str, below: str, a: int, b: int) -> LiftedFixedPoint:
    return LiftedFixedPoint(id_, below, (a, b), a + b, a + b)


@dataclass(frozen=True)
class LiftedSphere:
    """An invariant 2-sphere in Z.

    ``tangent_weights`` holds the weight along the sphere at each endpoint;
    they are negatives of each other.  ``kind`` is "stabilised" for lifts of
    spheres in the 4-manifold and "fiber" for rotated fibres of Z -> M.
    """

    endpoints: tuple[str, str]
    speed: int
    self_int: int
    area_units: int
    tangent_weights: tuple[int, int]
    kind: str = "stabilised"


@dataclass(frozen=True)
class FixedFiber:
    """A fibre of Z -> M fixed pointwise (over a (1,-1) point); saddles at H = 0."""

    below: str
    h_weights: tuple[int, int] = (1, -1)
    v_weight: int = 0
    h_value: int = 0


@dataclass(frozen=True)
class LiftedSurface:
    """One of the two lifts of a fixed surface; H is constant, +1 or -1."""

    id: str
    below: str
    genus: int
    self_int: int
    h_value: int


@dataclass(frozen=True)
class FiberLift:
    fixed: bool
    points: tuple[LiftedFixedPoint, ...] = ()
    fiber: FixedFiber | None = None
    sphere: LiftedSphere | None = None


@dataclass
class LiftedConfig:
    points: dict[str, LiftedFixedPoint] = field(default_factory=dict)
    spheres: list[LiftedSphere] = field(default_factory=list)
    fixed_fibers: list[FixedFiber] = field(default_factory=list)
    surfaces: list[LiftedSurface] = field(default_factory=list)
    gamma: dict[str, str] = field(default_factory=dict)

    def add_pair(self, z: LiftedFixedPoint, gz: LiftedFixedPoint) -> None:
        self.points[z.id] = z
        self.points[gz.id] = gz
        self.gamma[z.id] = gz.id
        self.gamma[gz.id] = z.id

    def negated(self) -> "LiftedConfig":
        """Image under the global sign flip of all weights."""
        out = LiftedConfig()
        for z in self.points.values():
            a, b = z.h_weights
            out.points[z.id] = _point(z.id, z.below, -a, -b)
        out.gamma = dict(self.gamma)
        out.fixed_fibers = list(self.fixed_fibers)
        out.spheres = [
            LiftedSphere(s.endpoints, s.speed, s.self_int, s.area_units,
                         (-s.tangent_weights[0], -s.tangent_weights[1]), s.kind)
            for s in self.spheres
        ]
        out.surfaces = [
            LiftedSurface(f.id, f.below, f.genus, f.self_int, -f.h_value) for f in self.surfaces
        ]
        return out


class ChainInfeasible(ValueError):
    """A chain of lifted spheres cannot close up with integral data."""

    def __init__(self, step: int, equation: str, detail: str = ""):
        self.step = step
        self.equation = equation
        msg = f"step {step}: {equation}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


def hamiltonian_delta(speed: int, self_int: int) -> int:
    """|H(z0) - H(z1)| across a lifted sphere rotated ``speed`` times."""
    if speed < 1:
        raise ValueError("speed must be >= 1")
    if 2 + self_int <= 0:
        raise ValueError(
            f"self-intersection {self_int} gives non-positive lifted area; no such sphere exists"
        )
    return (2 + self_int) * speed


def lift_fiber(w: WeightPair | tuple[int, int], sign_choice: int = 1, label: str = "p") -> FiberLift:
    """Fixed points of the fibre over a fixed point with relative weights ``w``."""
    if sign_choice not in (1, -1):
        raise ValueError("sign_choice must be +1 or -1")
    a, b = w
    a, b = sign_choice * a, sign_choice * b
    if a + b == 0:
        return FiberLift(fixed=True, fiber=FixedFiber(label))
    z = _point(f"{label}+", label, a, b)
    gz = _point(f"{label}-", label, -a, -b)
    speed = abs(a + b)
    sphere = LiftedSphere((z.id, gz.id), speed, 0, 2, (a + b, -(a + b)), kind="fiber")
    return FiberLift(fixed=False, points=(z, gz), sphere=sphere)


@dataclass(frozen=True)
class ChainStep:
    """One sphere of a chain; supply the self-intersection, the companion weight, or both."""

    speed: int
    self_int: int | None = None
    companion: int | None = None


def chain_step(u: int, v: int, s: int) -> tuple[int, int]:
    """Weights at the next point of a lifted chain."""
    return -v, u - s * v


def propagate_chain(
    start: tuple[int, int],
    spheres: Sequence[ChainStep | tuple],
    label: str = "z",
) -> list[LiftedFixedPoint]:
    """Walk a chain of lifted spheres from signed horizontal weights ``start``.

    Weights in the returned points are ordered (toward previous sphere,
    toward next sphere); the start point keeps its free entry first.
    """
    steps = [s if isinstance(s, ChainStep) else ChainStep(*s) for s in spheres]
    if not steps:
        a, b = start
        return [_point(f"{label}0", f"{label}0", a, b)]
    m0 = steps[0].speed
    a, b = start
    if abs(b) == m0 and abs(a) != m0:
        u, v = a, b
    elif abs(a) == m0 and abs(b) != m0:
        u, v = b, a
    else:
        raise ChainInfeasible(0, "start weights must contain the first speed exactly once", f"{start}")
    out = [_point(f"{label}0", f"{label}0", u, v)]
    for i, step in enumerate(steps, start=1):
        if step.speed < 1:
            raise ChainInfeasible(i, "speed >= 1", f"speed {step.speed}")
        if abs(v) != step.speed:
            raise ChainInfeasible(i, "|v| = speed", f"weight {v} along a sphere of speed {step.speed}")
        s, c = step.self_int, step.companion
        if s is None and c is None:
            raise ChainInfeasible(i, "need self_int or companion")
        if s is None:
            if (u - c) % v:
                raise ChainInfeasible(i, "s = (u - c) / v", f"{u} - {c} not divisible by {v}")
            s = (u - c) // v
        solved = u - s * v
        if c is not None and c != solved:
            raise ChainInfeasible(i, "c = u - s v", f"supplied {c}, forced {solved}")
        if 2 + s <= 0:
            raise ChainInfeasible(i, "2 + s > 0", f"s = {s}")
        if solved == 0:
            raise ChainInfeasible(i, "c != 0", "companion weight vanishes")
        u, v = -v, solved
        if gcd(u, v) != 1:
            raise ChainInfeasible(i, "gcd(u, v) = 1", f"({u}, {v})")
        out.append(_point(f"{label}{i}", f"{label}{i}", u, v))
    return out


# ---------------------------------------------------------------------------
# configurations


def _add_chain(cfg: LiftedConfig, pattern: Arc | Circle, tag: str) -> None:
    pairs = chain_pairs(pattern)
    n_pts = len(pairs) if isinstance(pattern, Arc) else len(pattern.spheres)
    for k in range(n_pts):
        a, b = pairs[k]
        below = f"{tag}.{k}"
        lift = lift_fiber((a, b), 1, below)
        cfg.add_pair(*lift.points)
        cfg.spheres.append(lift.sphere)
    n = len(pattern.spheres)
    for i, sph in enumerate(pattern.spheres):
        j = i + 1 if isinstance(pattern, Arc) else (i + 1) % n
        out_entry = pairs[i][1]
        in_entry = pairs[j][0]
        for sign in (1, -1):
            start = f"{tag}.{i}{'+' if sign == 1 else '-'}"
            w0 = sign * out_entry
            # the far pole carries -w0 along the sphere
            far_sign = 1 if in_entry == -w0 else -1
            end = f"{tag}.{j}{'+' if far_sign == 1 else '-'}"
            cfg.spheres.append(
                LiftedSphere((start, end), sph.speed, sph.self_int, 2 + sph.self_int, (w0, -w0))
            )


def build_config(action: ActionDescription | Iterable[Pattern]) -> LiftedConfig:
    """Fixed points, invariant spheres and fixed loci of Z over the given patterns."""
    patterns = action.patterns if isinstance(action, ActionDescription) else tuple(action)
    cfg = LiftedConfig()
    for idx, p in enumerate(patterns):
        tag = f"P{idx}"
        if isinstance(p, IsolatedPoint):
            lift = lift_fiber(p.weights, 1, tag)
            if lift.fixed:
                cfg.fixed_fibers.append(lift.fiber)
            else:
                cfg.add_pair(*lift.points)
                cfg.spheres.append(lift.sphere)
        elif isinstance(p, (Arc, Circle)):
            _add_chain(cfg, p, tag)
        elif isinstance(p, FixedSurface):
            cfg.surfaces.append(LiftedSurface(f"{tag}+", tag, p.genus, p.self_int, 1))
            cfg.surfaces.append(LiftedSurface(f"{tag}-", tag, p.genus, p.self_int, -1))
    return cfg


def check_archimedes(cfg: LiftedConfig) -> list[Violation]:
    """Every lifted sphere must have H gap (2+s)*speed, higher at its +speed pole."""
    out = []
    for sph in cfg.spheres:
        z0, z1 = (cfg.points[e] for e in sph.endpoints)
        where = f"{sph.endpoints[0]}~{sph.endpoints[1]}"
        if sph.area_units <= 0:
            out.append(Violation("adjunction", where, f"lifted area 2+s = {sph.area_units} <= 0"))
            continue
        top, bottom = (z0, z1) if sph.tangent_weights[0] > 0 else (z1, z0)
        gap = top.h_value - bottom.h_value
        if gap != sph.area_units * sph.speed:
            out.append(
                Violation(
                    "archimedes",
                    where,
                    f"H gap {gap} but (2+s)*m = {sph.area_units * sph.speed}",
                )
            )
    return out


@dataclass
class ExtremaReport:
    maxima: list[str]
    minima: list[str]
    saddles: list[str]
    max_value: int | None
    min_value: int | None
    violations: list[Violation]

    @property
    def passes(self) -> bool:
        return not self.violations

    @property
    def has_max(self) -> bool:
        return bool(self.maxima)


def check_extrema(cfg: LiftedConfig) -> ExtremaReport:
    """Uniqueness of the extremal loci of H and strictness of the extreme levels."""
    maxima: list[tuple[str, int]] = []
    minima: list[tuple[str, int]] = []
    saddles: list[str] = []
    violations: list[Violation] = []
    for z in cfg.points.values():
        a, b = z.h_weights
        if (a > 0) == (b > 0) and z.v_weight * a <= 0:
            violations.append(Violation("vertical_weight", z.id, "same-sign horizontal weights need same-sign vertical"))
        if z.is_local_max:
            maxima.append((z.id, z.h_value))
        elif z.is_local_min:
            minima.append((z.id, z.h_value))
        else:
            saddles.append(z.id)
    for f in cfg.surfaces:
        (maxima if f.h_value > 0 else minima).append((f.id, f.h_value))

    if len(maxima) > 1:
        violations.append(Violation("extremum", "max", f"{len(maxima)} local maxima: {[m for m, _ in maxima]}"))
    if len(minima) > 1:
        violations.append(Violation("extremum", "min", f"{len(minima)} local minima: {[m for m, _ in minima]}"))
    if len(maxima) == 1 and len(minima) == 1:
        mx, mn = maxima[0][0], minima[0][0]
        partner = cfg.gamma.get(mx)
        if partner is None and mx.endswith("+"):
            partner = mx[:-1] + "-"
        if partner != mn:
            violations.append(Violation("extremum", "pair", f"{mx} and {mn} are not gamma-partners"))

    levels = [(z.id, z.h_value) for z in cfg.points.values()]
    levels += [(f"fiber:{f.below}", f.h_value) for f in cfg.fixed_fibers]
    levels += [(f.id, f.h_value) for f in cfg.surfaces]
    max_value = maxima[0][1] if len(maxima) == 1 else None
    min_value = minima[0][1] if len(minima) == 1 else None
    if max_value is not None:
        top_id = maxima[0][0]
        for zid, h in levels:
            if zid != top_id and h >= max_value:
                violations.append(Violation("level", zid, f"H = {h} reaches the maximum level {max_value}"))
    if min_value is not None:
        bot_id = minima[0][0]
        for zid, h in levels:
            if zid != bot_id and h <= min_value:
                violations.append(Violation("level", zid, f"H = {h} reaches the minimum level {min_value}"))
    return ExtremaReport(
        [m for m, _ in maxima], [m for m, _ in minima], saddles, max_value, min_value, violations
    )


@dataclass
class ConnectivityReport:
    components: int
    closure_sign: int
    cycle: list[tuple[int, int]]

    @property
    def connected(self) -> bool:
        return self.components == 1


def circle_lift_connectivity(circle: Circle) -> ConnectivityReport:
    """Follow lifted spheres once around the circle and see which lift we return to.

    Returning to the negated starting weights means the lifts form one
    connected double cover; returning to the same weights means two
    components.
    """
    if not isinstance(circle, Circle):
        raise TypeError("circle_lift_connectivity needs a Circle")
    pairs = chain_pairs(circle)
    n = len(pairs)
    rep = pairs[0]
    cycle = [rep]
    for i in range(1, n + 1):
        nxt = pairs[i % n]
        sign = 1 if nxt[0] == -rep[1] else -1
        rep = (sign * nxt[0], sign * nxt[1])
        cycle.append(rep)
    closure = 1 if rep == pairs[0] else -1
    return ConnectivityReport(2 if closure == 1 else 1, closure, cycle)


def change_of_sign_value(m1: int, m2: int, s: int) -> int:
    """H at the third point after a descent from a non-negative second point."""
    return -m1 - (s + 1) * m2


def lift_violations(
    patterns: Iterable[Pattern] | ActionDescription,
    require_max: bool = False,
) -> list[Violation]:
    """Primitive Hamiltonian constraints: areas, H gaps, extremal uniqueness."""
    patterns = tuple(patterns.patterns if isinstance(patterns, ActionDescription) else patterns)
    out: list[Violation] = []
    for idx, p in enumerate(patterns):
        if isinstance(p, FixedSurface) and 2 - 2 * p.genus + p.self_int <= 0:
            out.append(
                Violation("adjunction", f"P{idx}", f"chi + self-intersection = {2 - 2 * p.genus + p.self_int} <= 0")
            )
        if isinstance(p, Circle):
            conn = circle_lift_connectivity(p)
            if not conn.connected:
                out.append(Violation("circle_connectivity", f"P{idx}", "lifts form two components"))
    cfg = build_config(patterns)
    out += check_archimedes(cfg)
    ext = check_extrema(cfg)
    out += ext.violations
    if require_max and not ext.has_max:
        out.append(Violation("no_maximum", "action", "H attains no maximum over these patterns"))
    return out


def config_to_obj(cfg: LiftedConfig) -> dict:
    return {
        "points": [
            {"id": z.id, "below": z.below, "weights": list(z.h_weights), "vertical": z.v_weight, "H": z.h_value}
            for z in cfg.points.values()
        ],
        "spheres": [
            {
                "endpoints": list(s.endpoints),
                "speed": s.speed,
                "self_int": s.self_int,
                "area_units": s.area_units,
                "kind": s.kind,
            }
            for s in cfg.spheres
        ],
        "fixed_fibers": [{"below": f.below, "H": 0} for f in cfg.fixed_fibers],
        "surfaces": [
            {"id": f.id, "genus": f.genus, "self_int": f.self_int, "H": f.h_value} for f in cfg.surfaces
        ],
    }
