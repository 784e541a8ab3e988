"""Fixed-point patterns of a circle action on a 4-manifold.

A pattern is one connected component of the set of points with nontrivial
stabiliser: an isolated fixed point, an arc or circle of stabilised
2-spheres, or a surface fixed pointwise.  Each fixed point carries its
relative weights, which are only defined up to a common sign.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Union

__all__ = [
    "WeightPair",
    "StabSphere",
    "IsolatedPoint",
    "Arc",
    "Circle",
    "FixedSurface",
    "Pattern",
    "ActionDescription",
    "Violation",
    "CoprimalityError",
    "ParseError",
    "ActionValidationError",
    "canonicalize_weights",
    "validate_pattern",
    "canonical_form",
    "pattern_key",
    "fixed_points",
    "chain_pairs",
    "parse_action",
    "serialize_action",
    "action_to_obj",
    "pattern_to_obj",
    "pattern_from_obj",
]


class CoprimalityError(ValueError):
    """Relative weights share a factor, so the action cannot be faithful."""

    def __init__(self, a: int, b: int):
        self.gcd = gcd(a, b)
        super().__init__(f"relative weights ({a}, {b}) are not coprime (gcd {self.gcd})")


class ParseError(ValueError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class ActionValidationError(ValueError):
    def __init__(self, violations: list["Violation"]):
        self.violations = violations
        lines = "; ".join(str(v) for v in violations)
        super().__init__(f"invalid action: {lines}")


@dataclass(frozen=True, order=True)
class WeightPair:
    """Relative weights (a, b), stored with the first nonzero entry positive.

    Construction only normalises the sign; coprimality is enforced by
    :func:`canonicalize_weights` and reported by :func:`validate_pattern`.
    """

    a: int
    b: int

    def __post_init__(self) -> None:
        a, b = int(self.a), int(self.b)
        if a < 0 or (a == 0 and b < 0):
            a, b = -a, -b
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __iter__(self):
        yield self.a
        yield self.b

    @property
    def same_sign(self) -> bool:
        return self.a * self.b > 0

    def swapped(self) -> "WeightPair":
        return WeightPair(self.b, self.a)

    def matches(self, other: "WeightPair") -> bool:
        """True if both describe the same tangent representation."""
        return self == other or self == other.swapped()

    def entry(self, speed: int) -> tuple[int, int]:
        """Split into (entry of modulus ``speed``, the other entry)."""
        if abs(self.a) == speed and abs(self.b) != speed:
            return self.a, self.b
        if abs(self.b) == speed and abs(self.a) != speed:
            return self.b, self.a
        raise ValueError(f"{tuple(self)} has no unique entry of modulus {speed}")

    def __repr__(self) -> str:
        return f"WeightPair({self.a}, {self.b})"


def canonicalize_weights(a: int, b: int) -> WeightPair:
    """Strict constructor: rejects (0, 0) and non-coprime pairs."""
    if a == 0 and b == 0:
        raise ValueError("relative weights cannot both be zero")
    if gcd(a, b) != 1:
        raise CoprimalityError(a, b)
    return WeightPair(a, b)


@dataclass(frozen=True)
class StabSphere:
    """A 2-sphere whose generic points have stabiliser Z_speed."""

    speed: int
    self_int: int
    endpoint_lo: WeightPair
    endpoint_hi: WeightPair


@dataclass(frozen=True)
class IsolatedPoint:
    weights: WeightPair


@dataclass(frozen=True)
class Arc:
    spheres: tuple[StabSphere, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "spheres", tuple(self.spheres))


@dataclass(frozen=True)
class Circle:
    spheres: tuple[StabSphere, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "spheres", tuple(self.spheres))


@dataclass(frozen=True)
class FixedSurface:
    genus: int
    self_int: int


Pattern = Union[IsolatedPoint, Arc, Circle, FixedSurface]


@dataclass(frozen=True)
class ActionDescription:
    patterns: tuple[Pattern, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "patterns", tuple(self.patterns))

    def __len__(self) -> int:
        return len(self.patterns)

    def __iter__(self):
        return iter(self.patterns)

    def sorted(self) -> "ActionDescription":
        return ActionDescription(tuple(sorted(self.patterns, key=pattern_key)))

    def same_multiset(self, other: "ActionDescription") -> bool:
        mine = sorted(pattern_key(canonical_form(p)) for p in self.patterns)
        theirs = sorted(pattern_key(canonical_form(p)) for p in other.patterns)
        return mine == theirs


@dataclass(frozen=True)
class Violation:
    rule: str
    location: str
    detail: str = ""

    def __str__(self) -> str:
        text = f"[{self.rule}] at {self.location}"
        return f"{text}: {self.detail}" if self.detail else text


def fixed_points(p: Pattern) -> list[WeightPair]:
    """The isolated fixed points of a pattern, in chain order."""
    if isinstance(p, IsolatedPoint):
        return [p.weights]
    if isinstance(p, Arc):
        if not p.spheres:
            return []
        return [p.spheres[0].endpoint_lo] + [s.endpoint_hi for s in p.spheres]
    if isinstance(p, Circle):
        return [s.endpoint_lo for s in p.spheres]
    return []


def _pair_problems(w: WeightPair, where: str) -> list[Violation]:
    if w.a == 0 and w.b == 0:
        return [Violation("zero_weights", where, "relative weights (0, 0)")]
    g = gcd(w.a, w.b)
    if g != 1:
        return [Violation("coprime", where, f"weights {tuple(w)} share gcd {g}")]
    return []


def _sphere_problems(s: StabSphere, where: str) -> list[Violation]:
    out: list[Violation] = []
    if s.speed < 2:
        out.append(Violation("speed", where, f"stabiliser order {s.speed} < 2"))
    for label, w in (("lo", s.endpoint_lo), ("hi", s.endpoint_hi)):
        loc = f"{where}.{label}"
        problems = _pair_problems(w, loc)
        out += problems
        if not problems and s.speed >= 2 and s.speed not in (abs(w.a), abs(w.b)):
            out.append(
                Violation("endpoint_speed", loc, f"weights {tuple(w)} lack an entry of modulus {s.speed}")
            )
    return out


def _joint_problems(spheres, closed: bool, where: str) -> list[Violation]:
    out: list[Violation] = []
    n = len(spheres)
    pairs = list(zip(range(n - 1), range(1, n)))
    if closed and n >= 2:
        pairs.append((n - 1, 0))
    for i, j in pairs:
        left, right = spheres[i], spheres[j]
        loc = f"{where}.joint[{i}->{j}]"
        if not left.endpoint_hi.matches(right.endpoint_lo):
            out.append(
                Violation(
                    "joint",
                    loc,
                    f"{tuple(left.endpoint_hi)} vs {tuple(right.endpoint_lo)}",
                )
            )
        if gcd(left.speed, right.speed) != 1:
            out.append(Violation("joint_coprime", loc, f"speeds {left.speed}, {right.speed}"))
    return out


def validate_pattern(p: Pattern, where: str = "pattern") -> list[Violation]:
    """Every structural rule the pattern breaks (empty list if none)."""
    out: list[Violation] = []
    if isinstance(p, IsolatedPoint):
        out += _pair_problems(p.weights, where)
        if abs(p.weights.a) != 1 or abs(p.weights.b) != 1:
            out.append(
                Violation("isolated_weights", where, f"{tuple(p.weights)} needs |a| = |b| = 1")
            )
        return out

    if isinstance(p, FixedSurface):
        if p.genus < 0:
            out.append(Violation("genus", where, f"genus {p.genus} < 0"))
        return out

    spheres = p.spheres
    closed = isinstance(p, Circle)
    if not spheres:
        out.append(Violation("empty", where, "no spheres"))
        return out
    for i, s in enumerate(spheres):
        out += _sphere_problems(s, f"{where}.sphere[{i}]")
    out += _joint_problems(spheres, closed, where)

    if closed:
        if len(spheres) < 2:
            out.append(Violation("circle_length", where, "a circle needs at least two spheres"))
        for i, s in enumerate(spheres):
            w = s.endpoint_lo
            if min(abs(w.a), abs(w.b)) <= 1:
                out.append(
                    Violation("circle_point", f"{where}.point[{i}]", f"{tuple(w)} needs |a|, |b| > 1")
                )
    else:
        ends = ((0, spheres[0].endpoint_lo), (len(spheres), spheres[-1].endpoint_hi))
        for k, w in ends:
            if (abs(w.a) == 1) == (abs(w.b) == 1):
                out.append(
                    Violation("arc_end", f"{where}.point[{k}]", f"{tuple(w)} needs exactly one entry of modulus 1")
                )
        for k, s in enumerate(spheres[:-1], start=1):
            w = s.endpoint_hi
            if min(abs(w.a), abs(w.b)) <= 1:
                out.append(
                    Violation("arc_interior", f"{where}.point[{k}]", f"{tuple(w)} needs |a|, |b| > 1")
                )
    return out


# ---------------------------------------------------------------------------
# chain orientation and canonical forms


def chain_pairs(p: Arc | Circle) -> list[tuple[int, int]]:
    """Signed-up-to-sign weights ordered (toward previous sphere, toward next).

    Arc endpoints put the free entry of modulus 1 on the outside.  The
    pattern must be structurally valid.
    """
    spheres = p.spheres
    n = len(spheres)
    out = []
    if isinstance(p, Arc):
        first_along, first_free = spheres[0].endpoint_lo.entry(spheres[0].speed)
        out.append((first_free, first_along))
        for i in range(n - 1):
            prev_entry, _ = spheres[i].endpoint_hi.entry(spheres[i].speed)
            nxt, _ = spheres[i].endpoint_hi.entry(spheres[i + 1].speed)
            out.append((prev_entry, nxt))
        last_along, last_free = spheres[-1].endpoint_hi.entry(spheres[-1].speed)
        out.append((last_along, last_free))
        return out
    for i in range(n):
        w = spheres[i].endpoint_lo
        prev_entry, _ = w.entry(spheres[i - 1].speed)
        nxt, _ = w.entry(spheres[i].speed)
        out.append((prev_entry, nxt))
    return out


def _chain_encoding(speeds, self_ints, pairs) -> tuple:
    canon = [WeightPair(*q) for q in pairs]
    return tuple(
        (speeds[i], self_ints[i], canon[i].a, canon[i].b, canon[i + 1].a, canon[i + 1].b)
        for i in range(len(speeds))
    )


def _spheres_from_encoding(enc: tuple) -> tuple[StabSphere, ...]:
    return tuple(
        StabSphere(m, s, WeightPair(a0, b0), WeightPair(a1, b1)) for m, s, a0, b0, a1, b1 in enc
    )


def canonical_form(p: Pattern) -> Pattern:
    """Least representative under reversal, rotation, reflection and sign flip."""
    if isinstance(p, IsolatedPoint):
        w = p.weights
        return IsolatedPoint(min(w, w.swapped()))
    if isinstance(p, FixedSurface):
        return p
    if validate_pattern(p):
        raise ValueError("canonical_form needs a structurally valid pattern")
    speeds = [s.speed for s in p.spheres]
    ints = [s.self_int for s in p.spheres]
    pairs = chain_pairs(p)
    n = len(speeds)
    candidates = []
    if isinstance(p, Arc):
        candidates.append(_chain_encoding(speeds, ints, pairs))
        rev = [(b, a) for a, b in reversed(pairs)]
        candidates.append(_chain_encoding(speeds[::-1], ints[::-1], rev))
        return Arc(_spheres_from_encoding(min(candidates)))
    # circle: point i sits between sphere i-1 and sphere i
    for r in range(n):
        sp = speeds[r:] + speeds[:r]
        si = ints[r:] + ints[:r]
        pp = pairs[r:] + pairs[:r]
        candidates.append(_chain_encoding(sp, si, pp + pp[:1]))
        # reflection: walk the other way starting at the same point
        sp_rev = [speeds[(r - 1 - k) % n] for k in range(n)]
        si_rev = [ints[(r - 1 - k) % n] for k in range(n)]
        pp_rev = [(pairs[(r - k) % n][1], pairs[(r - k) % n][0]) for k in range(n)]
        candidates.append(_chain_encoding(sp_rev, si_rev, pp_rev + pp_rev[:1]))
    return Circle(_spheres_from_encoding(min(candidates)))


_KIND_CODE = {IsolatedPoint: 0, Arc: 1, Circle: 2, FixedSurface: 3}


def pattern_key(p: Pattern) -> tuple:
    """Integer tuple used for ordering and deduplication."""
    code = _KIND_CODE[type(p)]
    if isinstance(p, IsolatedPoint):
        return (code, 0, (p.weights.a, p.weights.b))
    if isinstance(p, FixedSurface):
        return (code, 0, (p.genus, p.self_int))
    body = tuple(
        (s.speed, s.self_int, s.endpoint_lo.a, s.endpoint_lo.b, s.endpoint_hi.a, s.endpoint_hi.b)
        for s in p.spheres
    )
    return (code, len(body), body)


# ---------------------------------------------------------------------------
# JSON interchange


def _pair_to_obj(w: WeightPair) -> list[int]:
    return [w.a, w.b]


def _sphere_to_obj(s: StabSphere) -> dict:
    return {
        "speed": s.speed,
        "self_int": s.self_int,
        "lo": _pair_to_obj(s.endpoint_lo),
        "hi": _pair_to_obj(s.endpoint_hi),
    }


def pattern_to_obj(p: Pattern) -> dict:
    if isinstance(p, IsolatedPoint):
        return {"point": _pair_to_obj(p.weights)}
    if isinstance(p, Arc):
        return {"arc": [_sphere_to_obj(s) for s in p.spheres]}
    if isinstance(p, Circle):
        return {"circle": [_sphere_to_obj(s) for s in p.spheres]}
    return {"surface": {"genus": p.genus, "self_int": p.self_int}}


def action_to_obj(action: ActionDescription) -> dict:
    return {"patterns": [pattern_to_obj(p) for p in action.patterns]}


def serialize_action(action: ActionDescription, indent: int | None = None) -> str:
    return json.dumps(action_to_obj(action), indent=indent)


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(path, f"expected an integer, got {value!r}")
    return value


def _pair(value, path: str) -> WeightPair:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(path, "expected a two-element array [a, b]")
    return WeightPair(_int(value[0], f"{path}[0]"), _int(value[1], f"{path}[1]"))


def _sphere(value, path: str) -> StabSphere:
    if not isinstance(value, dict):
        raise ParseError(path, "expected a sphere object")
    expected = {"speed", "self_int", "lo", "hi"}
    if set(value) != expected:
        raise ParseError(path, f"sphere keys must be exactly {sorted(expected)}")
    return StabSphere(
        _int(value["speed"], f"{path}.speed"),
        _int(value["self_int"], f"{path}.self_int"),
        _pair(value["lo"], f"{path}.lo"),
        _pair(value["hi"], f"{path}.hi"),
    )


def pattern_from_obj(obj, path: str = "$") -> Pattern:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ParseError(path, "pattern must be an object with exactly one key")
    (kind, body), = obj.items()
    where = f"{path}.{kind}"
    if kind == "point":
        return IsolatedPoint(_pair(body, where))
    if kind in ("arc", "circle"):
        if not isinstance(body, list):
            raise ParseError(where, "expected an array of spheres")
        spheres = tuple(_sphere(s, f"{where}[{i}]") for i, s in enumerate(body))
        return Arc(spheres) if kind == "arc" else Circle(spheres)
    if kind == "surface":
        if not isinstance(body, dict) or set(body) != {"genus", "self_int"}:
            raise ParseError(where, "surface needs exactly genus and self_int")
        return FixedSurface(_int(body["genus"], f"{where}.genus"), _int(body["self_int"], f"{where}.self_int"))
    raise ParseError(path, f"unknown pattern kind {kind!r}")


def action_from_obj(obj, validate: bool = True) -> ActionDescription:
    if not isinstance(obj, dict) or set(obj) != {"patterns"}:
        raise ParseError("$", 'top level must be {"patterns": [...]}')
    items = obj["patterns"]
    if not isinstance(items, list):
        raise ParseError("$.patterns", "expected an array")
    patterns = tuple(pattern_from_obj(p, f"$.patterns[{i}]") for i, p in enumerate(items))
    if not validate:
        return ActionDescription(patterns)
    violations: list[Violation] = []
    for i, p in enumerate(patterns):
        violations += validate_pattern(p, f"$.patterns[{i}]")
    if violations:
        raise ActionValidationError(violations)
    return ActionDescription(patterns)


def parse_action(text: str, validate: bool = True) -> ActionDescription:
    """Parse a JSON action description, validating its patterns unless told not to."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("$", f"malformed JSON: {exc}") from exc
    return action_from_obj(obj, validate)


def patterns_from(items: Iterable[Pattern]) -> ActionDescription:
    return ActionDescription(tuple(items))
