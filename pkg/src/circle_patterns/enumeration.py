"""Bounded exhaustive search for admissible patterns and pattern combinations.

Chains of stabilised spheres are generated by walking lifted weights: at a
point with weights (u, v) the next sphere has speed |v|, and each choice of
the next point's companion weight c fixes the self-intersection
s = (u - c) / v.  Candidates that fail divisibility, adjunction or the
bounds are counted as rejected leaves; complete arcs and circles are then
run through the structural and Hamiltonian checks.

With ``use_lemmas=False`` only primitive constraints are used.  With
``use_lemmas=True`` the search additionally takes the known structural
results as shortcuts (length caps, circles start at the maximum, and the
"third point is extremal" cut for arcs), which lets the two survivor sets
be compared.
"""
from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from math import gcd

from .invariants import constraint_lhs, derdzinski_rigas, euler_characteristic, signature
from .lifts import lift_violations
from .patterns import (
    ActionDescription,
    Arc,
    Circle,
    FixedSurface,
    IsolatedPoint,
    Pattern,
    StabSphere,
    WeightPair,
    canonical_form,
    fixed_points,
    pattern_key,
    pattern_to_obj,
    validate_pattern,
)

__all__ = [
    "SearchBounds",
    "EnumerationResult",
    "OracleCertificate",
    "enumerate_arcs",
    "enumerate_circles",
    "enumerate_actions",
    "infeasibility_oracle",
    "action_family",
    "brings_maximum",
    "action_rejection",
    "LIMITATION_NOTE",
]

LIMITATION_NOTE = (
    "Bounded search only: survivors are exhaustive for the stated bounds on "
    "weights, self-intersections and chain length. Validity for unbounded "
    "weights rests on the structural proofs, not on this enumeration; the "
    "lemma-free and lemma-assisted searches are compared as a consistency check."
)


@dataclass(frozen=True)
class SearchBounds:
    max_weight: int = 50
    max_self_int: int = 10
    max_chain_len: int = 6
    max_genus: int = 3
    max_patterns: int = 6

    def __post_init__(self) -> None:
        if self.max_weight < 2:
            raise ValueError("max_weight must be >= 2")
        if self.max_self_int < -1:
            raise ValueError("max_self_int must be >= -1")
        if self.max_chain_len < 1:
            raise ValueError("max_chain_len must be >= 1")
        if self.max_genus < 0 or self.max_patterns < 1:
            raise ValueError("max_genus must be >= 0 and max_patterns >= 1")


@dataclass
class EnumerationResult:
    kind: str
    bounds: SearchBounds
    admissible: list = field(default_factory=list)
    rejected_counts: Counter = field(default_factory=Counter)
    generated: int = 0
    use_lemmas: bool = False
    families: dict[str, int] = field(default_factory=dict)

    def keys(self) -> list[tuple]:
        if self.kind == "actions":
            return [_action_key(a) for a in self.admissible]
        return [pattern_key(p) for p in self.admissible]

    def to_obj(self) -> dict:
        if self.kind == "actions":
            items = [{"patterns": [pattern_to_obj(p) for p in a.patterns]} for a in self.admissible]
        else:
            items = [pattern_to_obj(p) for p in self.admissible]
        obj = {
            "bounds": asdict(self.bounds),
            "admissible": items,
            "rejected": dict(sorted(self.rejected_counts.items())),
            "kind": self.kind,
            "generated": self.generated,
            "use_lemmas": self.use_lemmas,
            "limitations": LIMITATION_NOTE,
        }
        if self.families:
            obj["families"] = dict(sorted(self.families.items()))
        return obj

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_obj(), indent=indent)


def _action_key(a: ActionDescription) -> tuple:
    return tuple(sorted(pattern_key(canonical_form(p)) for p in a.patterns))


# ---------------------------------------------------------------------------
# chain walking


def _divisible_count(u: int, m: int, w: int) -> int:
    """Number of c in [-w, w] with c = u (mod m)."""
    r = u % m
    # c = r + k m,  -w <= r + k m <= w
    lo = -((w + r) // m)
    hi = (w - r) // m
    return max(0, hi - lo + 1)


def _companions(u: int, v: int, w: int):
    """Companion weights c in [-w, w] with (u - c) divisible by v, with s."""
    m = abs(v)
    r = u % m
    k = -((w + r) // m)
    c = r + k * m
    while c <= w:
        yield c, (u - c) // v
        c += m


def _same_sign(u: int, v: int) -> bool:
    return u * v > 0


def _arc_from_walk(reps: list[tuple[int, int]], ints: list[int]) -> Arc:
    spheres = tuple(
        StabSphere(abs(reps[i][1]), ints[i], WeightPair(*reps[i]), WeightPair(*reps[i + 1]))
        for i in range(len(ints))
    )
    return Arc(spheres)


def _circle_from_walk(reps: list[tuple[int, int]], ints: list[int]) -> Circle:
    n = len(ints)
    spheres = tuple(
        StabSphere(abs(reps[i][1]), ints[i], WeightPair(*reps[i]), WeightPair(*reps[(i + 1) % n]))
        for i in range(n)
    )
    return Circle(spheres)


def pattern_rejection(p: Pattern) -> str | None:
    """First failed rule for a single pattern, or None if admissible on its own."""
    v = validate_pattern(p)
    if v:
        return v[0].rule
    v = lift_violations([p])
    if v:
        return v[0].rule
    return None


class _Collector:
    def __init__(self) -> None:
        self.found: dict[tuple, Pattern] = {}
        self.counts: Counter = Counter()
        self.generated = 0

    def reject(self, rule: str, n: int = 1) -> None:
        if n:
            self.counts[rule] += n
            self.generated += n

    def offer(self, p: Pattern) -> None:
        self.generated += 1
        rule = pattern_rejection(p)
        if rule is not None:
            self.counts[rule] += 1
            return
        key = pattern_key(canonical_form(p))
        if key in self.found:
            self.counts["duplicate"] += 1
            return
        self.found[key] = canonical_form(p)


def _arc_worker(job: tuple[int, SearchBounds, bool]) -> tuple[dict, Counter, int]:
    speed, bounds, lemmas = job
    col = _Collector()
    W, S = bounds.max_weight, bounds.max_self_int
    max_len = min(bounds.max_chain_len, 2) if lemmas else bounds.max_chain_len

    def walk(reps: list[tuple[int, int]], ints: list[int], n_same: int) -> None:
        u, v = reps[-1]
        n_div = _divisible_count(u, abs(v), W)
        col.reject("divisibility", (2 * W + 1) - n_div)
        for c, s in _companions(u, v, W):
            if s < -1:
                col.reject("adjunction")
                continue
            if s > S:
                col.reject("self_int_bound")
                continue
            nxt = (-v, c)
            same = n_same + _same_sign(*nxt)
            if lemmas and len(reps) >= 3 and same == 0:
                col.reject("lemma_third_point_extremal")
                continue
            if abs(c) == 1:
                col.offer(_arc_from_walk(reps + [nxt], ints + [s]))
                continue
            if same > 1:
                col.reject("extremum")
                continue
            if len(ints) + 1 >= max_len:
                col.reject("lemma_arc_length" if lemmas and max_len < bounds.max_chain_len else "chain_length_bound")
                continue
            walk(reps + [nxt], ints + [s], same)

    for v0 in (speed, -speed):
        start = (1, v0)
        walk([start], [], int(_same_sign(*start)))
    return col.found, col.counts, col.generated


def _circle_worker(job: tuple[int, SearchBounds, bool]) -> tuple[dict, Counter, int]:
    speed, bounds, lemmas = job
    col = _Collector()
    W, S = bounds.max_weight, bounds.max_self_int
    max_len = min(bounds.max_chain_len, 3) if lemmas else bounds.max_chain_len

    def walk(reps, ints, n_same, start):
        u, v = reps[-1]
        n_div = _divisible_count(u, abs(v), W)
        col.reject("divisibility", (2 * W + 1) - n_div)
        for c, s in _companions(u, v, W):
            if s < -1:
                col.reject("adjunction")
                continue
            if s > S:
                col.reject("self_int_bound")
                continue
            if abs(c) < 2:
                col.reject("circle_point")
                continue
            nxt = (-v, c)
            if nxt == start or nxt == (-start[0], -start[1]):
                col.offer(_circle_from_walk(reps, ints + [s]))
            same = n_same + _same_sign(*nxt)
            if same > 1:
                col.reject("extremum")
                continue
            if len(ints) + 1 >= max_len:
                col.reject("lemma_circle_length" if lemmas and max_len < bounds.max_chain_len else "chain_length_bound")
                continue
            walk(reps + [nxt], ints + [s], same, start)

    # start point weights (u0, v0): v0 lies along the first sphere, |v0| = speed
    for u0 in range(2, W + 1):
        if gcd(u0, speed) != 1:
            continue
        for v0 in (speed, -speed):
            if lemmas and v0 < 0:
                continue
            start = (u0, v0)
            walk([start], [], int(_same_sign(*start)), start)
    return col.found, col.counts, col.generated


def _run(worker, kind: str, bounds: SearchBounds, use_lemmas: bool, jobs: int) -> EnumerationResult:
    tasks = [(m, bounds, use_lemmas) for m in range(2, bounds.max_weight + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(worker, tasks))
    else:
        parts = [worker(t) for t in tasks]
    found: dict[tuple, Pattern] = {}
    counts: Counter = Counter()
    generated = 0
    for part_found, part_counts, part_generated in parts:
        counts.update(part_counts)
        generated += part_generated
        for key in sorted(part_found):
            if key in found:
                counts["duplicate"] += 1
            else:
                found[key] = part_found[key]
    admissible = [found[k] for k in sorted(found)]
    return EnumerationResult(kind, bounds, admissible, counts, generated, use_lemmas)


def enumerate_arcs(bounds: SearchBounds = SearchBounds(), use_lemmas: bool = False, jobs: int = 1) -> EnumerationResult:
    """All admissible arcs of stabilised spheres within ``bounds``."""
    return _run(_arc_worker, "arcs", bounds, use_lemmas, jobs)


def enumerate_circles(bounds: SearchBounds = SearchBounds(), use_lemmas: bool = False, jobs: int = 1) -> EnumerationResult:
    """All admissible circles of stabilised spheres within ``bounds``."""
    return _run(_circle_worker, "circles", bounds, use_lemmas, jobs)


# ---------------------------------------------------------------------------
# combinations of patterns


def brings_maximum(p: Pattern) -> bool:
    """Whether H attains its maximum over this pattern."""
    if isinstance(p, FixedSurface):
        return True
    return any(w.same_sign for w in fixed_points(p))


def action_family(action: ActionDescription) -> str:
    """Name of the classification family an admissible action belongs to."""
    ps = sorted(action.patterns, key=pattern_key)
    kinds = [type(p) for p in ps]
    if kinds == [Circle]:
        return "circle"
    if kinds == [Arc]:
        return "arc"
    point_11 = IsolatedPoint(WeightPair(1, 1))
    point_1m1 = IsolatedPoint(WeightPair(1, -1))
    sphere_12 = canonical_form(Arc((StabSphere(2, -1, WeightPair(1, -2), WeightPair(1, -2)),)))
    canon = [canonical_form(p) for p in ps]
    if canon == [point_11, point_1m1] or canon == [point_1m1, point_11]:
        return "point_pair"
    if len(canon) == 2 and point_11 in canon and sphere_12 in canon:
        return "point_and_sphere"
    if canon == [FixedSurface(0, 0)]:
        return "fixed_sphere"
    if len(canon) == 2 and FixedSurface(0, -1) in canon and point_1m1 in canon:
        return "fixed_sphere_and_point"
    return "unexpected"


def action_rejection(action: ActionDescription, same_sign_reading: str = "point") -> str | None:
    """First failed admissibility rule for a whole action, or None."""
    if constraint_lhs(action) != 0:
        return "constraint"
    three_sigma, sigma = signature(action)
    if sigma is None:
        return "signature_integrality"
    for i, p in enumerate(action.patterns):
        v = validate_pattern(p, f"P{i}")
        if v:
            return v[0].rule
    if same_sign_reading == "pattern":
        if sum(1 for p in action.patterns if brings_maximum(p)) != 1:
            return "extremum"
        per_pattern = [lift_violations([p]) for p in action.patterns]
        for v in per_pattern:
            if v:
                return v[0].rule
    else:
        v = lift_violations(action, require_max=True)
        if v:
            return v[0].rule
    if not derdzinski_rigas(euler_characteristic(action), sigma):
        return "derdzinski_rigas"
    return None


def enumerate_actions(
    bounds: SearchBounds = SearchBounds(),
    use_lemmas: bool = False,
    jobs: int = 1,
    same_sign_reading: str = "point",
    arcs: EnumerationResult | None = None,
    circles: EnumerationResult | None = None,
) -> EnumerationResult:
    """Admissible multisets of patterns: one pattern bringing the maximum plus others."""
    if arcs is None:
        arcs = enumerate_arcs(bounds, use_lemmas, jobs)
    if circles is None:
        circles = enumerate_circles(bounds, use_lemmas, jobs)
    singles: list[Pattern] = [IsolatedPoint(WeightPair(1, 1)), IsolatedPoint(WeightPair(1, -1))]
    singles += arcs.admissible + circles.admissible
    with_max = [p for p in singles if brings_maximum(p)]
    with_max += [
        FixedSurface(g, s)
        for g in range(bounds.max_genus + 1)
        for s in range(-bounds.max_self_int, bounds.max_self_int + 1)
    ]
    without_max = [p for p in singles if not brings_maximum(p)]

    counts: Counter = Counter()
    generated = 0
    found: dict[tuple, ActionDescription] = {}
    heads: list[Pattern | None] = [None] + with_max
    for head in heads:
        room = bounds.max_patterns - (head is not None)
        for k in range(0, room + 1):
            for extra in combinations_with_replacement(without_max, k):
                parts = ((head,) if head is not None else ()) + extra
                if not parts:
                    continue
                generated += 1
                action = ActionDescription(parts)
                rule = action_rejection(action, same_sign_reading)
                if rule is not None:
                    counts[rule] += 1
                    continue
                key = _action_key(action)
                if key in found:
                    counts["duplicate"] += 1
                    continue
                found[key] = ActionDescription(tuple(sorted((canonical_form(p) for p in parts), key=pattern_key)))
    admissible = [found[k] for k in sorted(found)]
    families = Counter(action_family(a) for a in admissible)
    return EnumerationResult("actions", bounds, admissible, counts, generated, use_lemmas, dict(families))


# ---------------------------------------------------------------------------
# certificates for the excluded chain lengths


@dataclass
class OracleCertificate:
    family: str
    scanned: dict
    solutions: list[dict]

    @property
    def infeasible(self) -> bool:
        return not self.solutions

    def to_obj(self) -> dict:
        return {
            "family": self.family,
            "scanned": self.scanned,
            "result": "no solutions" if self.infeasible else "solutions found",
            "solutions": self.solutions,
        }


def _oracle_arc3(max_weight: int, s_min: int, s_max: int, limit: int) -> list[dict]:
    # maximum at z2; z0 = (1,-m), z1 = (m, 1 + r m), z2 = (M, m + s M), z3 = (-n, M - t n) = (-n, 1)
    sols = []
    for m in range(2, max_weight + 1):
        for r in range(s_min, 0):
            M = -(1 + r * m)
            if M < 2:
                continue
            for s in range(s_min, s_max + 1):
                n = m + s * M
                if n < 2 or n > max_weight:
                    continue
                for t in range(s_min, s_max + 1):
                    if M - t * n == 1:
                        sols.append({"m": m, "n": n, "s": s, "t": t, "first_self_int": r})
                        if len(sols) >= limit:
                            return sols
    return sols


def _oracle_arc4(max_weight: int, s_min: int, s_max: int, limit: int) -> list[dict]:
    # maximum at z2; weights (1,-m), (m, 1 + r m), (M, m + s M), (-N, M - t N), (-n, -N - r' n) = (-n, 1)
    sols = []
    for m in range(2, max_weight + 1):
        for r in range(s_min, 0):
            M = -(1 + r * m)
            if M < 2:
                continue
            for s in range(s_min, s_max + 1):
                N = m + s * M
                if N < 2:
                    continue
                for t in range(s_min, s_max + 1):
                    n = M - t * N
                    if n < 2 or n > max_weight:
                        continue
                    for r2 in range(s_min, 0):
                        if -N - r2 * n == 1:
                            sols.append({"m": m, "n": n, "s": s, "t": t, "first_self_int": r, "last_self_int": r2})
                            if len(sols) >= limit:
                                return sols
    return sols


def _oracle_circle(max_weight: int, s_min: int, s_max: int, limit: int) -> list[dict]:
    # descending from z1 through z2 with H(z2) >= 0: H(z3) = -m1 - (s+1) m2 must be negative
    sols = []
    for m1 in range(2, max_weight + 1):
        for m2 in range(2, max_weight + 1):
            if gcd(m1, m2) != 1 or m2 - m1 < 0:
                continue
            for s in range(s_min, s_max + 1):
                if -m1 - (s + 1) * m2 >= 0:
                    sols.append({"m1": m1, "m2": m2, "s": s, "H_z3": -m1 - (s + 1) * m2})
                    if len(sols) >= limit:
                        return sols
    return sols


def infeasibility_oracle(
    family: str,
    bounds: SearchBounds = SearchBounds(max_weight=200),
    min_self_int: int = -1,
    limit: int = 20,
) -> OracleCertificate:
    """Brute-force the equations behind each excluded chain length.

    ``min_self_int`` is the adjunction floor; -1 is the true bound, lower
    values test whether the bound is what excludes the family.
    """
    runners = {"arc3": _oracle_arc3, "arc4": _oracle_arc4, "circle_ge4": _oracle_circle}
    if family not in runners:
        raise ValueError(f"unknown family {family!r}; expected one of {sorted(runners)}")
    sols = runners[family](bounds.max_weight, min_self_int, bounds.max_self_int, limit)
    scanned = {
        "speeds": [2, bounds.max_weight],
        "self_int": [min_self_int, bounds.max_self_int],
    }
    return OracleCertificate(family, scanned, sols)
