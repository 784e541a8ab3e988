from __future__ import annotations

import random

import pytest

from circle_patterns.classify import (
    SIMPLY_CONNECTED,
    arc2_middle_weights_rule,
    classify_action,
    diffeo_lookup,
    three_sphere_circle_sign,
)
from circle_patterns.enumeration import SearchBounds, enumerate_actions, enumerate_circles
from circle_patterns.patterns import (
    ActionDescription,
    Arc,
    Circle,
    FixedSurface,
    IsolatedPoint,
    StabSphere,
    WeightPair,
)

from _gen import apply_random_symmetry, random_action

W = WeightPair
NO_MAX_SPHERE = Arc((StabSphere(2, -1, W(1, -2), W(1, -2)),))


def pt(a, b):
    return IsolatedPoint(W(a, b))


def act(*ps):
    return ActionDescription(tuple(ps))


def test_worked_examples():
    c = classify_action(act(pt(1, 1), pt(1, -1)))
    assert (c.diffeo_type, c.euler, c.sigma, c.b2) == ("S4", 2, 0, 0)
    c = classify_action(act(pt(1, 1), NO_MAX_SPHERE))
    assert (c.diffeo_type, c.euler, c.sigma) == ("CP2bar", 3, -1)
    c = classify_action(act(FixedSurface(0, -1), pt(1, -1)))
    assert (c.diffeo_type, c.euler, c.sigma) == ("CP2bar", 3, -1)


def test_assumption_tag_always_present():
    rng = random.Random(2)
    for _ in range(50):
        c = classify_action(random_action(rng))
        assert SIMPLY_CONNECTED in c.assumptions
        assert "pi1" in c.to_obj()["b2_basis"]


def test_inadmissible_inputs():
    c = classify_action(act(pt(1, 1), pt(1, 1)))
    assert not c.admissible and c.diffeo_type == "Inadmissible"
    assert {"constraint", "signature_integrality", "extremum"} <= {v.rule for v in c.violations}
    c = classify_action(act(pt(2, 4)))
    assert not c.admissible and c.sigma is None
    c = classify_action(act())
    assert not c.admissible
    c = classify_action(act(pt(1, -1)))
    assert "no_maximum" in {v.rule for v in c.violations}


def test_lookup_table():
    assert diffeo_lookup(0, 0) == ("S4", [])
    assert diffeo_lookup(1, -1) == ("CP2bar", [])
    name, flags = diffeo_lookup(1, 1)
    assert name == "ConnectedSum(CP2)" and flags and flags[0].startswith("unreachable")
    assert diffeo_lookup(3, -1)[0] == "ConnectedSum(1CP2 # 2CP2bar)"
    assert "S2xS2" in diffeo_lookup(2, 0)[0]
    assert diffeo_lookup(1, 0)[1] == ["no_model"]


def test_every_survivor_is_s4_or_cp2bar():
    res = enumerate_actions(SearchBounds())
    assert res.admissible
    for a in res.admissible:
        c = classify_action(a)
        assert c.admissible, c.violations
        assert c.diffeo_type in {"S4", "CP2bar"}
        assert (c.euler, c.sigma) in {(2, 0), (3, -1)}
        assert 2 * c.euler + 3 * c.sigma > 0


def test_invariant_under_reordering_and_symmetry():
    rng = random.Random(8)
    res = enumerate_actions(SearchBounds(max_weight=12))
    for a in res.admissible:
        ps = list(a.patterns)
        rng.shuffle(ps)
        b = act(*(apply_random_symmetry(p, rng) for p in ps))
        assert classify_action(b).to_obj() == classify_action(a).to_obj()
    for _ in range(100):
        a = random_action(rng)
        ps = list(a.patterns)
        rng.shuffle(ps)
        b = act(*(apply_random_symmetry(p, rng) for p in ps))
        assert classify_action(b).diffeo_type == classify_action(a).diffeo_type


def test_three_circle_sign():
    circles = enumerate_circles(SearchBounds(max_weight=30)).admissible
    three = [c for c in circles if len(c.spheres) == 3]
    assert three and all(three_sphere_circle_sign(c) == -1 for c in three)
    two = [c for c in circles if len(c.spheres) == 2]
    assert all(three_sphere_circle_sign(c) == 0 for c in two)
    closed = Circle(
        (
            StabSphere(2, 0, W(3, 2), W(2, 5)),
            StabSphere(5, 0, W(2, 5), W(5, -3)),
            StabSphere(3, 0, W(5, -3), W(3, 2)),
        )
    )
    assert three_sphere_circle_sign(closed) == 1
    assert not classify_action(act(closed)).admissible
    with pytest.raises(TypeError):
        three_sphere_circle_sign(NO_MAX_SPHERE)


def test_arc2_rule_example():
    arc = Arc((StabSphere(2, -1, W(1, 2), W(2, -3)), StabSphere(3, -1, W(2, -3), W(3, -1))))
    r = arc2_middle_weights_rule(arc)
    assert r.a == 2 and r.resolved_middle == (2, -3) and r.sigma == -1 and r.consistent
    assert r.branches["same"]["feasible"]
    assert not r.branches["opposite"]["feasible"]


def test_arc2_opposite_branch_always_fails():
    for a in range(2, 30):
        assert abs(1 - 2 * a) != 1
        arc = Arc(
            (
                StabSphere(a, -1, W(1, a), W(a, -1 - a)),
                StabSphere(a + 1, -1, W(a, -1 - a), W(a + 1, -1)),
            )
        )
        r = arc2_middle_weights_rule(arc)
        assert r.resolved_middle == (a, -1 - a) and r.sigma == -1 and r.consistent
        assert not r.branches["opposite"]["feasible"]


def test_arc2_rule_rejects_other_shapes():
    with pytest.raises(ValueError):
        arc2_middle_weights_rule(NO_MAX_SPHERE)


def test_text_and_json_render():
    c = classify_action(act(pt(1, 1), NO_MAX_SPHERE))
    assert "CP2bar" in c.to_text()
    assert c.to_obj()["diffeo_type"] == "CP2bar"
