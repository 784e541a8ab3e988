from __future__ import annotations

import random
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from circle_patterns.enumeration import SearchBounds, enumerate_arcs, enumerate_circles
from circle_patterns.lifts import (
    ChainInfeasible,
    ChainStep,
    build_config,
    chain_step,
    change_of_sign_value,
    check_archimedes,
    check_extrema,
    circle_lift_connectivity,
    config_to_obj,
    hamiltonian_delta,
    lift_fiber,
    lift_violations,
    propagate_chain,
)
from circle_patterns.patterns import (
    ActionDescription,
    Arc,
    Circle,
    FixedSurface,
    IsolatedPoint,
    StabSphere,
    WeightPair,
    chain_pairs,
)

from _gen import random_action

W = WeightPair
BOUNDS = SearchBounds(max_weight=20)
ARCS = enumerate_arcs(BOUNDS).admissible
CIRCLES = enumerate_circles(BOUNDS).admissible


def pt(a, b):
    return IsolatedPoint(W(a, b))


def test_lift_fiber_examples():
    lift = lift_fiber((1, 1))
    assert sorted(z.h_value for z in lift.points) == [-2, 2]
    assert lift.sphere.area_units == 2 and lift.sphere.kind == "fiber"
    fixed = lift_fiber((1, -1))
    assert fixed.fixed and fixed.fiber.h_value == 0
    assert sorted(z.h_value for z in lift_fiber((1, -2)).points) == [-1, 1]
    with pytest.raises(ValueError):
        lift_fiber((1, 1), sign_choice=2)


def test_hamiltonian_delta_examples():
    assert hamiltonian_delta(2, -1) == 2
    assert hamiltonian_delta(1, 0) == 2
    assert hamiltonian_delta(3, -1) == 3
    with pytest.raises(ValueError):
        hamiltonian_delta(2, -2)


def test_propagate_examples():
    z0, z1 = propagate_chain((1, -2), [(2, -1)])
    assert z1.h_weights == (2, -1)
    assert (z0.h_value, z1.h_value) == (-1, 1)
    for m in range(2, 12):
        _, z1 = propagate_chain((1, -m), [(m, -1)])
        assert z1.h_weights == (m, 1 - m)


def test_propagate_solves_self_intersection_from_companion():
    pts = propagate_chain((1, 2), [ChainStep(2, companion=3), ChainStep(3, companion=1)])
    assert [z.h_weights for z in pts] == [(1, 2), (-2, 3), (-3, 1)]
    assert [z.h_value for z in pts] == [3, 1, -2]
    # the other sign for the middle companion is a different sphere, with s = 2
    other = propagate_chain((1, 2), [ChainStep(2, companion=-3)])
    assert other[1].h_weights == (-2, -3)


def test_propagate_errors():
    with pytest.raises(ChainInfeasible):
        propagate_chain((1, 2), [ChainStep(2, companion=0)])
    with pytest.raises(ChainInfeasible):
        propagate_chain((1, 3), [ChainStep(3, companion=2)])  # 1 - 2 not divisible by 3
    with pytest.raises(ChainInfeasible):
        propagate_chain((1, 2), [ChainStep(2, self_int=-2)])
    with pytest.raises(ChainInfeasible):
        propagate_chain((1, 2), [ChainStep(2)])
    with pytest.raises(ChainInfeasible):
        propagate_chain((2, 3), [ChainStep(5, self_int=0)])


def test_three_sphere_arc_reduced_equations_have_no_solutions():
    # s = (n - m)/(m - 1) and t = (m - 2)/n must both be integers >= -1
    for m in range(3, 201):
        for n in range(2, 201):
            s_ok = (n - m) % (m - 1) == 0 and (n - m) // (m - 1) >= -1
            t_ok = (m - 2) % n == 0 and (m - 2) // n >= -1
            assert not (s_ok and t_ok), (m, n)


def test_extrema_examples():
    ok = check_extrema(build_config([pt(1, 1), pt(1, -1)]))
    assert ok.passes and len(ok.maxima) == 1 and len(ok.minima) == 1
    assert ok.max_value == 2 and ok.min_value == -2
    two = check_extrema(build_config([pt(1, 1), pt(1, 1)]))
    assert not two.passes and "extremum" in {v.rule for v in two.violations}
    assert check_extrema(build_config([])).passes


def test_level_rule_excludes_surface_with_no_max_sphere():
    sphere = Arc((StabSphere(2, -1, W(1, -2), W(1, -2)),))
    rules = {v.rule for v in lift_violations([FixedSurface(0, -1), sphere])}
    assert "level" in rules
    assert lift_violations([FixedSurface(0, -1), pt(1, -1)]) == []


def test_connectivity_examples():
    three = [c for c in CIRCLES if len(c.spheres) == 3]
    assert three and all(circle_lift_connectivity(c).connected for c in three)
    two = Circle((StabSphere(3, 0, W(2, 3), W(2, -3)), StabSphere(2, 0, W(2, -3), W(2, 3))))
    assert circle_lift_connectivity(two).connected
    trivial = Circle((StabSphere(2, 0, W(2, 3), W(2, 3)), StabSphere(3, 0, W(2, 3), W(2, 3))))
    rep = circle_lift_connectivity(trivial)
    assert rep.components == 2 and rep.closure_sign == 1
    assert "circle_connectivity" in {v.rule for v in lift_violations([trivial])}


def test_change_of_sign_examples():
    assert change_of_sign_value(2, 3, -1) == -2
    assert change_of_sign_value(2, 3, 0) == -5


@given(st.integers(2, 500), st.integers(2, 500), st.integers(-1, 50))
def test_change_of_sign_always_negative(m1, m2, s):
    assert change_of_sign_value(m1, m2, s) < 0


def test_survivors_pass_lift_checks():
    for p in ARCS + CIRCLES:
        assert lift_violations([p]) == []


def test_archimedes_on_every_survivor_sphere():
    for p in ARCS + CIRCLES:
        cfg = build_config([p])
        assert check_archimedes(cfg) == []
        for sph in cfg.spheres:
            h = [cfg.points[e].h_value for e in sph.endpoints]
            assert abs(h[0] - h[1]) == (2 + sph.self_int) * sph.speed
            if sph.kind == "fiber":
                assert sph.area_units == 2 and sph.self_int == 0


def test_vertical_weight_and_h_on_random_configs():
    rng = random.Random(17)
    for _ in range(300):
        cfg = build_config(random_action(rng))
        for z in cfg.points.values():
            a, b = z.h_weights
            assert z.v_weight == a + b == z.h_value


def test_gamma_antisymmetry():
    rng = random.Random(19)
    for _ in range(300):
        cfg = build_config(random_action(rng))
        neg = cfg.negated()
        for zid, z in cfg.points.items():
            assert cfg.points[cfg.gamma[zid]].h_value == -z.h_value
            assert neg.points[zid].h_value == -z.h_value
        for f, g in zip(cfg.surfaces, neg.surfaces):
            assert g.h_value == -f.h_value
        before, after = check_extrema(cfg), check_extrema(neg)
        assert sorted(after.maxima) == sorted(before.minima)
        assert sorted(after.minima) == sorted(before.maxima)


@given(
    st.integers(1, 40),
    st.integers(2, 40),
    st.lists(st.integers(-1, 4), min_size=1, max_size=5),
)
def test_reversed_chain_is_gamma_image(u0, v0, ints):
    assume(gcd(u0, v0) == 1 and u0 != v0)
    steps = []
    u, v = u0, -v0
    pts = [(u0, -v0)]
    for s in ints:
        if v == 0:
            break
        steps.append(ChainStep(abs(v), s))
        u, v = chain_step(u, v, s)
        pts.append((u, v))
    assume(all(c != 0 for _, c in pts) and all(gcd(a, b) == 1 for a, b in pts))
    assume(abs(pts[-1][0]) != abs(pts[-1][1]))
    forward = propagate_chain(pts[0], steps)
    end = forward[-1].h_weights
    rev_steps = [ChainStep(st_.speed, st_.self_int) for st_ in reversed(steps)]
    backward = propagate_chain((-end[1], -end[0]), rev_steps)
    for zf, zb in zip(forward, reversed(backward)):
        a, b = zf.h_weights
        assert zb.h_weights == (-b, -a)
        assert zb.h_value == -zf.h_value


def test_forced_form_next_to_a_non_extremal_end():
    checked = 0
    for arc in ARCS:
        pts = [arc.spheres[0].endpoint_lo] + [s.endpoint_hi for s in arc.spheres]
        for spheres, seq in ((arc.spheres, pts), (arc.spheres[::-1], pts[::-1])):
            if seq[0].same_sign or seq[1].same_sign:
                continue
            m = spheres[0].speed
            assert spheres[0].self_int == -1
            _, z1 = propagate_chain((1, -m), [(m, -1)])
            assert abs(z1.h_value) == 1
            checked += 1
    assert checked > 0


def test_config_dump_shape():
    obj = config_to_obj(build_config(ActionDescription((pt(1, 1), FixedSurface(0, 0), pt(1, -1)))))
    assert {p["H"] for p in obj["points"]} == {2, -2}
    assert obj["fixed_fibers"] == [{"below": "P2", "H": 0}]
    assert [s["H"] for s in obj["surfaces"]] == [1, -1]


def test_chain_pairs_orient_toward_neighbours():
    for arc in ARCS:
        pairs = chain_pairs(arc)
        assert abs(pairs[0][0]) == 1 and abs(pairs[-1][1]) == 1
        for i, sph in enumerate(arc.spheres):
            assert abs(pairs[i][1]) == sph.speed == abs(pairs[i + 1][0])
