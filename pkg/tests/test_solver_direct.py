import random
from fractions import Fraction as F

import pytest

from setopt.errors import ValidationError
from setopt.imagesets import finite_set
from setopt.instance import Decision, build_instance, make_example
from setopt.setrelations import verify_certificate
from setopt.solver_direct import (TYPE_ONE, TYPE_TWO, WEAK, solve_direct,
                                  weak_threshold)


def _oracle_strictly_dominated(inst, j, eps):
    """Definition-level exclusion check for the weak concept on finite
    images: some competitor pushes every point of F(x_j) into its
    shifted strict dominance region."""
    cone = inst.cone
    target = inst.images[j].points
    for i in range(len(inst.images)):
        dominated_all = True
        for b in target:
            shifted = tuple(t - eps * e for t, e in zip(b, cone.e))
            if not any(all(sum(r * (s - y_) for r, s, y_ in
                               zip(row, shifted, y)) > 0
                           for row in cone.rows)
                       for y in inst.images[i].points):
                dominated_all = False
                break
        if dominated_all:
            return True
    return False


def test_three_decision_family_type_two_everything():
    inst = make_example("mfdvp", exact=True)
    assert solve_direct(inst, TYPE_TWO, 0).members == ("0", "1", "2")
    assert solve_direct(inst, WEAK, 0).members == ("0", "1", "2")


def test_drifting_singletons_type_two_origin_only():
    inst = make_example("strict_min", {"g": 3}, exact=True)
    report = solve_direct(inst, TYPE_TWO, 0)
    assert report.members == ("0",)
    for label, cert in report.certificates.items():
        assert cert.dominated_by == "0"
        i = inst.index_of(cert.dominated_by)
        j = inst.index_of(label)
        assert verify_certificate(inst.images[i], inst.images[j], inst.cone,
                                  cert.relation)


def test_polytope_fan_type_one_smallest_only():
    inst = make_example("t_one", {"g": 3}, exact=True)
    assert solve_direct(inst, TYPE_ONE, 0).members == ("1/4",)
    assert solve_direct(inst, TYPE_TWO, 0).members == ("1/4", "3/8", "1/2")


def test_weak_matches_definition_oracle():
    for seed in range(10):
        inst = make_example("random_finite", {"seed": seed}, exact=True)
        for eps in (F(0), F(1, 3), F(1)):
            members = set(solve_direct(inst, WEAK, eps).members)
            expected = {d.label for j, d in enumerate(inst.decisions)
                        if not _oracle_strictly_dominated(inst, j, eps)}
            assert members == expected


def test_solution_chain_and_monotonicity():
    for seed in (0, 4, 8):
        inst = make_example("random_finite", {"seed": seed}, exact=True)
        prev_weak, prev_t2 = None, None
        for eps in (F(0), F(1, 4), F(1, 2), F(1), F(2)):
            t1 = set(solve_direct(inst, TYPE_ONE, eps).members)
            t2 = set(solve_direct(inst, TYPE_TWO, eps).members)
            wk = set(solve_direct(inst, WEAK, eps).members)
            assert t1 <= t2 <= wk
            if prev_weak is not None:
                assert prev_weak <= wk and prev_t2 <= t2
            prev_weak, prev_t2 = wk, t2


def test_weak_threshold_contract():
    inst = make_example("strict_min", {"g": 4}, exact=True)
    thresholds = weak_threshold(inst)
    assert all(t == 0 for t in thresholds.values())

    inst = make_example("mfdvp", exact=True)
    thresholds = weak_threshold(inst)
    assert thresholds["0"] <= 0 and "0" in solve_direct(inst, WEAK, 0).members

    rng = random.Random(6)
    for seed in range(6):
        inst = make_example("random_finite", {"seed": seed}, exact=True)
        thresholds = weak_threshold(inst)
        for _ in range(20):
            eps = F(rng.randint(0, 30), rng.randint(1, 7))
            members = set(solve_direct(inst, WEAK, eps).members)
            assert members == {lab for lab, t in thresholds.items()
                               if t <= eps}
        # thresholds themselves are boundary members
        for lab, t in thresholds.items():
            assert lab in solve_direct(inst, WEAK, t).members


def test_self_margin_keeps_antichain_thresholds_zero(orthant):
    inst = build_instance(
        orthant,
        [Decision("only", (F(0),))],
        [finite_set([(F(0), F(2)), (F(2), F(0))])], exact=True)
    assert weak_threshold(inst)["only"] == 0
    assert solve_direct(inst, WEAK, 0).members == ("only",)
    assert solve_direct(inst, TYPE_TWO, 0).members == ("only",)
    assert solve_direct(inst, TYPE_ONE, 0).members == ("only",)


def test_intersection_law():
    for seed in (1, 5):
        inst = make_example("random_finite", {"seed": seed}, exact=True)
        thresholds = weak_threshold(inst)
        wk0 = set(solve_direct(inst, WEAK, 0).members)
        positive = [t for t in thresholds.values() if t > 0]
        eps_grid = [F(1, 7), F(7, 10), F(3)]
        if positive:
            eps_grid.append(min(positive) / 2)
        inter = None
        for eps in eps_grid:
            cur = set(solve_direct(inst, WEAK, eps).members)
            inter = cur if inter is None else inter & cur
        assert inter == wk0
        t20 = set(solve_direct(inst, TYPE_TWO, 0).members)
        for eps in eps_grid:
            assert t20 <= set(solve_direct(inst, TYPE_TWO, eps).members)


def test_eps_validation():
    inst = make_example("mfdvp", exact=True)
    with pytest.raises(ValidationError):
        solve_direct(inst, WEAK, F(-1))
    with pytest.raises(ValidationError):
        solve_direct(inst, "bogus", 0)


def test_report_json_shape():
    inst = make_example("strict_min", {"g": 3}, exact=True)
    report = solve_direct(inst, TYPE_TWO, 0)
    data = report.to_json_dict()
    assert data["concept"] == TYPE_TWO and data["members"] == ["0"]
    assert {c["label"] for c in data["certificates"]} == {"1/2", "1"}
    weak = solve_direct(inst, WEAK, 0).to_json_dict()
    assert set(weak["thresholds"]) == {"0", "1/2", "1"}
