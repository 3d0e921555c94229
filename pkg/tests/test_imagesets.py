import itertools
import random
from fractions import Fraction as F

import pytest

from setopt.cone import margin
from setopt.errors import EmptyImage, ValidationError
from setopt.imagesets import (covering_number_internal, domination_check,
                              finite_set, hausdorff, hausdorff_sq,
                              min_elements, minimal_vertices, point_margin,
                              polytope, prune_to_extreme,
                              strong_membership_slack)


def pts(*coords):
    return [tuple(F(c) for c in p) for p in coords]


def test_empty_image_rejected():
    with pytest.raises(EmptyImage):
        finite_set([])


def test_min_elements_antichain(orthant):
    img = finite_set(pts((2, 0), (0, 2), (1, 1)))
    assert set(min_elements(img, orthant)) == set(img.points)


def test_min_elements_drops_dominated(orthant):
    img = finite_set(pts((2, 0), (0, 2), (2, 2)))
    assert set(min_elements(img, orthant)) == set(pts((2, 0), (0, 2)))


def test_min_elements_incomparable_pair(orthant):
    img = finite_set(pts((1, -1), (0, 2)))
    assert set(min_elements(img, orthant)) == set(img.points)


def test_min_elements_rejects_polytope(orthant):
    with pytest.raises(ValidationError):
        min_elements(polytope(pts((0, 0), (1, 0))), orthant)


def _oracle_minimal(points, cone, weak):
    """Definition-level scan, no margins: q dominates p when the
    difference lies in the cone (interior for weak) and differs."""
    out = []
    for p in points:
        dominated = False
        for q in points:
            if q == p:
                continue
            diff = tuple(a - b for a, b in zip(p, q))
            slacks = [sum(r * d for r, d in zip(row, diff))
                      for row in cone.rows]
            if weak:
                dominated = dominated or all(s > 0 for s in slacks)
            else:
                dominated = dominated or all(s >= 0 for s in slacks)
        if not dominated:
            out.append(p)
    return set(out)


def test_min_elements_vs_definition_oracle(orthant, skew_cone):
    rng = random.Random(4)
    for cone in (orthant, skew_cone):
        for _ in range(25):
            points = list({(F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
                           for _ in range(rng.randint(1, 6))})
            img = finite_set(points)
            for weak in (False, True):
                assert set(min_elements(img, cone, weak)) == \
                    _oracle_minimal(points, cone, weak)
            mins = set(min_elements(img, cone, False))
            weaks = set(min_elements(img, cone, True))
            assert mins <= weaks <= set(points)


def test_point_margin_finite(orthant):
    assert point_margin((F(0), F(1)), finite_set(pts((0, 0))), orthant) == 0
    assert point_margin((F(2), F(3)),
                        finite_set(pts((0, 0), (5, 5))), orthant) == 2
    img = finite_set(pts((3, 1), (-2, 4)))
    for b in img.points:
        assert point_margin(b, img, orthant) >= 0


def test_point_margin_polytope_matches_vertex_scan_when_exact(orthant):
    # on a segment the fan of margins is maximized at a hull point; the
    # LP must match brute-force maximization over a fine hull sample
    verts = pts((0, 0), (4, -2))
    poly = polytope(verts)
    b = (F(3), F(1))
    mu = point_margin(b, poly, orthant)
    best = max(
        margin(tuple(l * v1 + (1 - l) * v2 for v1, v2 in zip(*verts)), b,
               orthant)
        for l in [F(i, 64) for i in range(65)])
    assert mu >= best
    # hand optimum: segment point (4t,-2t) gives min(3-4t, 1+2t),
    # maximized at t=1/3 with value 5/3
    assert mu == F(5, 3)


def test_hausdorff_hand_values():
    a = finite_set(pts((0, 0)))
    b = finite_set(pts((3, 4)))
    assert hausdorff(a, b) == 5.0
    assert hausdorff(a, a) == 0.0
    c = finite_set(pts((0, 0), (1, 0)))
    assert hausdorff(c, finite_set(pts((0, 0)))) == 1.0
    assert hausdorff_sq(c, finite_set(pts((0, 0)))) == 1


def test_hausdorff_metric_axioms(orthant):
    rng = random.Random(11)
    sets = [finite_set([(F(rng.randint(-5, 5)), F(rng.randint(-5, 5)))
                        for _ in range(rng.randint(1, 4))])
            for _ in range(6)]
    for a, b, c in itertools.permutations(sets, 3):
        dab, dba = hausdorff(a, b), hausdorff(b, a)
        assert dab == pytest.approx(dba)
        assert hausdorff(a, b) <= hausdorff(a, c) + hausdorff(c, b) + 1e-9


def _oracle_min_cover(points, eps_sq):
    n = len(points)
    best = None
    for size in range(1, n + 1):
        for centers in itertools.combinations(range(n), size):
            if all(any(sum((a - c) ** 2 for a, c in zip(points[i], points[j]))
                       <= eps_sq for j in centers) for i in range(n)):
                return size
    return best


def test_covering_hand_and_oracle(orthant):
    img = finite_set(pts((0, 0), (1, 0), (2, 0)))
    res = covering_number_internal(img, F(1, 2))
    assert res.count == 3 and res.exact
    # closed balls: the middle point alone covers both neighbours at eps=1
    res = covering_number_internal(img, F(1))
    assert res.count == 1 and res.centers == (tuple(F(c) for c in (1, 0)),)
    assert covering_number_internal(finite_set(pts((7, 7))), F(1, 10)).count == 1

    rng = random.Random(5)
    for _ in range(20):
        points = list({(F(rng.randint(0, 5)), F(rng.randint(0, 5)))
                       for _ in range(rng.randint(1, 7))})
        img = finite_set(points)
        for eps in (F(1), F(2), F(3)):
            res = covering_number_internal(img, eps)
            assert res.exact
            assert res.count == _oracle_min_cover(points, eps * eps)
            assert set(res.centers) <= set(points)
            greedy = covering_number_internal(img, eps, exact_cap=0)
            assert not greedy.exact and res.count <= greedy.count


def test_covering_monotone_in_eps():
    img = finite_set(pts((0, 0), (3, 1), (5, 5), (-2, 2)))
    counts = [covering_number_internal(img, eps).count
              for eps in (F(1, 2), F(1), F(2), F(4), F(8))]
    assert counts == sorted(counts, reverse=True)


def test_covering_requires_positive_eps():
    with pytest.raises(ValidationError):
        covering_number_internal(finite_set(pts((0, 0))), F(0))


def test_prune_hand_values():
    dropped = prune_to_extreme(pts((0, 0), (1, 0), (0, 1), (F(1, 4), F(1, 4))))
    assert set(dropped) == set(pts((0, 0), (1, 0), (0, 1)))
    triangle = pts((0, 0), (1, 0), (0, 1))
    assert set(prune_to_extreme(triangle)) == set(triangle)
    assert prune_to_extreme(pts((2, 2), (2, 2))) == tuple(pts((2, 2)))


def test_prune_idempotent():
    rng = random.Random(3)
    for _ in range(15):
        points = [(F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
                  for _ in range(rng.randint(1, 8))]
        once = prune_to_extreme(points)
        assert set(prune_to_extreme(once)) == set(once)


def test_domination_property_holds(orthant, skew_cone):
    rng = random.Random(9)
    for cone in (orthant, skew_cone):
        for _ in range(30):
            points = [(F(rng.randint(-5, 5)), F(rng.randint(-5, 5)))
                      for _ in range(rng.randint(1, 6))]
            assert domination_check(finite_set(points), cone)
    assert domination_check(finite_set(pts((3, 3))), orthant)
    assert domination_check(finite_set(pts((2, 0), (0, 2))), orthant)


def test_minimal_vertices_of_fan(orthant):
    poly = polytope(pts((1, 0), (0, 1), (F(1, 4), F(1, 4))))
    assert set(minimal_vertices(poly, orthant)) == set(poly.points)
    dominated = polytope(pts((0, 0), (2, 0), (2, 2), (0, 2)))
    assert set(minimal_vertices(dominated, orthant)) == set(pts((0, 0)))


def test_strong_membership_slack_boundary(orthant):
    seg = polytope(pts((1, 0), (0, 1)))
    # (1,0) lies on the set but no distinct point of seg + K dominates it
    holds, _, _ = strong_membership_slack((F(1), F(0)), seg, orthant)
    assert not holds
    holds, _, lam = strong_membership_slack((F(2), F(1)), seg, orthant)
    assert holds and lam is not None
