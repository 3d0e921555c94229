import itertools
import random
from fractions import Fraction as F

from setopt.imagesets import finite_set, polytope
from setopt.instance import make_example
from setopt.setrelations import (LOWER, LOWER_STRICT, LOWER_STRONG,
                                 set_margin, set_relation, verify_certificate)


def pts(*coords):
    return [tuple(F(c) for c in p) for p in coords]


def test_set_margin_hand_values(orthant):
    # singleton vs drifting singleton: zero margin, so the non-strict
    # relation holds at shift 0 but the strict one never does
    a = finite_set(pts((0, 0)))
    b = finite_set(pts((0, 1)))
    assert set_margin(a, b, orthant) == 0
    assert set_relation(a, b, orthant, LOWER, 0)[0]
    assert not set_relation(a, b, orthant, LOWER_STRICT, 0)[0]

    b2 = finite_set(pts((1, 1), (2, 0)))
    assert set_margin(a, b2, orthant) == 0
    assert set_relation(a, b2, orthant, LOWER, 0)[0]
    assert not set_relation(a, b2, orthant, LOWER_STRICT, 0)[0]


def test_set_margin_self_nonnegative(orthant):
    rng = random.Random(21)
    for _ in range(20):
        img = finite_set([(F(rng.randint(-5, 5)), F(rng.randint(-5, 5)))
                          for _ in range(rng.randint(1, 5))])
        assert set_margin(img, img, orthant) >= 0


def test_polytope_fan_ordering(orthant):
    # conv{(1,0),(0,1),(x,x)} shrinks downward as x decreases
    lo = make_example("t_one", {"g": 2}, exact=True)  # grid {1/4, 1/2}
    f_quarter, f_half = lo.images
    assert set_relation(f_quarter, f_half, orthant, LOWER, 0)[0]
    assert not set_relation(f_half, f_quarter, orthant, LOWER, 0)[0]
    # the shared vertex (1,0) admits no distinct dominator in any image
    assert not set_relation(f_quarter, f_half, orthant, LOWER_STRONG, 0)[0]
    assert not set_relation(f_quarter, f_quarter, orthant, LOWER_STRONG, 0)[0]


def test_strong_relation_finite(orthant):
    a = finite_set(pts((0, 0)))
    b = finite_set(pts((1, 1), (2, 0)))
    holds, cert = set_relation(a, b, orthant, LOWER_STRONG, 0)
    assert holds
    assert verify_certificate(a, b, orthant, cert)
    # shifting by the strong witness margin breaks it: (2,0)-e=(1,-1)
    holds, cert = set_relation(a, b, orthant, LOWER_STRONG, F(1))
    assert not holds and cert.failing_target is not None
    assert verify_certificate(a, b, orthant, cert)


def test_strict_threshold_law(orthant, skew_cone):
    rng = random.Random(13)
    for cone in (orthant, skew_cone):
        for _ in range(15):
            a = finite_set([(F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
                            for _ in range(rng.randint(1, 4))])
            b = finite_set([(F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
                            for _ in range(rng.randint(1, 4))])
            sm = set_margin(a, b, cone)
            probes = {sm + F(d, 3) for d in range(-6, 7)} | {sm, F(0)}
            for eps in probes:
                if eps < 0:
                    continue
                strict, _ = set_relation(a, b, cone, LOWER_STRICT, eps)
                lower, _ = set_relation(a, b, cone, LOWER, eps)
                assert strict == (eps < sm)
                assert lower == (eps <= sm)


def test_implication_chain(orthant):
    rng = random.Random(17)
    for _ in range(25):
        a = finite_set([(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
                        for _ in range(rng.randint(1, 4))])
        b = finite_set([(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
                        for _ in range(rng.randint(1, 4))])
        for eps in (F(0), F(1, 2), F(1)):
            strict, _ = set_relation(a, b, orthant, LOWER_STRICT, eps)
            strong, _ = set_relation(a, b, orthant, LOWER_STRONG, eps)
            lower, _ = set_relation(a, b, orthant, LOWER, eps)
            assert (not strict or strong) and (not strong or lower)


def test_transitivity_at_zero(orthant):
    rng = random.Random(19)
    sets = [finite_set([(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)))
                        for _ in range(rng.randint(1, 3))])
            for _ in range(6)]
    for a, b, c in itertools.product(sets, repeat=3):
        ab = set_relation(a, b, orthant, LOWER, 0)[0]
        bc = set_relation(b, c, orthant, LOWER, 0)[0]
        if ab and bc:
            assert set_relation(a, c, orthant, LOWER, 0)[0]


def test_right_argument_encoding_agreement(orthant):
    # the same right-hand set as a polytope or as its vertex list must
    # produce identical margins against a polytope left argument
    left = polytope(pts((0, 0), (2, -1)))
    verts = pts((1, 1), (3, 0), (2, 2))
    assert set_margin(left, polytope(verts), orthant) == \
        set_margin(left, finite_set(verts), orthant)


def test_certificates_reverify(orthant):
    inst = make_example("mfdvp", exact=True)
    for i, j in itertools.product(range(3), repeat=2):
        for kind in (LOWER, LOWER_STRONG, LOWER_STRICT):
            for eps in (F(0), F(1, 2)):
                holds, cert = set_relation(inst.images[i], inst.images[j],
                                           inst.cone, kind, eps)
                assert cert.holds == holds
                assert verify_certificate(inst.images[i], inst.images[j],
                                          inst.cone, cert)


def test_polytope_certificates_reverify():
    inst = make_example("t_one", {"g": 3}, exact=True)
    for i, j in itertools.product(range(3), repeat=2):
        for kind in (LOWER, LOWER_STRONG, LOWER_STRICT):
            holds, cert = set_relation(inst.images[i], inst.images[j],
                                       inst.cone, kind, 0)
            assert verify_certificate(inst.images[i], inst.images[j],
                                      inst.cone, cert)
