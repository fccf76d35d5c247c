"""R-cones: membership, duality, spherical hulls, support recovery and the
convexity equivalence, with brute-force direction sampling as the oracle."""

import math

import numpy as np
import pytest

from rbodies.cones import (
    ConeSpec,
    Sector2,
    cone_contains,
    cone_contains_many,
    cone_equivalence_sample,
    dual_of_sector,
    dual_sector,
    normal_arcs,
    sector_to_arcs,
    support_recovery_witness,
    tangent_cone,
)
from rbodies.geom import PI, ArcSet, Point2, UnitVec2

TAU = 2 * math.pi


def test_cone_contains_trivials():
    c = ConeSpec(R=1.0, angles=(0.0,))
    assert cone_contains(c, Point2(-1.0, 0.0))  # distance 2 from center Rv
    assert not cone_contains(c, Point2(0.5, 0.0))
    assert cone_contains(c, Point2(0.0, 0.0))  # the vertex is on every boundary


def test_cone_spec_validation():
    with pytest.raises(ValueError):
        ConeSpec(R=0.0, angles=(0.0,))
    with pytest.raises(ValueError):
        ConeSpec(R=1.0)
    with pytest.raises(ValueError):
        ConeSpec(R=1.0, angles=(0.0,), arcs=ArcSet.single(0.0, 0.1))


def test_dual_single_direction_halfplane():
    d = dual_sector(ConeSpec(R=1.0, angles=(0.0,)))
    assert d.kind == "halfplane"
    assert d.contains(Point2(1.0, 0.7))
    assert d.contains(Point2(0.0, -1.0))  # boundary of the halfplane
    assert not d.contains(Point2(-0.5, 0.1))


def test_dual_two_orthogonal_first_quadrant():
    d = dual_sector(ConeSpec(R=1.0, angles=(0.0, PI / 2)))
    assert d.kind == "sector"
    assert d.lo == pytest.approx(0.0)
    assert d.hi == pytest.approx(PI / 2)


def test_dual_spanning_generators_zero_cone():
    angles = (0.0, 3 * PI / 4, 3 * PI / 2)
    d = dual_sector(ConeSpec(R=1.0, angles=angles))
    assert d.kind == "zero"
    # brute force: no direction satisfies all three inequalities
    phis = np.arange(10_000) * (TAU / 10_000)
    ok = np.ones(10_000, dtype=bool)
    for a in angles:
        ok &= np.cos(phis - a) >= -1e-12
    assert not ok.any()


def test_dual_antipodal_pair_is_line():
    d = dual_sector(ConeSpec(R=1.0, angles=(0.3, 0.3 + PI)))
    assert d.kind == "line"
    assert d.lo == pytest.approx(0.3 + PI / 2)


def test_tangent_single_direction():
    t = tangent_cone(ConeSpec(R=1.0, angles=(0.0,)))
    assert t.kind == "halfplane"
    assert t.contains(Point2(-1.0, 0.3))
    assert not t.contains(Point2(1.0, 0.3))


def test_tangent_quarter_arc():
    c = ConeSpec(R=1.0, arcs=ArcSet.single(PI / 4, PI / 4))  # arc [0, pi/2]
    t = tangent_cone(c)
    assert t.kind == "sector"
    lo, hi = t.lo % TAU, t.hi % TAU
    assert lo == pytest.approx(PI)
    assert hi == pytest.approx(3 * PI / 2)


def test_tangent_rays_remain_in_cone(rng):
    # 20 random generator sets in a hemisphere; rays of -K* stay in the cone
    # with strictly positive clearance away from the vertex
    for trial in range(20):
        base = rng.uniform(0, TAU)
        k = int(rng.integers(1, 5))
        angles = tuple(base + rng.uniform(0, PI * 0.98, k))
        c = ConeSpec(R=2.0, angles=angles)
        t = tangent_cone(c)
        dirs = t.sample_dirs(100)
        assert dirs, (trial, t.kind)
        for phi in dirs:
            for lam in (0.1, 0.5, 1.0, 3.0, 10.0):
                x = Point2(lam * 2.0 * math.cos(phi), lam * 2.0 * math.sin(phi))
                assert cone_contains(c, x)
                clearance = min(
                    math.hypot(x.x - 2 * math.cos(a), x.y - 2 * math.sin(a)) - 2.0
                    for a in angles
                )
                assert clearance > 0.0


def test_normal_arcs_examples():
    n = normal_arcs(ConeSpec(R=1.0, angles=(0.0, PI / 2)))
    assert len(n) == 1
    assert n.arcs[0].mid == pytest.approx(PI / 4)
    assert n.arcs[0].halfwidth == pytest.approx(PI / 4)
    n1 = normal_arcs(ConeSpec(R=1.0, angles=(1.1,)))
    assert n1.approx_equal(ArcSet.point(1.1))
    n2 = normal_arcs(ConeSpec(R=1.0, angles=(1.1, 1.1 + PI)))
    assert len(n2) == 2
    assert all(a.halfwidth == 0.0 for a in n2)


def test_normal_arcs_halfplane_and_full():
    n = normal_arcs(ConeSpec(R=1.0, angles=(0.0, PI / 2, PI)))
    assert len(n) == 1
    assert n.arcs[0].halfwidth == pytest.approx(PI / 2)
    nf = normal_arcs(ConeSpec(R=1.0, angles=(0.0, 2 * PI / 3, 4 * PI / 3)))
    assert nf.is_full


def test_duality_consistency_normal_equals_neg_dual_of_tangent(rng):
    for _ in range(40):
        k = int(rng.integers(1, 5))
        if rng.random() < 0.5:
            angles = tuple(rng.uniform(0, TAU, k))
            c = ConeSpec(R=1.0, angles=angles)
        else:
            c = ConeSpec(
                R=1.0,
                arcs=ArcSet.single(rng.uniform(0, TAU), rng.uniform(0, PI * 0.9)),
            )
        lhs = sector_to_arcs(dual_of_sector(tangent_cone(c)).negated())
        assert lhs.approx_equal(normal_arcs(c), 1e-9)


def test_monotone_generators_shrink_cone(rng):
    base = (0.2, 1.1)
    bigger = base + (2.0,)
    c1 = ConeSpec(R=1.0, angles=base)
    c2 = ConeSpec(R=1.0, angles=bigger)
    pts = rng.uniform(-4, 4, size=(4000, 2))
    in1 = cone_contains_many(c1, pts)
    in2 = cone_contains_many(c2, pts)
    assert not (in2 & ~in1).any()


def test_support_recovery_single_generator():
    c = ConeSpec(R=1.0, angles=(0.7,))
    assert support_recovery_witness(c, UnitVec2(0.7)).supports
    w = support_recovery_witness(c, UnitVec2(0.7 + 0.2))
    assert not w.supports
    # witnesses accumulate at 2Rv
    assert w.witness.dist(Point2(2 * math.cos(0.9), 2 * math.sin(0.9))) < 0.2


def test_support_recovery_two_generators_midway():
    c = ConeSpec(R=1.0, angles=(0.0, 2 * PI / 3))
    assert not support_recovery_witness(c, UnitVec2(PI / 3)).supports


def test_support_recovery_arc_member():
    c = ConeSpec(R=1.0, arcs=ArcSet.single(PI / 4, PI / 4))
    assert support_recovery_witness(c, UnitVec2(PI / 4)).supports


def test_support_recovery_completeness_360(rng):
    c = ConeSpec(R=1.0, angles=(0.0, 2 * PI / 3))
    supported = []
    for k in range(360):
        phi = k * TAU / 360
        if support_recovery_witness(c, UnitVec2(phi), samples=256).supports:
            supported.append(k)
    assert supported == [0, 120]


def test_vertex_support_every_generator(rng):
    for _ in range(10):
        angles = tuple(rng.uniform(0, TAU, int(rng.integers(1, 6))))
        c = ConeSpec(R=1.5, angles=angles)
        for a in angles:
            assert support_recovery_witness(c, UnitVec2(a)).supports


def test_equivalence_arc_vs_its_hull_equal():
    c1 = ConeSpec(R=1.0, arcs=ArcSet.single(PI / 4, PI / 4))
    c2 = ConeSpec(R=1.0, arcs=normal_arcs(c1))
    rep = cone_equivalence_sample(c1, c2)
    assert rep.passed, rep.witness


def test_equivalence_endpoints_vs_arc_witness():
    c1 = ConeSpec(R=1.0, angles=(0.0, PI / 2))
    c2 = ConeSpec(R=1.0, arcs=ArcSet.single(PI / 4, PI / 4))
    rep = cone_equivalence_sample(c1, c2)
    assert not rep.passed
    assert rep.details["only_in_first"] > 0
    assert rep.details["only_in_second"] == 0  # C_K1 ⊇ C_K2 always
    x, y = rep.witness["point"]
    # witness avoids the endpoint balls but not some interior generator ball
    assert math.hypot(x - 1, y) >= 1 and math.hypot(x, y - 1) >= 1


def test_equivalence_same_spec_trivially_equal():
    c = ConeSpec(R=2.0, angles=(0.3, 1.4))
    assert cone_equivalence_sample(c, c).passed


def test_sector_negation_involution():
    s = Sector2("sector", 0.3, 1.1)
    assert s.negated().negated().lo % TAU == pytest.approx(0.3)
