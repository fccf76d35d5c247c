"""Arc algebra: contract examples, brute-force indicator agreement, and the
commutativity / associativity / idempotence properties."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbodies.geom import (
    Arc,
    ArcSet,
    PI,
    PointSet2,
    Tolerances,
    UnitVec2,
    arcset_intersect,
    arcset_is_sph_convex,
    make_arcset,
    wrap_angle,
)
from conftest import sample_arcset_indicator, random_arcset

TAU = 2 * math.pi


def test_wrap_angle_range():
    for phi in (-7.0, -PI, 0.0, PI, TAU, 13.0):
        w = wrap_angle(phi)
        assert 0.0 <= w < TAU
        assert abs(math.cos(w) - math.cos(phi)) < 1e-12


def test_unitvec_exact_angle():
    v = UnitVec2(3 * PI)
    assert v.angle == pytest.approx(PI)
    assert math.hypot(v.x, v.y) == pytest.approx(1.0)


def test_tolerances_validation():
    with pytest.raises(ValueError):
        Tolerances(eps_len=0.0)


def test_point_set_rejects_duplicates():
    with pytest.raises(ValueError):
        PointSet2([(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        PointSet2([])


def test_full_intersect_is_identity():
    x = make_arcset([Arc(1.0, 0.4), Arc(4.0, 0.2)])
    assert arcset_intersect(ArcSet.full(), x) == x
    assert arcset_intersect(x, ArcSet.full()) == x
    assert arcset_intersect(ArcSet.empty(), x).is_empty


def test_halfcircles_touch_at_two_points():
    a = ArcSet.single(0.0, PI / 2)
    b = ArcSet.single(PI, PI / 2)
    x = arcset_intersect(a, b)
    mids = sorted(arc.mid for arc in x)
    assert len(x) == 2
    assert mids[0] == pytest.approx(PI / 2)
    assert mids[1] == pytest.approx(3 * PI / 2)
    assert all(arc.halfwidth < 1e-9 for arc in x)


def test_wide_arcs_intersect_in_two_arcs():
    # derived expectation from a dense indicator comparison
    a = ArcSet.single(0.0, 2 * PI / 3)
    b = ArcSet.single(PI, 2 * PI / 3)
    x = arcset_intersect(a, b)
    assert len(x) == 2
    angles = np.linspace(0, TAU, 100_000, endpoint=False)
    ind = sample_arcset_indicator(a, angles) & sample_arcset_indicator(b, angles)
    got = sample_arcset_indicator(x, angles)
    # disagreement only possible within eps of the four endpoints
    assert (ind != got).sum() <= 8


def test_sph_convex_examples():
    assert arcset_is_sph_convex(ArcSet.point(1.3))
    assert arcset_is_sph_convex(ArcSet.single(0.3, PI / 2))
    assert not arcset_is_sph_convex(make_arcset([Arc(0.0, 0.1), Arc(2.0, 0.1)]))
    assert not arcset_is_sph_convex(ArcSet.single(1.0, 0.6 * PI))
    assert not arcset_is_sph_convex(ArcSet.full())
    assert not arcset_is_sph_convex(ArcSet.empty())


def test_sph_convex_matches_planar_hull_sample():
    # an arc wider than a halfcircle spans a non-convex direction cone: some
    # hull direction of its endpoints' cone is missing from the arc
    wide = ArcSet.single(1.0, 0.6 * PI)
    lo, hi = 1.0 - 0.6 * PI, 1.0 + 0.6 * PI
    # chord midpoint direction of the endpoints points opposite the arc mid
    vx = math.cos(lo) + math.cos(hi)
    vy = math.sin(lo) + math.sin(hi)
    opposite = math.atan2(vy, vx)
    assert not wide.contains(opposite, 1e-9)


def test_canonical_merges_touching():
    x = make_arcset([Arc(0.0, 0.5), Arc(1.0, 0.5)])
    assert len(x) == 1
    assert x.arcs[0].halfwidth == pytest.approx(1.0)


def test_canonical_wraps_to_full():
    x = make_arcset([Arc(0.0, PI / 2 + 0.01), Arc(PI, PI / 2 + 0.01)])
    assert x.is_full


def test_measure_preserved_under_self_intersection(rng):
    for _ in range(200):
        x = random_arcset(rng)
        y = arcset_intersect(x, x)
        assert abs(x.measure() - y.measure()) < 1e-7


def test_intersect_commutative_associative_idempotent(rng):
    for _ in range(1000):
        a, b, c = (random_arcset(rng) for _ in range(3))
        ab = arcset_intersect(a, b)
        ba = arcset_intersect(b, a)
        assert ab.approx_equal(ba)
        lhs = arcset_intersect(ab, c)
        rhs = arcset_intersect(a, arcset_intersect(b, c))
        # associativity up to eps-merging: compare sampled indicators
        angles = np.linspace(0, TAU, 733, endpoint=False)
        il = sample_arcset_indicator(lhs, angles, 1e-7)
        ir = sample_arcset_indicator(rhs, angles, 1e-7)
        strict_l = sample_arcset_indicator(lhs, angles, -1e-7)
        strict_r = sample_arcset_indicator(rhs, angles, -1e-7)
        assert (strict_l & ~ir).sum() == 0
        assert (strict_r & ~il).sum() == 0
        assert arcset_intersect(a, a).approx_equal(a)


@settings(max_examples=150, deadline=None)
@given(
    m1=st.floats(0, TAU, allow_nan=False),
    w1=st.floats(0, PI * 0.98),
    m2=st.floats(0, TAU, allow_nan=False),
    w2=st.floats(0, PI * 0.98),
)
def test_intersection_indicator_agreement(m1, w1, m2, w2):
    a = ArcSet.single(m1, w1)
    b = ArcSet.single(m2, w2)
    x = arcset_intersect(a, b)
    angles = np.random.default_rng(7).uniform(0, TAU, 10_000)
    ind_and = sample_arcset_indicator(a, angles, 0.0) & sample_arcset_indicator(b, angles, 0.0)
    got_loose = sample_arcset_indicator(x, angles, 1e-7)
    got_strict = sample_arcset_indicator(x, angles, -1e-7)
    # computed set sandwiches the true intersection within eps
    assert not (ind_and & ~got_loose).any()
    assert not (got_strict & ~ind_and).any()
