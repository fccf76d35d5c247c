"""Shared fixtures and independent reference oracles.

The oracles here are deliberately naive (dense sampling, brute-force maxima)
and never call the code paths they are used to check.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from rbodies.geom import ArcSet, Point2, PointSet2

BF_OUT = "out"
BF_IN = "in"
BF_AMBIGUOUS = "boundary-ambiguous"


def bruteforce_membership(E: PointSet2, y: Point2, R: float, delta: float) -> str:
    """Hulloid membership by exhausting a delta-pitch lattice of candidate
    ball centers over D(y, R), plus a rim ring.

    "out" is certain (an avoiding center was found); "in" is certain up to
    the 1-Lipschitz covering argument (max distance < R - 0.75*delta);
    anything else is ambiguous at this resolution.
    """
    sites = E.as_array()
    n = int(math.ceil(R / delta))
    ax = y.x + np.arange(-n, n + 1) * delta
    ay = y.y + np.arange(-n, n + 1) * delta
    xx, yy = np.meshgrid(ax, ay)
    rr2 = (xx - y.x) ** 2 + (yy - y.y) ** 2
    inside = rr2 < R * R
    xs, ys = xx[inside], yy[inside]
    # rim ring just inside the circle, angular pitch ~ delta
    m = int(math.ceil(2 * math.pi * R / delta))
    th = np.arange(m) * (2 * math.pi / m)
    xs = np.concatenate([xs, y.x + (R - delta / 2) * np.cos(th)])
    ys = np.concatenate([ys, y.y + (R - delta / 2) * np.sin(th)])
    mind2 = np.full(xs.shape, np.inf)
    for bx, by in sites:
        np.minimum(mind2, (xs - bx) ** 2 + (ys - by) ** 2, out=mind2)
    mind = np.sqrt(mind2)
    if (mind >= R).any():
        return BF_OUT
    if mind.max() < R - 0.75 * delta:
        return BF_IN
    return BF_AMBIGUOUS


def sample_arcset_indicator(a: ArcSet, angles: np.ndarray, eps: float = 1e-9) -> np.ndarray:
    return np.array([a.contains(float(phi), eps) for phi in angles], dtype=bool)


def random_arcset(rng: np.random.Generator) -> ArcSet:
    from rbodies.geom import Arc, make_arcset

    k = int(rng.integers(1, 4))
    arcs = [Arc(rng.uniform(0, 2 * math.pi), rng.uniform(0, math.pi * 0.95)) for _ in range(k)]
    return make_arcset(arcs)


def random_point_set(rng: np.random.Generator, n_max: int = 8, scale: float = 1.5) -> PointSet2:
    while True:
        n = int(rng.integers(2, n_max + 1))
        pts = rng.uniform(-scale, scale, size=(n, 2))
        ok = True
        for i in range(n):
            for j in range(i + 1, n):
                if np.hypot(*(pts[i] - pts[j])) < 1e-3:
                    ok = False
        if ok:
            return PointSet2([Point2(float(x), float(y)) for x, y in pts])


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(0xC0FFEE)
