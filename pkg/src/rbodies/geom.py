"""Planar primitives and closed-arc algebra on the unit circle.

Unit vectors are stored as angles in [0, 2*pi); an ArcSet is a canonical
list of pairwise disjoint closed arcs.  All values are immutable and every
operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

TAU = 2.0 * math.pi
PI = math.pi


@dataclass(frozen=True)
class Tolerances:
    """Global tolerance policy: absolute length / angle eps and the grid
    agreement band in pixel units."""

    eps_len: float = 1e-9
    eps_ang: float = 1e-9
    band_px: float = 1.5

    def __post_init__(self):
        if self.eps_len <= 0 or self.eps_ang <= 0 or self.band_px <= 0:
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerances()


def wrap_angle(phi: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    phi = math.fmod(phi, TAU)
    return phi + TAU if phi < 0.0 else phi


def ang_dist(a: float, b: float) -> float:
    """Geodesic distance between two angles, in [0, pi]."""
    d = abs(math.fmod(a - b, TAU))
    return min(d, TAU - d)


@dataclass(frozen=True)
class Point2:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("coordinates must be finite")

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def scaled(self, s: float) -> "Point2":
        return Point2(self.x * s, self.y * s)

    def dist(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def angle(self) -> float:
        return wrap_angle(math.atan2(self.y, self.x))

    def dot(self, other: "Point2") -> float:
        return self.x * other.x + self.y * other.y


@dataclass(frozen=True)
class UnitVec2:
    """Direction on S^1, held exactly as an angle so no normalization drift."""

    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", wrap_angle(self.angle))

    @property
    def x(self) -> float:
        return math.cos(self.angle)

    @property
    def y(self) -> float:
        return math.sin(self.angle)

    def point(self) -> Point2:
        return Point2(self.x, self.y)


@dataclass(frozen=True)
class Ball2:
    center: Point2
    radius: float
    closed: bool = False

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def contains(self, p: Point2, eps: float = 0.0) -> bool:
        d = self.center.dist(p)
        return d <= self.radius + eps if self.closed else d < self.radius - eps


@dataclass(frozen=True)
class Arc:
    """Closed arc {phi : |phi - mid| <= halfwidth (mod 2*pi)}.

    halfwidth == pi means the full circle; halfwidth == 0 is a single point.
    """

    mid: float
    halfwidth: float

    def __post_init__(self):
        if not (0.0 <= self.halfwidth <= PI + 1e-12):
            raise ValueError("halfwidth must lie in [0, pi]")
        object.__setattr__(self, "mid", wrap_angle(self.mid))
        object.__setattr__(self, "halfwidth", min(self.halfwidth, PI))

    @property
    def length(self) -> float:
        return 2.0 * self.halfwidth

    @property
    def lo(self) -> float:
        return self.mid - self.halfwidth

    @property
    def hi(self) -> float:
        return self.mid + self.halfwidth

    def contains(self, phi: float, eps: float = 0.0) -> bool:
        return ang_dist(phi, self.mid) <= self.halfwidth + eps


@dataclass(frozen=True)
class ArcSet:
    """Canonical finite union of disjoint closed arcs (possibly empty or the
    full circle).  Build through :func:`make_arcset`, not directly."""

    arcs: tuple[Arc, ...] = ()

    @staticmethod
    def empty() -> "ArcSet":
        return ArcSet(())

    @staticmethod
    def full() -> "ArcSet":
        return ArcSet((Arc(0.0, PI),))

    @staticmethod
    def single(mid: float, halfwidth: float) -> "ArcSet":
        return make_arcset([Arc(mid, halfwidth)])

    @staticmethod
    def point(phi: float) -> "ArcSet":
        return ArcSet((Arc(phi, 0.0),))

    def __iter__(self):
        return iter(self.arcs)

    def __len__(self) -> int:
        return len(self.arcs)

    @property
    def is_empty(self) -> bool:
        return not self.arcs

    @property
    def is_full(self) -> bool:
        return len(self.arcs) == 1 and self.arcs[0].halfwidth >= PI

    def measure(self) -> float:
        if self.is_full:
            return TAU
        return sum(a.length for a in self.arcs)

    def contains(self, phi: float, eps: float = 0.0) -> bool:
        if self.is_full:
            return True
        return any(a.contains(phi, eps) for a in self.arcs)

    def approx_equal(self, other: "ArcSet", eps: float = 1e-9) -> bool:
        if len(self.arcs) != len(other.arcs):
            return False
        return all(
            ang_dist(a.mid, b.mid) <= eps and abs(a.halfwidth - b.halfwidth) <= eps
            for a, b in zip(self.arcs, other.arcs)
        )


def _intervals(arcs) -> list[tuple[float, float]]:
    """Arcs as (start, end) with start in [0, 2*pi) and end = start + length."""
    out = []
    for a in arcs:
        s = wrap_angle(a.mid - a.halfwidth)
        out.append((s, s + a.length))
    return out


def make_arcset(arcs, eps: float = DEFAULT_TOL.eps_ang) -> ArcSet:
    """Canonicalize a list of arcs: sort, merge arcs whose gap is < eps, and
    collapse near-full coverage to the full circle."""
    arcs = [a for a in arcs if a is not None]
    if not arcs:
        return ArcSet.empty()
    if any(a.halfwidth >= PI - eps / 2 for a in arcs):
        return ArcSet.full()
    ivs = sorted(_intervals(arcs))
    merged = [list(ivs[0])]
    for s, e in ivs[1:]:
        if s <= merged[-1][1] + eps:
            merged[-1][1] = max(merged[-1][1], e)
        else:
            merged.append([s, e])
    # circular wrap: last interval may spill past 2*pi and touch the first
    if len(merged) > 1 and merged[-1][1] >= merged[0][0] + TAU - eps:
        s_last, e_last = merged.pop()
        merged[0][0] = s_last - TAU
        merged[0][1] = max(merged[0][1], e_last - TAU)
        while len(merged) > 1 and merged[0][1] + eps >= merged[1][0]:
            _, e_next = merged.pop(1)
            merged[0][1] = max(merged[0][1], e_next)
    if merged and merged[0][1] - merged[0][0] >= TAU - eps:
        return ArcSet.full()
    out = []
    for s, e in merged:
        hw = max(0.0, (e - s) / 2.0)
        out.append(Arc(wrap_angle((s + e) / 2.0), min(hw, PI)))
    out.sort(key=lambda a: a.mid)
    return ArcSet(tuple(out))


def arcset_intersect(a: ArcSet, b: ArcSet, eps: float = DEFAULT_TOL.eps_ang) -> ArcSet:
    """Set intersection of two canonical arc sets.

    Closed arcs that meet only at an endpoint intersect in a point arc.
    """
    if a.is_empty or b.is_empty:
        return ArcSet.empty()
    if a.is_full:
        return b
    if b.is_full:
        return a
    pieces = []
    ivs_a = _intervals(a.arcs)
    ivs_b = _intervals(b.arcs)
    for s1, e1 in ivs_a:
        for s2, e2 in ivs_b:
            for shift in (-TAU, 0.0, TAU):
                lo = max(s1, s2 + shift)
                hi = min(e1, e2 + shift)
                if hi >= lo - eps:
                    hi = max(hi, lo)
                    pieces.append(Arc(wrap_angle((lo + hi) / 2.0), (hi - lo) / 2.0))
    return make_arcset(pieces, eps)


def arcset_is_sph_convex(a: ArcSet, eps: float = DEFAULT_TOL.eps_ang) -> bool:
    """True iff the set is a single closed arc of halfwidth <= pi/2, i.e. the
    cone it spans in the plane is convex and fits in a halfplane."""
    return len(a.arcs) == 1 and a.arcs[0].halfwidth <= PI / 2.0 + eps


@dataclass(frozen=True)
class PointSet2:
    """Finite set of distinct planar points."""

    points: tuple[Point2, ...]

    def __init__(self, points, eps: float = DEFAULT_TOL.eps_len):
        pts = tuple(p if isinstance(p, Point2) else Point2(*p) for p in points)
        if not pts:
            raise ValueError("point set must be nonempty")
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if pts[i].dist(pts[j]) <= eps:
                    raise ValueError("points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def dist_to(self, y: Point2) -> float:
        return min(y.dist(p) for p in self.points)

    def as_array(self):
        import numpy as np

        return np.array([(p.x, p.y) for p in self.points], dtype=float)
