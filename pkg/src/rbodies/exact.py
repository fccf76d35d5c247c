"""Exact planar computations for finite point sets: supporting-direction
arcs, two independent membership oracles for the R-hulloid, supporting-circle
contact points, and the spindle (lens) predicate.

Membership verdicts are three-valued; queries within eps of the hulloid
boundary come back "boundary-ambiguous" instead of a coin flip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geom import (
    DEFAULT_TOL,
    TAU,
    ArcSet,
    Point2,
    PointSet2,
    UnitVec2,
    ang_dist,
    arcset_intersect,
    arcset_is_sph_convex,
)
from .reports import NotSupportingError

IN = "in"
OUT = "out"
AMBIGUOUS = "boundary-ambiguous"


@dataclass(frozen=True)
class SupportArcs:
    """Directions whose radius-R ball touches `base` and avoids the set."""

    base: Point2
    R: float
    arcs: ArcSet


@dataclass(frozen=True)
class ContactReport:
    """Points of the set lying on the supporting sphere through base + R*v."""

    base: Point2
    direction: UnitVec2
    R: float
    contacts: tuple[Point2, ...]


@dataclass(frozen=True)
class LensSpec:
    """Spindle of two points: intersection of all closed R-balls containing
    both; requires 0 < |b1-b2| < 2R."""

    b1: Point2
    b2: Point2
    R: float

    def __post_init__(self):
        d = self.b1.dist(self.b2)
        if not (0.0 < d < 2.0 * self.R):
            raise ValueError("degenerate lens spec: need 0 < |b1-b2| < 2R")

    def extreme_centers(self) -> tuple[Point2, Point2]:
        """The two centers at distance exactly R from both points."""
        d = self.b1.dist(self.b2)
        m = Point2((self.b1.x + self.b2.x) / 2, (self.b1.y + self.b2.y) / 2)
        q = math.sqrt(max(self.R * self.R - d * d / 4.0, 0.0))
        ux, uy = (self.b2.x - self.b1.x) / d, (self.b2.y - self.b1.y) / d
        return (
            Point2(m.x - uy * q, m.y + ux * q),
            Point2(m.x + uy * q, m.y - ux * q),
        )


def supporting_arcs(
    E: PointSet2, a: Point2, R: float, eps_ang: float | None = None
) -> SupportArcs:
    """Arc set of unit directions v with <v, a-b> >= -|a-b|^2 / 2R for every
    b in E other than a; points at distance >= 2R impose nothing."""
    if R <= 0:
        raise ValueError("R must be positive")
    eps_ang = DEFAULT_TOL.eps_ang if eps_ang is None else eps_ang
    arcs = ArcSet.full()
    for b in E:
        d = a.dist(b)
        if d <= DEFAULT_TOL.eps_len or d >= 2.0 * R:
            continue
        # cos(phi - psi) >= -d/2R, psi the direction of a - b
        psi = (a - b).angle()
        hw = math.acos(max(-1.0, min(1.0, -d / (2.0 * R))))
        arcs = arcset_intersect(arcs, ArcSet.single(psi, hw), eps_ang)
        if arcs.is_empty:
            break
    return SupportArcs(a, R, arcs)


def _circumcenter(p1: Point2, p2: Point2, p3: Point2) -> Point2 | None:
    ax, ay, bx, by, cx, cy = p1.x, p1.y, p2.x, p2.y, p3.x, p3.y
    d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
    scale = max(abs(v) for v in (ax, ay, bx, by, cx, cy)) + 1.0
    if abs(d) < 1e-14 * scale * scale:
        return None
    a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
    ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d
    uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d
    return Point2(ux, uy)


def _max_dist_candidates(E: PointSet2, y: Point2, R: float) -> list[Point2]:
    """Candidate maximizers of dist(., E) over the closed disk D(y, R).

    Superset of the Voronoi candidates (vertices in the disk, edge-circle
    crossings, per-site antipodal points); extra points are harmless since
    each candidate only contributes its true distance.
    """
    pts = list(E)
    cands: list[Point2] = [y]
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                c = _circumcenter(pts[i], pts[j], pts[k])
                if c is not None and c.dist(y) <= R:
                    cands.append(c)
    for i in range(n):
        for j in range(i + 1, n):
            b1, b2 = pts[i], pts[j]
            m = Point2((b1.x + b2.x) / 2, (b1.y + b2.y) / 2)
            d = b1.dist(b2)
            if d <= DEFAULT_TOL.eps_len:
                continue
            ux, uy = -(b2.y - b1.y) / d, (b2.x - b1.x) / d
            # bisector m + t*(ux, uy) meets the circle |x - y| = R
            wx, wy = m.x - y.x, m.y - y.y
            bq = wx * ux + wy * uy
            cq = wx * wx + wy * wy - R * R
            disc = bq * bq - cq
            if disc < 0:
                continue
            sq = math.sqrt(disc)
            for t in (-bq - sq, -bq + sq):
                cands.append(Point2(m.x + t * ux, m.y + t * uy))
    for b in pts:
        d = y.dist(b)
        if d > DEFAULT_TOL.eps_len:
            cands.append(Point2(y.x + R * (y.x - b.x) / d, y.y + R * (y.y - b.y) / d))
    return cands


def membership_corR(E: PointSet2, y: Point2, R: float, eps: float | None = None) -> str:
    """Hulloid membership by maximizing dist(., E) over the disk of candidate
    ball centers around the query.

    "out" iff some center x with |x-y| < R has dist(x, E) >= R.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    eps = DEFAULT_TOL.eps_len if eps is None else eps
    if E.dist_to(y) <= eps:
        return IN
    best = -1.0
    best_interior = False
    for x in _max_dist_candidates(E, y, R):
        rc = x.dist(y)
        if rc > R + eps:
            continue
        d = E.dist_to(x)
        if d > best + eps:
            best = d
            best_interior = rc < R - eps
        elif d > best - eps:
            best = max(best, d)
            best_interior = best_interior or rc < R - eps
    if best > R + eps:
        return OUT
    if best < R - eps:
        return IN
    return OUT if best_interior else AMBIGUOUS


def _min_dist_to_center_arcs(y: Point2, a: Point2, R: float, arcs: ArcSet) -> float:
    """min over v in arcs of |y - (a + R v)|, in closed form per arc."""
    w = y - a
    rho = w.norm()
    if rho <= DEFAULT_TOL.eps_len:
        return R
    beta = w.angle()
    best = math.inf
    for arc in arcs.arcs:
        delta = max(0.0, ang_dist(beta, arc.mid) - arc.halfwidth)
        d = math.sqrt(max(rho * rho + R * R - 2.0 * R * rho * math.cos(delta), 0.0))
        best = min(best, d)
    return best


def membership_corR_cones(
    E: PointSet2,
    y: Point2,
    R: float,
    profile: list[SupportArcs] | None = None,
    eps: float | None = None,
) -> str:
    """Hulloid membership through the R-cone representation: inside iff the
    query is R-close to the set and outside every supporting ball."""
    if R <= 0:
        raise ValueError("R must be positive")
    eps = DEFAULT_TOL.eps_len if eps is None else eps
    d0 = E.dist_to(y)
    if d0 <= eps:
        return IN
    if d0 > R + eps:
        return OUT
    if profile is None:
        profile = [supporting_arcs(E, a, R) for a in E]
    margin = math.inf
    for sa in profile:
        if sa.arcs.is_empty:
            continue  # vacuous: no supporting balls at this point
        m = _min_dist_to_center_arcs(y, sa.base, R, sa.arcs)
        margin = min(margin, m - R)
        if margin < -eps:
            return OUT
    if d0 >= R - eps or margin <= eps:
        return AMBIGUOUS
    return IN


def contact_points(
    E: PointSet2,
    a: Point2,
    v: UnitVec2,
    R: float,
    contact_eps: float | None = None,
) -> ContactReport:
    """Points of E on the boundary of the supporting ball B(a + R v, R).

    Raises NotSupportingError if v fails the supporting inequality for some
    point of E.
    """
    if R <= 0:
        raise ValueError("R must be positive")
    eps = DEFAULT_TOL.eps_len
    contact_eps = max(eps, 1e-9 * R) if contact_eps is None else contact_eps
    for b in E:
        d = a.dist(b)
        lhs = v.x * (a.x - b.x) + v.y * (a.y - b.y)
        if lhs < -d * d / (2.0 * R) - eps * (1.0 + d):
            raise NotSupportingError("not supporting")
    cx, cy = a.x + R * v.x, a.y + R * v.y
    contacts = tuple(
        b for b in E if abs(math.hypot(b.x - cx, b.y - cy) - R) <= contact_eps
    )
    return ContactReport(a, v, R, contacts)


def lens_contains(lens: LensSpec, x: Point2, eps: float | None = None) -> bool:
    """x lies in every closed R-ball containing b1 and b2.

    Max of |x - c| over the convex region of admissible centers, evaluated at
    its extreme points: the two circle intersections plus the per-circle point
    farthest from x when it falls inside the other disk.
    """
    eps = DEFAULT_TOL.eps_len if eps is None else eps
    if x.dist(lens.b1) <= eps or x.dist(lens.b2) <= eps:
        return True
    c1, c2 = lens.extreme_centers()
    cands = [c1, c2]
    for b, other in ((lens.b1, lens.b2), (lens.b2, lens.b1)):
        d = x.dist(b)
        far = Point2(b.x + lens.R * (b.x - x.x) / d, b.y + lens.R * (b.y - x.y) / d)
        if far.dist(other) <= lens.R + eps:
            cands.append(far)
    worst = max(x.dist(c) for c in cands)
    return worst <= lens.R + eps


@dataclass(frozen=True)
class ProfileEntry:
    point: Point2
    arcs: ArcSet
    sph_convex: bool


@dataclass(frozen=True)
class ConvexityProfile:
    entries: tuple[ProfileEntry, ...]
    any_empty: bool
    all_convex: bool


def nr_convexity_profile(E: PointSet2, R: float) -> ConvexityProfile:
    """Supporting arcs and spherical-convexity verdict at every point."""
    entries = []
    for a in E:
        sa = supporting_arcs(E, a, R)
        entries.append(ProfileEntry(a, sa.arcs, arcset_is_sph_convex(sa.arcs)))
    return ConvexityProfile(
        tuple(entries),
        any_empty=any(e.arcs.is_empty for e in entries),
        all_convex=all(e.sph_convex for e in entries),
    )


def supporting_centers(
    E: PointSet2, b1: Point2, b2: Point2, R: float, eps: float | None = None
) -> list[Point2]:
    """Centers at distance exactly R from b1 and b2 whose open ball avoids E."""
    eps = max(DEFAULT_TOL.eps_len, 1e-9 * R) if eps is None else eps
    lens = LensSpec(b1, b2, R)
    return [c for c in lens.extreme_centers() if E.dist_to(c) >= R - eps]


def boundary_arc_points(
    E: PointSet2, b1: Point2, b2: Point2, R: float, t: float = 0.5
) -> list[tuple[Point2, UnitVec2]]:
    """Construction helper for tests: points on the hulloid boundary arc cut
    by a supporting circle through b1, b2, with the inward direction to the
    circle center.  t parametrizes the minor arc from b1 (0) to b2 (1)."""
    out = []
    for c in supporting_centers(E, b1, b2, R):
        a1 = (b1 - c).angle()
        a2 = (b2 - c).angle()
        delta = math.remainder(a2 - a1, TAU)  # shorter way, in (-pi, pi]
        phi = a1 + t * delta
        a = Point2(c.x + R * math.cos(phi), c.y + R * math.sin(phi))
        out.append((a, UnitVec2((c - a).angle())))
    return out
