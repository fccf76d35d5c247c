"""R-cones with vertex at the origin: membership, dual-cone tangents,
spherical convex hulls of the generator set, and support recovery.

A cone is cut out by removing every open ball B(R*v, R) for v in the
generator set K; the vertex o lies on all their boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geom import (
    DEFAULT_TOL,
    PI,
    TAU,
    Arc,
    ArcSet,
    Point2,
    UnitVec2,
    ang_dist,
    make_arcset,
    wrap_angle,
)
from .reports import CheckReport

GOLDEN_FRAC = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ConeSpec:
    """Generator set K on the unit circle (finite angles or an arc set) and
    the ball radius R."""

    R: float
    angles: tuple[float, ...] = ()
    arcs: ArcSet | None = None

    def __post_init__(self):
        if self.R <= 0:
            raise ValueError("R must be positive")
        object.__setattr__(self, "angles", tuple(wrap_angle(a) for a in self.angles))
        has_angles = len(self.angles) > 0
        has_arcs = self.arcs is not None and not self.arcs.is_empty
        if has_angles == has_arcs:
            raise ValueError("exactly one of angles / arcs must be nonempty")

    def generator_arcset(self) -> ArcSet:
        if self.arcs is not None:
            return self.arcs
        return make_arcset([Arc(a, 0.0) for a in self.angles])


@dataclass(frozen=True)
class Sector2:
    """Closed convex planar cone: zero, ray, line, sector (aperture < pi),
    halfplane, or the full plane.  lo/hi are CCW boundary angles; ray and
    line store their direction in lo."""

    kind: str
    lo: float = 0.0
    hi: float = 0.0

    def __post_init__(self):
        if self.kind not in ("zero", "ray", "line", "sector", "halfplane", "full"):
            raise ValueError(f"unknown sector kind {self.kind!r}")

    @property
    def aperture(self) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "full":
            return TAU
        if self.kind in ("ray", "line"):
            return 0.0
        return wrap_angle(self.hi - self.lo) if self.hi != self.lo else 0.0

    def contains(self, p: Point2, tol: float = 1e-9) -> bool:
        n = p.norm()
        if n <= tol:
            return True
        if self.kind == "zero":
            return False
        if self.kind == "full":
            return True
        ux, uy = math.cos(self.lo), math.sin(self.lo)
        cross_lo = ux * p.y - uy * p.x
        if self.kind == "ray":
            return abs(cross_lo) <= tol * n and ux * p.x + uy * p.y > 0
        if self.kind == "line":
            return abs(cross_lo) <= tol * n
        if self.kind == "halfplane":
            return cross_lo >= -tol * n
        vx, vy = math.cos(self.hi), math.sin(self.hi)
        cross_hi = vx * p.y - vy * p.x
        return cross_lo >= -tol * n and cross_hi <= tol * n

    def sample_dirs(self, n: int) -> list[float]:
        """Deterministic directions inside the cone (empty for the zero cone)."""
        if self.kind == "zero":
            return []
        if self.kind == "ray":
            return [self.lo]
        if self.kind == "line":
            return [self.lo, wrap_angle(self.lo + PI)]
        if self.kind == "full":
            return [TAU * i / n for i in range(n)]
        span = self.aperture
        if n == 1:
            return [wrap_angle(self.lo + span / 2)]
        return [wrap_angle(self.lo + span * i / (n - 1)) for i in range(n)]

    def negated(self) -> "Sector2":
        if self.kind in ("zero", "full", "line"):
            return self
        if self.kind == "ray":
            return Sector2("ray", wrap_angle(self.lo + PI))
        return Sector2(self.kind, wrap_angle(self.lo + PI), wrap_angle(self.lo + PI) + self.aperture)


def _line_angle(phi: float) -> float:
    """Canonical direction of a line through the origin, in [0, pi)."""
    return wrap_angle(phi) % PI


def _conic_hull(c: ConeSpec, eps: float | None = None) -> tuple[str, float, float]:
    """Convex conic hull of the generators as (kind, lo, hi).

    kind is one of ray / sector / halfplane / line / full; lo..hi is the CCW
    covering interval where applicable (ray and line store lo only).
    """
    eps = DEFAULT_TOL.eps_ang if eps is None else eps
    ks = c.generator_arcset()
    if ks.is_full:
        return ("full", 0.0, 0.0)
    ivs = []
    for a in ks.arcs:
        s = wrap_angle(a.mid - a.halfwidth)
        ivs.append((s, s + a.length))
    ivs.sort()
    # widest circular gap between consecutive arcs
    best_gap, best_i = -1.0, 0
    for i, (s, e) in enumerate(ivs):
        s_next = ivs[(i + 1) % len(ivs)][0] + (TAU if i + 1 == len(ivs) else 0.0)
        gap = s_next - e
        if gap > best_gap:
            best_gap, best_i = gap, i
    start = ivs[(best_i + 1) % len(ivs)][0]
    width = TAU - best_gap
    if width <= eps:
        return ("ray", wrap_angle(start), 0.0)
    if width < PI - eps:
        return ("sector", start, start + width)
    if width <= PI + eps:
        antipodal = all(a.halfwidth <= eps for a in ks.arcs) and all(
            min(ang_dist(a.mid, start), ang_dist(a.mid, start + PI)) <= eps
            for a in ks.arcs
        )
        if antipodal:
            return ("line", _line_angle(start), 0.0)
        return ("halfplane", start, start + PI)
    return ("full", 0.0, 0.0)


def cone_contains(c: ConeSpec, x: Point2, tol: float | None = None) -> bool:
    """x avoids every removed ball: |x - R v| >= R for all generators v."""
    tol = DEFAULT_TOL.eps_len * (1.0 + c.R) if tol is None else tol
    R = c.R
    if c.arcs is None:
        for a in c.angles:
            if math.hypot(x.x - R * math.cos(a), x.y - R * math.sin(a)) < R - tol:
                return False
        return True
    rho = x.norm()
    if rho <= tol:
        return True
    beta = x.angle()
    for arc in c.arcs.arcs:
        delta = max(0.0, ang_dist(beta, arc.mid) - arc.halfwidth)
        d2 = rho * rho + R * R - 2.0 * R * rho * math.cos(delta)
        if d2 < (R - tol) * (R - tol):
            return False
    return True


def cone_contains_many(c: ConeSpec, xy: np.ndarray, tol: float | None = None) -> np.ndarray:
    """Vectorized membership for an (N, 2) array of points."""
    tol = DEFAULT_TOL.eps_len * (1.0 + c.R) if tol is None else tol
    R = c.R
    xy = np.asarray(xy, dtype=float)
    ok = np.ones(len(xy), dtype=bool)
    thr2 = (R - tol) * (R - tol)
    if c.arcs is None:
        for a in c.angles:
            dx = xy[:, 0] - R * math.cos(a)
            dy = xy[:, 1] - R * math.sin(a)
            ok &= dx * dx + dy * dy >= thr2
        return ok
    rho = np.hypot(xy[:, 0], xy[:, 1])
    beta = np.arctan2(xy[:, 1], xy[:, 0])
    at_origin = rho <= tol
    for arc in c.arcs.arcs:
        d = np.abs(np.mod(beta - arc.mid, TAU))
        d = np.minimum(d, TAU - d)
        delta = np.maximum(0.0, d - arc.halfwidth)
        d2 = rho * rho + R * R - 2.0 * R * rho * np.cos(delta)
        ok &= (d2 >= thr2) | at_origin
    return ok


def dual_of_sector(s: Sector2) -> Sector2:
    """Dual cone of a planar convex cone, in the same representation."""
    if s.kind == "zero":
        return Sector2("full")
    if s.kind == "full":
        return Sector2("zero")
    if s.kind == "line":
        return Sector2("line", _line_angle(s.lo + PI / 2))
    if s.kind == "ray":
        return Sector2("halfplane", s.lo - PI / 2, s.lo + PI / 2)
    if s.kind == "halfplane":
        return Sector2("ray", wrap_angle(s.lo + PI / 2))
    ap = s.aperture
    if PI - ap <= 1e-12:
        return Sector2("ray", wrap_angle(s.hi - PI / 2))
    return Sector2("sector", s.hi - PI / 2, s.hi - PI / 2 + (PI - ap))


def sector_to_arcs(s: Sector2) -> ArcSet:
    """Intersection of a planar convex cone with the unit circle."""
    if s.kind == "zero":
        return ArcSet.empty()
    if s.kind == "full":
        return ArcSet.full()
    if s.kind == "ray":
        return ArcSet.point(s.lo)
    if s.kind == "line":
        return make_arcset([Arc(s.lo, 0.0), Arc(s.lo + PI, 0.0)])
    return ArcSet.single(s.lo + s.aperture / 2.0, s.aperture / 2.0)


def dual_sector(c: ConeSpec) -> Sector2:
    """The dual cone {y : <y, v> >= 0 for all generators v}."""
    kind, lo, hi = _conic_hull(c)
    if kind == "full":
        return Sector2("zero")
    if kind == "line":
        return Sector2("line", _line_angle(lo + PI / 2))
    if kind == "halfplane":
        return Sector2("ray", wrap_angle(lo + PI / 2))
    if kind == "ray":
        return Sector2("halfplane", lo - PI / 2, lo + PI / 2)
    return Sector2("sector", hi - PI / 2, lo + PI / 2)


def tangent_cone(c: ConeSpec) -> Sector2:
    """Tangent cone of the R-cone at its vertex: the negated dual cone."""
    return dual_sector(c).negated()


def normal_arcs(c: ConeSpec) -> ArcSet:
    """Normal directions at the vertex: the spherical convex hull of the
    generators, returned exactly in the degenerate cases (antipodal pair,
    halfcircle, full circle)."""
    kind, lo, hi = _conic_hull(c)
    if kind == "full":
        return ArcSet.full()
    if kind == "ray":
        return ArcSet.point(lo)
    if kind == "line":
        return make_arcset([Arc(lo, 0.0), Arc(lo + PI, 0.0)])
    hw = (hi - lo) / 2.0
    return ArcSet.single((lo + hi) / 2.0, hw)


@dataclass(frozen=True)
class SupportWitness:
    supports: bool
    witness: Point2 | None
    samples_checked: int


def support_recovery_witness(
    c: ConeSpec, v: UnitVec2, samples: int = 512, push_eps: float = 1e-6
) -> SupportWitness:
    """Semi-decide whether B(R v) avoids the cone (then v is R-supporting at
    the vertex).

    Searches a low-discrepancy sample of B(R v) for a cone point, plus the
    deterministic candidate 2R(1 - eps) v where witnesses of non-generators
    accumulate; "supports" means no witness was found.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    R = c.R
    cx, cy = R * v.x, R * v.y
    cands = [Point2(2.0 * R * (1.0 - push_eps) * v.x, 2.0 * R * (1.0 - push_eps) * v.y)]
    for i in range(samples):
        r = R * math.sqrt((i + 0.5) / samples) * (1.0 - 1e-12)
        th = TAU * math.fmod(i * GOLDEN_FRAC, 1.0)
        cands.append(Point2(cx + r * math.cos(th), cy + r * math.sin(th)))
    checked = 0
    for x in cands:
        checked += 1
        if math.hypot(x.x - cx, x.y - cy) >= R:
            continue
        if cone_contains(c, x, tol=0.0):
            return SupportWitness(False, x, checked)
    return SupportWitness(True, None, checked)


def cone_equivalence_sample(
    c1: ConeSpec,
    c2: ConeSpec,
    n_radii: int = 32,
    n_angles: int = 512,
) -> CheckReport:
    """Compare two cones over a deterministic annular grid (radii 0.1R..4R,
    512 angles); reports equality or the first differing sample."""
    if abs(c1.R - c2.R) > DEFAULT_TOL.eps_len * (1 + c1.R):
        raise ValueError("cones must share R")
    R = c1.R
    radii = np.linspace(0.1 * R, 4.0 * R, n_radii)
    angles = np.arange(n_angles) * (TAU / n_angles)
    rr, aa = np.meshgrid(radii, angles)
    xy = np.stack([(rr * np.cos(aa)).ravel(), (rr * np.sin(aa)).ravel()], axis=1)
    in1 = cone_contains_many(c1, xy)
    in2 = cone_contains_many(c2, xy)
    diff = in1 != in2
    details = {
        "samples": int(len(xy)),
        "disagreements": int(diff.sum()),
        "only_in_first": int((in1 & ~in2).sum()),
        "only_in_second": int((~in1 & in2).sum()),
    }
    witness = None
    if diff.any():
        i = int(np.argmax(diff))
        witness = {
            "point": [float(xy[i, 0]), float(xy[i, 1])],
            "in_first": bool(in1[i]),
            "in_second": bool(in2[i]),
        }
    return CheckReport("cone_equivalence", not diff.any(), details, witness)
