"""Reach >= R certification: the spindle-connectivity criterion on grids,
the planar spherical-convexity theorem, and the rolling-set corollary.

Grid arcs tolerate ball penetration up to slack_px pixels so sub-pixel
staircase noise in a sampled boundary does not veto a genuinely supporting
direction; pixels closer than slack_px therefore never constrain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from .exact import (
    _circumcenter,
    membership_corR,
    nr_convexity_profile,
)
from .geom import TAU, Point2, PointSet2
from .grid import (
    BinaryMask,
    _check_radius,
    _convex_hull_int,
    boundary,
    is_rbody,
)
from .reports import (
    CERTIFIED,
    INCONCLUSIVE,
    INCONCLUSIVE_PASS,
    REFUTED,
    EmptyBodyError,
    ReachReport,
)

_EIGHT = np.ones((3, 3), dtype=bool)
DEFAULT_SEED = 0xC0FFEE


def _label8(bits: np.ndarray) -> tuple[np.ndarray, int]:
    return ndimage.label(bits, structure=_EIGHT)


def _merged_component_count(labels: np.ndarray, n: int, gap_px: float) -> int:
    """Component count after transitively merging components whose pixel
    gap is <= gap_px (rasterization can split a connected set at lens tips)."""
    if n <= 1 or gap_px <= 0:
        return n
    comps = [np.argwhere(labels == i + 1).astype(np.int64) for i in range(n)]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    g2 = gap_px * gap_px
    for i in range(n):
        for j in range(i + 1, n):
            if find(i) == find(j):
                continue
            a, b = comps[i], comps[j]
            d2 = (
                (a[:, None, 0] - b[None, :, 0]) ** 2
                + (a[:, None, 1] - b[None, :, 1]) ** 2
            )
            if d2.min() <= g2:
                parent[find(i)] = find(j)
    return len({find(i) for i in range(n)})


LENS_PAD_PX = math.sqrt(0.5)  # half pixel diagonal: raster sampling slack


def _lens_region(
    m: BinaryMask, b1, b2, r: float, pad_px: float = LENS_PAD_PX
) -> np.ndarray:
    """Full-window raster of foreground ∩ spindle for one pair.

    The spindle raster uses the closed two-extreme-disk form, equivalent to
    the definitional all-balls predicate (validated against lens_contains),
    padded by half a pixel diagonal so a curve sampled to the lattice cannot
    fall out of a spindle it genuinely lies in.
    """
    d = math.hypot(b2[0] - b1[0], b2[1] - b1[1])
    mx, my = (b1[0] + b2[0]) / 2.0, (b1[1] + b2[1]) / 2.0
    q = math.sqrt(max(r * r - d * d / 4.0, 0.0))
    ux, uy = (b2[0] - b1[0]) / d, (b2[1] - b1[1]) / d
    c1 = (mx - uy * q, my + ux * q)
    c2 = (mx + uy * q, my - ux * q)
    rp = r + pad_px
    x_lo = max(0, int(math.ceil(max(c1[0], c2[0]) - rp)))
    x_hi = min(m.width - 1, int(math.floor(min(c1[0], c2[0]) + rp)))
    y_lo = max(0, int(math.ceil(max(c1[1], c2[1]) - rp)))
    y_hi = min(m.height - 1, int(math.floor(min(c1[1], c2[1]) + rp)))
    out = np.zeros_like(m.bits)
    if x_hi < x_lo or y_hi < y_lo:
        return out
    xs = np.arange(x_lo, x_hi + 1, dtype=float)
    ys = np.arange(y_lo, y_hi + 1, dtype=float)
    xx, yy = np.meshgrid(xs, ys)
    r2 = rp * rp * (1.0 + 1e-12) + 1e-9
    in_lens = ((xx - c1[0]) ** 2 + (yy - c1[1]) ** 2 <= r2) & (
        (xx - c2[0]) ** 2 + (yy - c2[1]) ** 2 <= r2
    )
    out[y_lo : y_hi + 1, x_lo : x_hi + 1] = in_lens & m.bits[y_lo : y_hi + 1, x_lo : x_hi + 1]
    return out


def _lens_component_count(
    m: BinaryMask,
    b1,
    b2,
    r: float,
    merge_gap_px: float,
    pad_px: float = LENS_PAD_PX,
) -> int:
    """8-connected components of the pair's spindle raster, after merging
    components split by less than merge_gap_px (rasterization can cut a
    connected intersection at the spindle tips)."""
    labels, n = _label8(_lens_region(m, b1, b2, r, pad_px))
    return _merged_component_count(labels, n, merge_gap_px)


def reach_ge_lens(
    m: BinaryMask,
    r: float,
    pair_budget: int = 20000,
    seed: int = DEFAULT_SEED,
    merge_gap_px: float = 3.0,
) -> ReachReport:
    """Spindle criterion: reach >= R iff every close foreground pair meets
    the set in a connected spindle intersection.

    Enumerates (or deterministically samples up to pair_budget) pairs with
    0 < |b1-b2| < 2R; a disconnected intersection refutes.  Certification is
    exhaustive only when all pairs were checked, otherwise the verdict is
    inconclusive-pass.  Lenses thinner than one pixel are skipped (flagged):
    their connectivity is not representable on the lattice.
    """
    r = _check_radius(r)
    if m.is_empty:
        raise EmptyBodyError("empty body")
    fg = m.foreground_xy().astype(float)
    flags: dict = {"R": r, "seed": seed, "merge_gap_px": merge_gap_px}
    if len(fg) < 2:
        flags.update(pairs_admissible=0, pairs_checked=0, skipped_sub_resolution=0, exhaustive=True)
        return ReachReport(CERTIFIED, "lens", None, flags)
    pairs = cKDTree(fg).query_pairs(r=2.0 * r, output_type="ndarray")
    if len(pairs):
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        dvec = fg[pairs[:, 1]] - fg[pairs[:, 0]]
        d2 = (dvec**2).sum(axis=1)
        keep = (d2 > 0) & (d2 < 4.0 * r * r)
        pairs, d2 = pairs[keep], d2[keep]
    else:
        d2 = np.empty(0)
    n_adm = len(pairs)
    flags["pairs_admissible"] = int(n_adm)
    exhaustive = n_adm <= pair_budget
    if not exhaustive:
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(n_adm, size=pair_budget, replace=False))
        pairs, d2 = pairs[idx], d2[idx]
    skipped = 0
    checked = 0
    for (i, j), dd2 in zip(pairs, d2):
        d = math.sqrt(dd2)
        thickness = 2.0 * (r - math.sqrt(max(r * r - dd2 / 4.0, 0.0)))
        if thickness < 1.0:
            skipped += 1
            continue
        checked += 1
        ncomp = _lens_component_count(m, fg[i], fg[j], r, merge_gap_px)
        if ncomp > 1:
            flags.update(
                pairs_checked=checked, skipped_sub_resolution=skipped, exhaustive=exhaustive
            )
            witness = {
                "b1": [float(fg[i][0]), float(fg[i][1])],
                "b2": [float(fg[j][0]), float(fg[j][1])],
                "pair_distance": d,
                "components": int(ncomp),
            }
            return ReachReport(REFUTED, "lens", witness, flags)
    flags.update(pairs_checked=checked, skipped_sub_resolution=skipped, exhaustive=exhaustive)
    verdict = CERTIFIED if exhaustive else INCONCLUSIVE_PASS
    return ReachReport(verdict, "lens", None, flags)


def _diameter_px(m: BinaryMask) -> float:
    hull = _convex_hull_int(m.foreground_xy())
    best = 0.0
    for i in range(len(hull)):
        for j in range(i + 1, len(hull)):
            dx = hull[i][0] - hull[j][0]
            dy = hull[i][1] - hull[j][1]
            best = max(best, float(dx * dx + dy * dy))
    return math.sqrt(best)


def reach_lower_bound(
    m: BinaryMask,
    pair_budget: int = 20000,
    iters: int = 20,
    seed: int = DEFAULT_SEED,
) -> float:
    """Largest radius (bisection over (0, diameter]) at which the spindle
    criterion finds no refutation; in the mask's physical length units."""
    if m.is_empty:
        raise EmptyBodyError("empty body")
    hi = _diameter_px(m)
    if hi == 0.0:
        return math.inf

    def passes(rr: float) -> bool:
        return reach_ge_lens(m, rr, pair_budget, seed).verdict != REFUTED

    if passes(hi):
        return hi * m.spacing
    lo = 0.0
    for _ in range(iters):
        mid = (lo + hi) / 2.0
        if passes(mid):
            lo = mid
        else:
            hi = mid
    return lo * m.spacing


def grid_supporting_bins(
    m: BinaryMask,
    px: int,
    py: int,
    r: float,
    bins: int = 720,
    slack_px: float = 1.0,
) -> np.ndarray:
    """Sampled R-supporting directions at a foreground pixel, as a boolean
    array over `bins` angles.

    A direction is excluded when some foreground pixel would penetrate the
    tangent ball deeper than slack_px; pixels within slack_px (or beyond
    2R - slack_px) impose nothing.
    """
    r = _check_radius(r)
    rad = int(math.ceil(2.0 * r)) + 1
    x0, x1 = max(0, px - rad), min(m.width - 1, px + rad)
    y0, y1 = max(0, py - rad), min(m.height - 1, py + rad)
    sub = m.bits[y0 : y1 + 1, x0 : x1 + 1]
    yy, xx = np.nonzero(sub)
    dx = (xx + x0 - px).astype(float)
    dy = (yy + y0 - py).astype(float)
    d = np.hypot(dx, dy)
    tau = slack_px
    keep = (d > tau) & (d < 2.0 * r - tau)
    dx, dy, d = dx[keep], dy[keep], d[keep]
    supported = np.ones(bins, dtype=bool)
    if len(d) == 0:
        return supported
    cb = (d * d + 2.0 * r * tau - tau * tau) / (2.0 * r * d)
    active = cb < 1.0 - 1e-12
    dx, dy, cb = dx[active], dy[active], cb[active]
    if len(cb) == 0:
        return supported
    # exclusion arc centered on the direction of b - a (pointing at the site)
    center = np.mod(np.arctan2(dy, dx), TAU)
    halfw = np.arccos(np.clip(cb, -1.0, 1.0))
    pitch = TAU / bins
    lo = np.floor((center - halfw) / pitch).astype(np.int64) + 1
    hi = np.ceil((center + halfw) / pitch).astype(np.int64) - 1
    good = hi >= lo
    lo, hi = lo[good], hi[good]
    length = hi - lo + 1
    lo = np.mod(lo, bins)
    end = lo + length
    diff = np.zeros(bins + 1, dtype=np.int64)
    wrap = end > bins
    np.add.at(diff, lo[~wrap], 1)
    np.add.at(diff, end[~wrap], -1)
    if wrap.any():
        np.add.at(diff, lo[wrap], 1)
        diff[bins] -= int(wrap.sum())
        diff[0] += int(wrap.sum())
        np.add.at(diff, end[wrap] - bins, -1)
    excluded = np.cumsum(diff[:bins]) > 0
    return ~excluded


def bins_to_runs(supported: np.ndarray) -> list[tuple[int, int]]:
    """Circular runs of True as (start_bin, length)."""
    n = len(supported)
    if supported.all():
        return [(0, n)]
    if not supported.any():
        return []
    prev = np.roll(supported, 1)
    starts = np.flatnonzero(supported & ~prev)
    runs = []
    for s in starts:
        ln = 0
        while supported[(s + ln) % n]:
            ln += 1
        runs.append((int(s), ln))
    return runs


@dataclass(frozen=True)
class GridArcEntry:
    pixel: tuple[int, int]
    runs: tuple[tuple[int, int], ...]
    nonempty: bool
    single_arc: bool
    width_rad: float


@dataclass(frozen=True)
class GridConvexityProfile:
    entries: tuple[GridArcEntry, ...]
    bins: int
    any_empty: bool
    all_convex: bool


def grid_convexity_profile(
    m: BinaryMask,
    r: float,
    bins: int = 720,
    slack_px: float = 1.0,
    sample_cap: int = 400,
) -> GridConvexityProfile:
    """Supporting-direction convexity at sampled boundary pixels: convex
    means one circular run of width <= pi (plus two bins of pitch slack)."""
    bpix = boundary(m).foreground_xy()
    if len(bpix) == 0:
        raise EmptyBodyError("empty body")
    stride = max(1, int(math.ceil(len(bpix) / sample_cap)))
    pitch = TAU / bins
    max_bins = bins // 2 + 2
    entries = []
    for px, py in bpix[::stride]:
        sup = grid_supporting_bins(m, int(px), int(py), r, bins, slack_px)
        runs = bins_to_runs(sup)
        width = max((ln for _, ln in runs), default=0) * pitch
        entries.append(
            GridArcEntry(
                (int(px), int(py)),
                tuple(runs),
                nonempty=len(runs) > 0,
                single_arc=len(runs) == 1 and runs[0][1] <= max_bins,
                width_rad=width,
            )
        )
    return GridConvexityProfile(
        tuple(entries),
        bins,
        any_empty=any(not e.nonempty for e in entries),
        all_convex=all(e.nonempty and e.single_arc for e in entries),
    )


def _point_set_probes(E: PointSet2, r: float) -> list[Point2]:
    """Hulloid-growth probe points: circumcenters of triples and midpoints
    of pairs closer than 2R."""
    pts = list(E)
    probes = []
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            if pts[i].dist(pts[j]) < 2.0 * r:
                probes.append(
                    Point2((pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2)
                )
            for k in range(j + 1, n):
                c = _circumcenter(pts[i], pts[j], pts[k])
                if c is not None:
                    probes.append(c)
    return probes


def certify_reach_d2(
    obj: PointSet2 | BinaryMask,
    r: float,
    bins: int = 720,
    slack_px: float = 1.0,
    sample_cap: int = 400,
) -> ReachReport:
    """Planar certification: an R-body whose supporting directions are
    spherically convex at every (sampled) boundary point has reach >= R.

    Refutation reports which hypothesis failed; degenerate direction sets
    (full circle, antipodal pair) also fail the operational convexity test
    and are flagged, since the theorem draws no conclusion there.
    """
    r = _check_radius(r)
    if isinstance(obj, PointSet2):
        for probe in _point_set_probes(obj, r):
            if obj.dist_to(probe) <= 1e-9:
                continue
            if membership_corR(obj, probe, r) == "in":
                return ReachReport(
                    REFUTED,
                    "d2-convexity",
                    {"failed": "rbody", "probe": [probe.x, probe.y]},
                    {"R": r},
                )
        prof = nr_convexity_profile(obj, r)
        for e in prof.entries:
            if e.arcs.is_empty or not e.sph_convex:
                return ReachReport(
                    REFUTED,
                    "d2-convexity",
                    {
                        "failed": "empty-arcs" if e.arcs.is_empty else "convexity",
                        "point": [e.point.x, e.point.y],
                    },
                    {"R": r, "degenerate": e.arcs.is_full},
                )
        return ReachReport(CERTIFIED, "d2-convexity", None, {"R": r})

    ok, rep = is_rbody(obj, r)
    if not ok:
        return ReachReport(
            REFUTED,
            "d2-convexity",
            {"failed": "rbody", **(rep.witness or {})},
            {"R": r, "is_rbody": rep.details},
        )
    prof = grid_convexity_profile(obj, r, bins, slack_px, sample_cap)
    for e in prof.entries:
        if not e.nonempty or not e.single_arc:
            return ReachReport(
                REFUTED,
                "d2-convexity",
                {
                    "failed": "empty-arcs" if not e.nonempty else "convexity",
                    "pixel": list(e.pixel),
                    "runs": [list(run) for run in e.runs],
                },
                {"R": r, "sampled_boundary_pixels": len(prof.entries)},
            )
    return ReachReport(
        CERTIFIED, "d2-convexity", None, {"R": r, "sampled_boundary_pixels": len(prof.entries)}
    )


def walther_rolling_check(
    m: BinaryMask,
    r: float,
    pair_budget: int = 20000,
    seed: int = DEFAULT_SEED,
) -> ReachReport:
    """Rolling-set corollary: a path-connected compact mask that is an
    R-body with an R-body complement closure must pass the spindle check.

    When either R-body hypothesis fails the theorem does not apply and the
    verdict is inconclusive; a spindle refutation despite both hypotheses
    holding is flagged inconsistent.
    """
    r = _check_radius(r)
    if m.is_empty:
        raise EmptyBodyError("empty body")
    _, ncomp = _label8(m.bits)
    if ncomp != 1:
        raise ValueError("mask must be a single 8-connected component")
    if m.touches_window:
        raise ValueError("mask must not touch the window (compactness)")
    ok_a, rep_a = is_rbody(m, r)
    closure_c = m.like(~m.bits | boundary(m).bits)
    ok_c, rep_c = is_rbody(closure_c, r)
    flags = {
        "R": r,
        "rbody_mask": ok_a,
        "rbody_complement_closure": ok_c,
        "mask_out_of_band": rep_a.details.get("out_of_band"),
        "complement_out_of_band": rep_c.details.get("out_of_band"),
        "hypotheses_met": ok_a and ok_c,
    }
    if not (ok_a and ok_c):
        return ReachReport(INCONCLUSIVE, "walther", None, flags)
    lens = reach_ge_lens(m, r, pair_budget, seed)
    flags["lens_verdict"] = lens.verdict
    flags["consistent"] = lens.passed
    if not lens.passed:
        return ReachReport(REFUTED, "walther", lens.witness, flags)
    return ReachReport(lens.verdict, "walther", None, flags)
