"""Exact Euclidean distance transforms and ball-complement morphology on
binary masks.

A mask denotes the set of its foreground pixel centers; radii are given in
pixel units and compared against integer squared distances, so the open-ball
strictness of the R-neighborhood is exact (callers should avoid radii whose
square is an integer to dodge ties, e.g. use R = 16.0001).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .geom import DEFAULT_TOL
from .reports import CheckReport, EmptyBodyError, NoInteriorError

RadiusPx = float  # radius in pixel units, > 0


@dataclass
class BinaryMask:
    """Sampled closed planar set on a uniform lattice.

    bits[y, x] set means the pixel center origin + (x*h, y*h) is in the set.
    meta carries advisory flags (e.g. "empty", "hulloid_full") and never takes
    part in equality.
    """

    bits: np.ndarray
    origin: tuple[float, float] = (0.0, 0.0)
    spacing: float = 1.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        self.bits = np.ascontiguousarray(self.bits, dtype=bool)
        if self.bits.ndim != 2:
            raise ValueError("bits must be a 2-D array")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def count(self) -> int:
        return int(self.bits.sum())

    @property
    def is_empty(self) -> bool:
        return not self.bits.any()

    @property
    def touches_window(self) -> bool:
        b = self.bits
        return bool(b[0, :].any() or b[-1, :].any() or b[:, 0].any() or b[:, -1].any())

    def like(self, bits: np.ndarray, **meta) -> "BinaryMask":
        return BinaryMask(bits, self.origin, self.spacing, dict(meta))

    def same_lattice(self, other: "BinaryMask") -> bool:
        return (
            self.bits.shape == other.bits.shape
            and self.origin == other.origin
            and self.spacing == other.spacing
        )

    def foreground_xy(self) -> np.ndarray:
        """Foreground pixel coordinates as an (N, 2) int array of (x, y)."""
        ys, xs = np.nonzero(self.bits)
        return np.stack([xs, ys], axis=1).astype(np.int64)

    def has_interior(self) -> bool:
        """Some pixel whose 8 neighbors are all foreground."""
        b = self.bits
        if b.shape[0] < 3 or b.shape[1] < 3:
            return False
        c = b[1:-1, 1:-1].copy()
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                if dy == 0 and dx == 0:
                    continue
                c &= b[1 + dy : b.shape[0] - 1 + dy, 1 + dx : b.shape[1] - 1 + dx]
        return bool(c.any())


@dataclass
class SqDistField:
    """Per-pixel integer squared distance (in units of h^2) to the nearest
    foreground pixel center."""

    values: np.ndarray
    origin: tuple[float, float] = (0.0, 0.0)
    spacing: float = 1.0


@njit(cache=True)
def _col_pass(fg):
    """Squared vertical distance to the nearest foreground pixel per column."""
    h, w = fg.shape
    big = h + w + 1
    g = np.empty((h, w), np.int64)
    for x in range(w):
        d = big
        for y in range(h):
            if fg[y, x]:
                d = 0
            elif d < big:
                d += 1
            g[y, x] = d
        d = big
        for y in range(h - 1, -1, -1):
            if fg[y, x]:
                d = 0
            elif d < big:
                d += 1
            if d < g[y, x]:
                g[y, x] = d
        for y in range(h):
            v = g[y, x]
            g[y, x] = v * v
    return g


@njit(cache=True)
def _row_envelope(g):
    """Lower envelope of parabolas per row: d2[y,x] = min_x' (x-x')^2 + g[y,x']."""
    h, w = g.shape
    out = np.empty((h, w), np.int64)
    v = np.empty(w, np.int64)
    z = np.empty(w + 1, np.float64)
    for y in range(h):
        k = 0
        v[0] = 0
        z[0] = -1e300
        z[1] = 1e300
        for q in range(1, w):
            fq = g[y, q] + q * q
            while True:
                p = v[k]
                s = (fq - (g[y, p] + p * p)) / (2.0 * (q - p))
                if s <= z[k]:
                    k -= 1
                else:
                    break
            k += 1
            v[k] = q
            z[k] = s
            z[k + 1] = 1e300
        k = 0
        for q in range(w):
            while z[k + 1] < q:
                k += 1
            p = v[k]
            out[y, q] = (q - p) * (q - p) + g[y, p]
    return out


def _sq_edt_bits(bits: np.ndarray) -> np.ndarray:
    if not bits.any():
        raise EmptyBodyError("empty body")
    g = _col_pass(np.ascontiguousarray(bits, dtype=np.uint8))
    return _row_envelope(g)


def sq_edt(m: BinaryMask) -> SqDistField:
    """Exact squared Euclidean distance transform, O(width * height)."""
    return SqDistField(_sq_edt_bits(m.bits), m.origin, m.spacing)


def _check_radius(r: float) -> float:
    r = float(r)
    if not (r > 0 and math.isfinite(r)):
        raise ValueError("radius must be a positive finite number")
    return r


def dilate(m: BinaryMask, r: RadiusPx) -> BinaryMask:
    """Open R-neighborhood: pixels at distance < R from the foreground."""
    r = _check_radius(r)
    d2 = _sq_edt_bits(m.bits)
    return m.like(d2 < r * r)


def remote_set(m: BinaryMask, r: RadiusPx) -> BinaryMask:
    """Pixels at distance >= R from the foreground (lattice complement of the
    dilation); may legally be empty, flagged in meta."""
    r = _check_radius(r)
    d2 = _sq_edt_bits(m.bits)
    bits = d2 >= r * r
    out = m.like(bits)
    if not bits.any():
        out.meta["empty"] = True
    return out


def hulloid(m: BinaryMask, r: RadiusPx) -> BinaryMask:
    """Smallest R-body containing the mask: the double remote set.

    If no window pixel is R-remote from the foreground the hulloid is the
    whole plane; the result is then the full window, flagged "hulloid_full".
    """
    r = _check_radius(r)
    inner = remote_set(m, r)
    if inner.is_empty:
        out = m.like(np.ones_like(m.bits), hulloid_full=True)
        return out
    return remote_set(inner, r)


def boundary(m: BinaryMask) -> BinaryMask:
    """Foreground pixels with a 4-neighbor background pixel; lattice-edge
    pixels count as boundary (the window truncates unbounded sets)."""
    b = m.bits
    out = b.copy()
    if b.shape[0] > 2 and b.shape[1] > 2:
        core = (
            b[1:-1, 1:-1]
            & b[:-2, 1:-1]
            & b[2:, 1:-1]
            & b[1:-1, :-2]
            & b[1:-1, 2:]
        )
        out[1:-1, 1:-1] = b[1:-1, 1:-1] & ~core
    return m.like(out)


def _out_of_band(diff: np.ndarray, lhs: BinaryMask, rhs: BinaryMask, band: float) -> int:
    """Disagreeing pixels farther than band from the boundary of either side."""
    if not diff.any():
        return 0
    edges = boundary(lhs).bits | boundary(rhs).bits
    if not edges.any():
        return int(diff.sum())
    d2 = _sq_edt_bits(edges)
    return int((diff & (d2 > band * band)).sum())


def identity_report(m: BinaryMask, r: RadiusPx, band: float | None = None) -> CheckReport:
    """Check both hulloid identities on the lattice.

    closing: co_R(E) = E_R ∩ ((∂E_R))'_R
    remote-boundary: (∂E_R)'_R = co_R(E) ∪ E'_2R

    Disagreements are reported as symmetric-difference counts, split into
    in-band (within band px of either side's boundary) and out-of-band.
    """
    r = _check_radius(r)
    band = DEFAULT_TOL.band_px if band is None else band
    e_r = dilate(m, r)
    b_e_r = boundary(e_r)
    remote_b = remote_set(b_e_r, r)
    co = hulloid(m, r)
    e_2r = remote_set(m, 2.0 * r)

    details: dict = {"R": r, "band_px": band, "touches_window": e_r.touches_window}
    ok = True
    for name, lhs, rhs in (
        ("closing", co, m.like(e_r.bits & remote_b.bits)),
        ("remote_boundary", remote_b, m.like(co.bits | e_2r.bits)),
    ):
        diff = lhs.bits ^ rhs.bits
        oob = _out_of_band(diff, lhs, rhs, band)
        details[name] = {"symmetric_difference": int(diff.sum()), "out_of_band": oob}
        ok = ok and oob == 0
    return CheckReport("identity_report", ok, details)


def is_rbody(
    m: BinaryMask, r: RadiusPx, band: float | None = None
) -> tuple[bool, CheckReport]:
    """True iff the hulloid adds nothing beyond the band around ∂m."""
    r = _check_radius(r)
    band = DEFAULT_TOL.band_px if band is None else band
    h = hulloid(m, r)
    added = h.bits & ~m.bits
    details: dict = {
        "R": r,
        "band_px": band,
        "added_pixels": int(added.sum()),
        "hulloid_full": bool(h.meta.get("hulloid_full", False)),
    }
    witness = None
    if added.any():
        d2 = _sq_edt_bits(boundary(m).bits)
        oob = added & (d2 > band * band)
        details["out_of_band"] = int(oob.sum())
        if oob.any():
            flat = np.where(added, d2, -1)
            y, x = np.unravel_index(int(flat.argmax()), flat.shape)
            witness = {
                "pixel": [int(x), int(y)],
                "dist_to_boundary": float(math.sqrt(flat[y, x])),
            }
    else:
        details["out_of_band"] = 0
    ok = details["out_of_band"] == 0
    return ok, CheckReport("is_rbody", ok, details, witness)


def _convex_hull_int(pts: np.ndarray) -> list[tuple[int, int]]:
    """Monotone chain on integer points; collinear inputs give the segment."""
    pts = sorted({(int(p[0]), int(p[1])) for p in pts})
    if len(pts) == 1:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        h: list[tuple[int, int]] = []
        for p in seq:
            while len(h) >= 2 and cross(h[-2], h[-1], p) <= 0:
                h.pop()
            h.append(p)
        return h

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def convex_hull_mask(m: BinaryMask) -> BinaryMask:
    """Raster of the closed convex hull of the foreground pixel centers."""
    if m.is_empty:
        raise EmptyBodyError("empty body")
    hull = _convex_hull_int(m.foreground_xy())
    bits = np.zeros_like(m.bits)
    if len(hull) == 1:
        x, y = hull[0]
        bits[y, x] = True
        return m.like(bits)
    xs = np.arange(m.width, dtype=np.int64)
    ys = np.arange(m.height, dtype=np.int64)
    xx, yy = np.meshgrid(xs, ys)
    if len(hull) == 2:
        (ax, ay), (bx, by) = hull
        ux, uy = bx - ax, by - ay
        cr = ux * (yy - ay) - uy * (xx - ax)
        dt = ux * (xx - ax) + uy * (yy - ay)
        bits = (cr == 0) & (dt >= 0) & (dt <= ux * ux + uy * uy)
        return m.like(bits)
    inside = np.ones_like(m.bits)
    n = len(hull)
    for i in range(n):
        ax, ay = hull[i]
        bx, by = hull[(i + 1) % n]
        inside &= (bx - ax) * (yy - ay) - (by - ay) * (xx - ax) >= 0
    return m.like(inside)


def hausdorff(a: BinaryMask, b: BinaryMask) -> float:
    """Symmetric Hausdorff distance between foreground pixel-center sets."""
    if a.is_empty or b.is_empty:
        raise EmptyBodyError("empty body")
    if not a.same_lattice(b):
        raise ValueError("masks must share a lattice")
    d2b = _sq_edt_bits(b.bits)
    d2a = _sq_edt_bits(a.bits)
    d_ab = int(d2b[a.bits].max())
    d_ba = int(d2a[b.bits].max())
    return math.sqrt(max(d_ab, d_ba)) * a.spacing


def hulloid_sweep(
    m: BinaryMask, radii: list[float]
) -> list[tuple[float, float]]:
    """Hausdorff distance from the R-hulloid to the convex hull for an
    increasing list of radii; requires an interior pixel (the limit identity
    fails for sets inside a line)."""
    if m.is_empty:
        raise EmptyBodyError("empty body")
    if not m.has_interior():
        raise NoInteriorError("interior required")
    radii = [_check_radius(r) for r in radii]
    if any(r2 <= r1 for r1, r2 in zip(radii, radii[1:])):
        raise ValueError("radii must be strictly increasing")
    hull = convex_hull_mask(m)
    out = []
    for r in radii:
        out.append((r, hausdorff(hulloid(m, r), hull)))
    return out
