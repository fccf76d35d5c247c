"""Deterministic fixture masks and point sets used by the test suite and the
bundled demo corpus of the CLI."""

from __future__ import annotations

import math

import numpy as np

from .geom import Point2, PointSet2
from .grid import BinaryMask, boundary

DEFAULT_CORPUS_SEED = 0xC0FFEE


def _grid(size: int | tuple[int, int]):
    if isinstance(size, int):
        h = w = size
    else:
        w, h = size
    yy, xx = np.mgrid[0:h, 0:w]
    return xx.astype(float), yy.astype(float), np.zeros((h, w), dtype=bool)


def disk_mask(size, cx: float, cy: float, rho: float) -> BinaryMask:
    xx, yy, bits = _grid(size)
    bits |= (xx - cx) ** 2 + (yy - cy) ** 2 <= rho * rho
    return BinaryMask(bits)


def filled_square_mask(size, cx: float, cy: float, side: float) -> BinaryMask:
    xx, yy, bits = _grid(size)
    half = side / 2.0
    bits |= (np.abs(xx - cx) <= half) & (np.abs(yy - cy) <= half)
    return BinaryMask(bits)


def square_outline_mask(size, cx: float, cy: float, side: float) -> BinaryMask:
    return boundary(filled_square_mask(size, cx, cy, side))


def two_point_mask(size, p1: tuple[int, int], p2: tuple[int, int]) -> BinaryMask:
    _, _, bits = _grid(size)
    bits[p1[1], p1[0]] = True
    bits[p2[1], p2[0]] = True
    return BinaryMask(bits)


def equilateral_triangle(circumradius: float, center=(0.0, 0.0)) -> PointSet2:
    cx, cy = center
    pts = []
    for k in range(3):
        a = -math.pi / 2 + k * 2.0 * math.pi / 3.0
        pts.append(Point2(cx + circumradius * math.cos(a), cy + circumradius * math.sin(a)))
    return PointSet2(pts)


def triangle_vertex_mask(size, cx: float, cy: float, circumradius: float) -> BinaryMask:
    _, _, bits = _grid(size)
    for p in equilateral_triangle(circumradius, (cx, cy)):
        bits[int(round(p.y)), int(round(p.x))] = True
    return BinaryMask(bits)


def _segment_dist2(xx, yy, a, b):
    ax, ay = a
    bx, by = b
    vx, vy = bx - ax, by - ay
    L2 = vx * vx + vy * vy
    t = np.clip(((xx - ax) * vx + (yy - ay) * vy) / L2, 0.0, 1.0) if L2 > 0 else 0.0
    px, py = ax + t * vx, ay + t * vy
    return (xx - px) ** 2 + (yy - py) ** 2


def stadium_mask(size, a: tuple[float, float], b: tuple[float, float], rho: float) -> BinaryMask:
    """Filled capsule: points within rho of the segment [a, b]."""
    xx, yy, bits = _grid(size)
    bits |= _segment_dist2(xx, yy, a, b) <= rho * rho
    return BinaryMask(bits)


def stadium_outline_mask(size, a, b, rho: float) -> BinaryMask:
    return boundary(stadium_mask(size, a, b, rho))


def dumbbell_mask(
    size, c1: tuple[float, float], c2: tuple[float, float], rho: float, bar_halfwidth: float
) -> BinaryMask:
    """Two disks joined by a thin horizontal bar."""
    xx, yy, bits = _grid(size)
    bits |= (xx - c1[0]) ** 2 + (yy - c1[1]) ** 2 <= rho * rho
    bits |= (xx - c2[0]) ** 2 + (yy - c2[1]) ** 2 <= rho * rho
    x_lo, x_hi = min(c1[0], c2[0]), max(c1[0], c2[0])
    mid_y = (c1[1] + c2[1]) / 2.0
    bits |= (xx >= x_lo) & (xx <= x_hi) & (np.abs(yy - mid_y) <= bar_halfwidth)
    return BinaryMask(bits)


def seeded_blob(size: int, seed: int, margin: float = 72.0) -> BinaryMask:
    """Union of a few random disks confined to the central window so that
    dilations up to the largest test radius stay clear of the frame."""
    rng = np.random.default_rng(seed)
    xx, yy, bits = _grid(size)
    n = int(rng.integers(3, 7))
    r_max = 24.0
    lo, hi = margin + r_max, size - margin - r_max
    centers = rng.uniform(lo, hi, size=(n, 2))
    radii = rng.uniform(9.0, r_max, size=n)
    # chain the disks toward the first so the blob is connected
    for k in range(1, n):
        t = rng.uniform(0.35, 0.75)
        centers[k] = centers[k - 1] * (1 - t) + centers[k] * t
    for (cx, cy), rr in zip(centers, radii):
        bits |= (xx - cx) ** 2 + (yy - cy) ** 2 <= rr * rr
    return BinaryMask(bits)


def blob_corpus(
    count: int = 20, size: int = 256, seed: int = DEFAULT_CORPUS_SEED, margin: float = 72.0
) -> list[BinaryMask]:
    return [seeded_blob(size, seed + i, margin) for i in range(count)]
