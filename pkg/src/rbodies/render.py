"""Advisory SVG/PNG renderings of masks, supporting arcs and cones.

Figures are never parsed by tests; they exist for eyeballs.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .cones import ConeSpec, normal_arcs, tangent_cone
from .geom import ArcSet, Point2
from .grid import BinaryMask


def render_mask_png(m: BinaryMask, path, scale: int = 2) -> None:
    from PIL import Image

    img = Image.fromarray(np.where(m.bits, 255, 32).astype(np.uint8), mode="L")
    if scale != 1:
        img = img.resize((m.width * scale, m.height * scale), resample=Image.NEAREST)
    img.save(path)


def render_mask_svg(m: BinaryMask, path, scale: float = 2.0) -> None:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{m.width * scale}" '
        f'height="{m.height * scale}" viewBox="0 0 {m.width} {m.height}">',
        f'<rect width="{m.width}" height="{m.height}" fill="#202028"/>',
    ]
    for y in range(m.height):
        row = m.bits[y]
        x = 0
        while x < m.width:
            if row[x]:
                x0 = x
                while x < m.width and row[x]:
                    x += 1
                parts.append(
                    f'<rect x="{x0}" y="{y}" width="{x - x0}" height="1" fill="#e8e4d8"/>'
                )
            else:
                x += 1
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))


def _arc_path(cx, cy, r, a0, a1) -> str:
    large = 1 if (a1 - a0) % (2 * math.pi) > math.pi else 0
    x0, y0 = cx + r * math.cos(a0), cy + r * math.sin(a0)
    x1, y1 = cx + r * math.cos(a1), cy + r * math.sin(a1)
    return f"M {x0:.3f} {y0:.3f} A {r} {r} 0 {large} 1 {x1:.3f} {y1:.3f}"


def render_arcs_svg(base: Point2, arcs: ArcSet, path, r_draw: float = 80.0) -> None:
    """Unit-circle diagram of a direction set around a base point."""
    s = r_draw * 1.4
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{2*s}" height="{2*s}" '
        f'viewBox="{-s} {-s} {2*s} {2*s}">',
        f'<circle cx="0" cy="0" r="{r_draw}" fill="none" stroke="#888" stroke-width="1"/>',
        '<circle cx="0" cy="0" r="2.5" fill="#d33"/>',
    ]
    for a in arcs.arcs:
        if a.halfwidth < 1e-6:
            x, y = r_draw * math.cos(a.mid), r_draw * math.sin(a.mid)
            parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="3" fill="#2a7"/>')
        else:
            parts.append(
                f'<path d="{_arc_path(0, 0, r_draw, a.lo, a.hi)}" fill="none" '
                'stroke="#2a7" stroke-width="5" stroke-linecap="round"/>'
            )
    parts.append(
        f'<text x="{-s + 6}" y="{-s + 16}" fill="#666" font-size="12">'
        f"base ({base.x:.3g}, {base.y:.3g})</text>"
    )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))


def render_cone_svg(spec: ConeSpec, path, half_extent: float | None = None) -> None:
    """Removed generator balls, tangent sector rays, and the normal arc."""
    R = spec.R
    s = 3.0 * R if half_extent is None else half_extent
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="480" height="480" '
        f'viewBox="{-s} {-s} {2*s} {2*s}">',
        f'<rect x="{-s}" y="{-s}" width="{2*s}" height="{2*s}" fill="#fdfdf8"/>',
    ]
    gen = spec.generator_arcset()
    angles = []
    for a in gen.arcs:
        n = max(1, int(a.length / 0.2))
        angles.extend(a.mid - a.halfwidth + a.length * k / max(n - 1, 1) for k in range(n))
    for phi in angles:
        parts.append(
            f'<circle cx="{R*math.cos(phi):.3f}" cy="{R*math.sin(phi):.3f}" r="{R}" '
            'fill="#d3333320" stroke="#d33" stroke-width="0.5"/>'
        )
    tan = tangent_cone(spec)
    for phi in tan.sample_dirs(9):
        parts.append(
            f'<line x1="0" y1="0" x2="{s*math.cos(phi):.3f}" y2="{s*math.sin(phi):.3f}" '
            'stroke="#27c" stroke-width="0.8"/>'
        )
    for a in normal_arcs(spec).arcs:
        if a.halfwidth < 1e-6:
            x, y = 0.5 * R * math.cos(a.mid), 0.5 * R * math.sin(a.mid)
            parts.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{0.03*R}" fill="#2a7"/>')
        else:
            parts.append(
                f'<path d="{_arc_path(0, 0, 0.5 * R, a.lo, a.hi)}" fill="none" '
                f'stroke="#2a7" stroke-width="{0.05*R}"/>'
            )
    parts.append(f'<circle cx="0" cy="0" r="{0.02*R}" fill="#111"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))
