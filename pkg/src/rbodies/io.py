"""File formats: binary PGM masks with a JSON lattice sidecar, point-set and
cone-spec JSON, and deterministic JSON reports."""

from __future__ import annotations

import json
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .cones import ConeSpec
from .geom import ArcSet, Point2, PointSet2
from .grid import BinaryMask
from .reports import InputError

SCHEMA = "rbody-report/1"


def sidecar_path(path) -> Path:
    return Path(str(path) + ".json")


def write_mask_pgm(m: BinaryMask, path) -> None:
    """Binary PGM (P5), 255 = foreground, plus a lattice-header sidecar."""
    path = Path(path)
    data = np.where(m.bits, 255, 0).astype(np.uint8)
    with open(path, "wb") as f:
        f.write(f"P5\n{m.width} {m.height}\n255\n".encode())
        f.write(data.tobytes())
    sidecar = {"origin": [m.origin[0], m.origin[1]], "spacing": m.spacing}
    sidecar_path(path).write_text(json.dumps(sidecar, sort_keys=True) + "\n")


def read_mask_pgm(path) -> BinaryMask:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}") from e
    tokens = []
    i = 0
    while len(tokens) < 4 and i < len(raw):
        # header tokens with '#' comments
        if raw[i : i + 1] == b"#":
            while i < len(raw) and raw[i : i + 1] != b"\n":
                i += 1
        elif raw[i : i + 1].isspace():
            i += 1
        else:
            j = i
            while j < len(raw) and not raw[j : j + 1].isspace():
                j += 1
            tokens.append(raw[i:j])
            i = j
    if len(tokens) < 4 or tokens[0] != b"P5":
        raise InputError(f"{path}: not a binary PGM (P5) file")
    try:
        w, h, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    except ValueError as e:
        raise InputError(f"{path}: malformed PGM header") from e
    if maxval <= 0 or maxval > 255:
        raise InputError(f"{path}: unsupported maxval {maxval}")
    i += 1  # single whitespace byte after maxval
    pixels = raw[i : i + w * h]
    if len(pixels) != w * h:
        raise InputError(f"{path}: truncated pixel data")
    bits = np.frombuffer(pixels, dtype=np.uint8).reshape(h, w) > 0
    origin, spacing = (0.0, 0.0), 1.0
    sp = sidecar_path(path)
    if sp.exists():
        try:
            hdr = json.loads(sp.read_text())
            origin = (float(hdr["origin"][0]), float(hdr["origin"][1]))
            spacing = float(hdr["spacing"])
        except (ValueError, KeyError, IndexError) as e:
            raise InputError(f"{sp}: malformed lattice header") from e
    return BinaryMask(bits, origin, spacing)


def mask_to_json_dict(m: BinaryMask) -> dict:
    return {
        "width": m.width,
        "height": m.height,
        "origin": [m.origin[0], m.origin[1]],
        "spacing": m.spacing,
        "rows": ["".join("1" if v else "0" for v in row) for row in m.bits],
    }


def mask_from_json_dict(d: dict) -> BinaryMask:
    try:
        rows = d["rows"]
        bits = np.array([[c == "1" for c in row] for row in rows], dtype=bool)
        origin = (float(d.get("origin", [0, 0])[0]), float(d.get("origin", [0, 0])[1]))
        spacing = float(d.get("spacing", 1.0))
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"malformed mask JSON: {e}") from e
    return BinaryMask(bits, origin, spacing)


def load_point_set(path) -> tuple[PointSet2, float | None]:
    try:
        d = json.loads(Path(path).read_text())
        pts = PointSet2([Point2(float(p[0]), float(p[1])) for p in d["points"]])
        r = float(d["R"]) if "R" in d else None
    except (OSError, ValueError, KeyError, IndexError, TypeError) as e:
        raise InputError(f"{path}: malformed point-set JSON: {e}") from e
    if r is not None and r <= 0:
        raise InputError(f"{path}: R must be positive")
    return pts, r


def save_point_set(ps: PointSet2, r: float, path) -> None:
    d = {"R": r, "points": [[p.x, p.y] for p in ps]}
    Path(path).write_text(json.dumps(d, sort_keys=True) + "\n")


def load_cone_spec(path) -> ConeSpec:
    try:
        d = json.loads(Path(path).read_text())
        r = float(d["R"])
        gen = d["generators"]
        if "angles" in gen:
            return ConeSpec(R=r, angles=tuple(float(a) for a in gen["angles"]))
        mid, hw = gen["arc"]
        return ConeSpec(R=r, arcs=ArcSet.single(float(mid), float(hw)))
    except (OSError, ValueError, KeyError, IndexError, TypeError) as e:
        raise InputError(f"{path}: malformed cone-spec JSON: {e}") from e


def rasterize_point_set(
    ps: PointSet2, r: float, window: int = 256
) -> tuple[BinaryMask, float]:
    """Drop a point set onto a window x window lattice padded by 2R on all
    sides; returns the mask and the radius converted to pixel units."""
    xs = [p.x for p in ps]
    ys = [p.y for p in ps]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) + 4.0 * r
    h = span / (window - 1)
    ox = (min(xs) + max(xs)) / 2.0 - (window - 1) * h / 2.0
    oy = (min(ys) + max(ys)) / 2.0 - (window - 1) * h / 2.0
    bits = np.zeros((window, window), dtype=bool)
    for p in ps:
        ix = int(round((p.x - ox) / h))
        iy = int(round((p.y - oy) / h))
        bits[iy, ix] = True
    return BinaryMask(bits, (ox, oy), h), r / h


def report_payload(command: str, config: dict, result: dict) -> dict:
    return {
        "schema": SCHEMA,
        "command": command,
        "config": config,
        "result": result,
        "metadata": {"timestamp": datetime.now(timezone.utc).isoformat()},
    }


def write_report(payload: dict, path) -> None:
    """Stable key order; everything except `metadata` is deterministic."""
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def strip_metadata(payload: dict) -> dict:
    return {k: v for k, v in payload.items() if k != "metadata"}
