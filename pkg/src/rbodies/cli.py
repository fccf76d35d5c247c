"""Command-line front end.

Exit codes: 0 all checks pass, 1 a refutation or witness was found, 2 input
error.  Every command writes a JSON report (stable key order; timestamps live
in a separate metadata field so the remainder is byte-deterministic).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import corpus, io, render
from .cones import (
    ConeSpec,
    cone_equivalence_sample,
    dual_sector,
    normal_arcs,
    support_recovery_witness,
    tangent_cone,
)
from .exact import nr_convexity_profile
from .geom import DEFAULT_TOL, UnitVec2
from .grid import (
    BinaryMask,
    hulloid,
    hulloid_sweep,
    identity_report,
    is_rbody,
)
from .reach import (
    DEFAULT_SEED,
    certify_reach_d2,
    reach_ge_lens,
    reach_lower_bound,
    walther_rolling_check,
)
from .reports import EmptyBodyError, InputError, NoInteriorError


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    radius: float | None = None
    out: str = "."
    samples: int = 512
    seed: int = DEFAULT_SEED
    band_px: float = DEFAULT_TOL.band_px
    format: str = "pgm"
    render: str = "none"
    method: str = "lens"
    radii: list[float] = field(default_factory=list)
    corpus_size: int = 0
    pair_budget: int = 20000
    other: ConeSpec | None = None


def _load_any(path: str):
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such input: {path}")
    if p.suffix.lower() == ".pgm":
        return io.read_mask_pgm(p)
    try:
        d = json.loads(p.read_text())
    except (OSError, ValueError) as e:
        raise InputError(f"{path}: not a readable JSON input: {e}") from e
    if isinstance(d, dict) and "rows" in d:
        return io.mask_from_json_dict(d)
    if isinstance(d, dict) and "generators" in d:
        return io.load_cone_spec(p)
    if isinstance(d, dict) and "points" in d:
        return io.load_point_set(p)
    raise InputError(f"{path}: unrecognized input schema")


def _as_mask(obj, cfg: RunConfig) -> tuple[BinaryMask, float]:
    """Masks pass through; point sets are auto-rasterized with R converted
    to pixel units."""
    if isinstance(obj, BinaryMask):
        if cfg.radius is None:
            raise InputError("--radius is required")
        return obj, cfg.radius
    if isinstance(obj, tuple):  # (PointSet2, R-from-file)
        ps, r_file = obj
        r = cfg.radius if cfg.radius is not None else r_file
        if r is None:
            raise InputError("--radius is required (not present in the input file)")
        return io.rasterize_point_set(ps, r)
    raise InputError("this command needs a mask or point-set input")


def _write_mask(m: BinaryMask, cfg: RunConfig, stem: str) -> str:
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if cfg.format == "json":
        path = outdir / f"{stem}.json"
        path.write_text(json.dumps(io.mask_to_json_dict(m), sort_keys=True) + "\n")
    else:
        path = outdir / f"{stem}.pgm"
        io.write_mask_pgm(m, path)
    if cfg.render == "png":
        render.render_mask_png(m, outdir / f"{stem}.png")
    elif cfg.render == "svg":
        render.render_mask_svg(m, outdir / f"{stem}.svg")
    return str(path)


def _finish(cfg: RunConfig, command: str, result: dict, exit_code: int) -> int:
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    payload = io.report_payload(
        command,
        {
            "input": cfg.input,
            "radius": cfg.radius,
            "seed": cfg.seed,
            "samples": cfg.samples,
            "band_px": cfg.band_px,
        },
        result,
    )
    io.write_report(payload, outdir / f"{command}-report.json")
    return exit_code


def _cmd_hulloid(cfg: RunConfig) -> int:
    m, r = _as_mask(_load_any(cfg.input), cfg)
    h = hulloid(m, r)
    path = _write_mask(h, cfg, "hulloid")
    result = {
        "output": path,
        "radius_px": r,
        "foreground": h.count,
        "added": int((h.bits & ~m.bits).sum()),
        "hulloid_full": bool(h.meta.get("hulloid_full", False)),
    }
    return _finish(cfg, "hulloid", result, 0)


def _cmd_check_rbody(cfg: RunConfig) -> int:
    m, r = _as_mask(_load_any(cfg.input), cfg)
    ok, rep = is_rbody(m, r, cfg.band_px)
    return _finish(cfg, "check-rbody", rep.to_dict(), 0 if ok else 1)


def _cmd_identities(cfg: RunConfig) -> int:
    if cfg.corpus_size > 0:
        masks = corpus.blob_corpus(cfg.corpus_size, seed=cfg.seed)
    else:
        m, _ = _as_mask(_load_any(cfg.input), cfg)
        masks = [m]
    if cfg.radius is None:
        raise InputError("--radius is required")
    reports = []
    ok = True
    for i, m in enumerate(masks):
        rep = identity_report(m, cfg.radius, cfg.band_px)
        ok = ok and rep.passed
        reports.append({"mask": i, **rep.to_dict()})
    return _finish(cfg, "identities", {"cases": reports, "passed": ok}, 0 if ok else 1)


def _cmd_support(cfg: RunConfig) -> int:
    obj = _load_any(cfg.input)
    if not isinstance(obj, tuple):
        raise InputError("support needs a point-set input")
    ps, r_file = obj
    r = cfg.radius if cfg.radius is not None else r_file
    if r is None:
        raise InputError("--radius is required")
    prof = nr_convexity_profile(ps, r)
    entries = []
    for e in prof.entries:
        entries.append(
            {
                "point": [e.point.x, e.point.y],
                "arcs": [[a.mid, a.halfwidth] for a in e.arcs.arcs],
                "full_circle": e.arcs.is_full,
                "spherically_convex": e.sph_convex,
            }
        )
    if cfg.render in ("svg", "png"):
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, e in enumerate(prof.entries):
            render.render_arcs_svg(e.point, e.arcs, outdir / f"support-{i}.svg")
    result = {
        "R": r,
        "entries": entries,
        "any_empty": prof.any_empty,
        "all_convex": prof.all_convex,
    }
    return _finish(cfg, "support", result, 0)


def _cmd_rcone(cfg: RunConfig) -> int:
    spec = _load_any(cfg.input)
    if not isinstance(spec, ConeSpec):
        raise InputError("rcone needs a cone-spec input")
    tan = tangent_cone(spec)
    dual = dual_sector(spec)
    narcs = normal_arcs(spec)
    hull_spec = ConeSpec(R=spec.R, arcs=narcs) if not narcs.is_empty else spec
    equiv = cone_equivalence_sample(spec, hull_spec)
    probes = []
    n_probe = min(cfg.samples, 360)
    for k in range(n_probe):
        v = UnitVec2(k * 2.0 * math.pi / n_probe)
        w = support_recovery_witness(spec, v, samples=64)
        if w.supports:
            probes.append(v.angle)
    if cfg.render in ("svg", "png"):
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        render.render_cone_svg(spec, outdir / "rcone.svg")
    result = {
        "R": spec.R,
        "tangent": {"kind": tan.kind, "lo": tan.lo, "hi": tan.hi},
        "dual": {"kind": dual.kind, "lo": dual.lo, "hi": dual.hi},
        "normal_arcs": [[a.mid, a.halfwidth] for a in narcs.arcs],
        "supported_probe_angles": probes,
        "equivalence_with_sph_hull": equiv.to_dict(),
    }
    return _finish(cfg, "rcone", result, 0 if equiv.passed else 1)


def _cmd_reach(cfg: RunConfig) -> int:
    obj = _load_any(cfg.input)
    if cfg.method == "d2" and isinstance(obj, tuple):
        ps, r_file = obj
        r = cfg.radius if cfg.radius is not None else r_file
        if r is None:
            raise InputError("--radius is required")
        rep = certify_reach_d2(ps, r)
        return _finish(cfg, "reach", rep.to_dict(), 0 if rep.passed else 1)
    m, r = _as_mask(obj, cfg)
    if cfg.method == "lens":
        rep = reach_ge_lens(m, r, cfg.pair_budget, cfg.seed)
        result, code = rep.to_dict(), 0 if rep.passed else 1
    elif cfg.method == "d2":
        rep = certify_reach_d2(m, r)
        result, code = rep.to_dict(), 0 if rep.passed else 1
    elif cfg.method == "walther":
        rep = walther_rolling_check(m, r, cfg.pair_budget, cfg.seed)
        result, code = rep.to_dict(), 0 if rep.passed else 1
    elif cfg.method == "lower-bound":
        lb = reach_lower_bound(m, cfg.pair_budget, seed=cfg.seed)
        result, code = {"reach_lower_bound": lb}, 0
    else:
        raise InputError(f"unknown reach method {cfg.method!r}")
    return _finish(cfg, "reach", result, code)


def _cmd_sweep(cfg: RunConfig) -> int:
    obj = _load_any(cfg.input)
    if not isinstance(obj, BinaryMask):
        raise InputError("sweep needs a mask input")
    if not cfg.radii:
        raise InputError("--radii is required (increasing list)")
    rows = hulloid_sweep(obj, cfg.radii)
    result = {"rows": [{"R": r, "hausdorff_to_hull": d} for r, d in rows]}
    return _finish(cfg, "sweep", result, 0)


def _cmd_render(cfg: RunConfig) -> int:
    obj = _load_any(cfg.input)
    outdir = Path(cfg.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if isinstance(obj, BinaryMask):
        if cfg.render == "svg":
            render.render_mask_svg(obj, outdir / "mask.svg")
            path = str(outdir / "mask.svg")
        else:
            render.render_mask_png(obj, outdir / "mask.png")
            path = str(outdir / "mask.png")
    elif isinstance(obj, ConeSpec):
        render.render_cone_svg(obj, outdir / "rcone.svg")
        path = str(outdir / "rcone.svg")
    else:
        ps, r = obj
        m, _ = io.rasterize_point_set(ps, r or cfg.radius or 1.0)
        render.render_mask_png(m, outdir / "points.png")
        path = str(outdir / "points.png")
    return _finish(cfg, "render", {"output": path}, 0)


_COMMANDS = {
    "hulloid": _cmd_hulloid,
    "check-rbody": _cmd_check_rbody,
    "identities": _cmd_identities,
    "support": _cmd_support,
    "rcone": _cmd_rcone,
    "reach": _cmd_reach,
    "sweep": _cmd_sweep,
    "render": _cmd_render,
}


def dispatch(cfg: RunConfig) -> int:
    try:
        if cfg.command not in _COMMANDS:
            raise InputError(f"unknown command {cfg.command!r}")
        if cfg.radius is not None and cfg.radius <= 0:
            raise InputError("R must be positive")
        return _COMMANDS[cfg.command](cfg)
    except (InputError, EmptyBodyError, NoInteriorError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rbodies",
        description="R-hulloids, supporting arcs, R-cones and reach certification",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", help="mask (.pgm/.json), point set or cone spec (.json)")
        p.add_argument("--radius", type=float, default=None, help="R (pixel units for masks)")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--samples", type=int, default=512)
        p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
        p.add_argument("--band-px", type=float, default=DEFAULT_TOL.band_px)
        p.add_argument("--format", choices=("pgm", "json"), default="pgm")
        p.add_argument("--render", choices=("svg", "png", "none"), default="none")
        if name == "reach":
            p.add_argument(
                "--method", choices=("lens", "d2", "walther", "lower-bound"), default="lens"
            )
            p.add_argument("--pair-budget", type=int, default=20000)
        if name == "sweep":
            p.add_argument("--radii", type=float, nargs="+", default=[])
        if name == "identities":
            p.add_argument("--corpus", type=int, default=0, help="run N bundled blob masks")
    return ap


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=ns.command,
        input=ns.input,
        radius=ns.radius,
        out=ns.out,
        samples=ns.samples,
        seed=ns.seed,
        band_px=ns.band_px,
        format=ns.format,
        render=ns.render,
        method=getattr(ns, "method", "lens"),
        radii=list(getattr(ns, "radii", []) or []),
        corpus_size=getattr(ns, "corpus", 0),
        pair_budget=getattr(ns, "pair_budget", 20000),
    )
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
