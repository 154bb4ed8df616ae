"""Command-line entry point: ``spheroid-qm {free,osc,levels,validate,geometry}``.

Parameters come from flags, from a JSON file given with ``--config``, or from
a named preset (fig2a, fig2b, fig2c); explicit flags win over the config
file, which wins over the preset. Exit status is 0 on success, 1 when a validation check fails and 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import free_particle as fp
from . import oscillator as osc
from .errors import DomainError
from .geometry import (
    SurfaceParams,
    TangentPoint,
    metric_tangent,
    potential_osc,
    project_spheroid_to_sphere,
    sphere_measure,
    tangent_to_spheroid,
)
from .levels import emit_level_svg, fmt
from .numerics import QuadratureSpec
from .validation import PRESETS, SUITES, embedding_metric_fd, run_suites

DEFAULTS = {"lambda": 1.0, "eps": 0.1, "omega": 1.0, "n_max": 3, "coupling": "squared", "suite": "all"}
CONFIG_KEYS = {"lambda", "eps", "omega", "n_max", "coupling", "preset", "out", "svg", "suite", "point"}


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # every default is None so that unset flags can fall back to config/preset values
    common.add_argument("--lambda", dest="lambda", type=float, default=None, help="curvature 1/a^2")
    common.add_argument("--eps", type=float, default=None, help="a^2/b^2 - 1")
    common.add_argument("--omega", type=float, default=None, help="oscillator frequency")
    common.add_argument("--n-max", dest="n_max", type=int, default=None)
    common.add_argument("--preset", choices=sorted(PRESETS), default=None)
    common.add_argument("--coupling", choices=("squared", "literal"), default=None)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--svg", default=None, help="level diagram path (osc, levels)")
    common.add_argument("--config", default=None, help="JSON file with default parameters")

    ap = argparse.ArgumentParser(prog="spheroid-qm", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("free", parents=[common], help="free-particle level table (CSV)")
    sub.add_parser("osc", parents=[common], help="oscillator level table (CSV)")
    sub.add_parser("levels", parents=[common], help="unperturbed and perturbed oscillator tables (CSV)")
    v = sub.add_parser("validate", parents=[common], help="run invariant suites (JSON)")
    v.add_argument("--suite", choices=["all", *SUITES], action="append", default=None)
    g = sub.add_parser("geometry", parents=[common], help="metric and projection diagnostics (JSON)")
    g.add_argument("--point", nargs=2, type=float, action="append", metavar=("X", "Y"), default=None)
    return ap


def resolve(args: argparse.Namespace) -> dict:
    """Merge defaults < preset < config file < explicit flags."""
    cfg = dict(DEFAULTS)
    file_cfg = {}
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")
        file_cfg = {k.replace("-", "_"): v for k, v in file_cfg.items()}
        unknown = set(file_cfg) - CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    preset = args.preset or file_cfg.get("preset")
    if preset is not None:
        if preset not in PRESETS:
            raise UsageError(f"unknown preset {preset!r}")
        lam, om, eps = PRESETS[preset]
        cfg.update({"lambda": lam, "omega": om, "eps": eps})
    cfg.update(file_cfg)
    cfg.update({k: v for k, v in vars(args).items() if v is not None and k not in ("command", "config")})
    if isinstance(cfg.get("suite"), str):
        cfg["suite"] = [cfg["suite"]]
    return cfg


def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _osc_params(cfg, eps=None) -> osc.OscParams:
    return osc.OscParams.from_values(cfg["lambda"], cfg["omega"], cfg["eps"] if eps is None else eps, cfg["coupling"])


def cmd_free(cfg, spec) -> int:
    s = SurfaceParams.from_curvature(cfg["lambda"], cfg["eps"])
    _emit(fp.spectrum(cfg["n_max"], s, spec).to_csv(), cfg.get("out"))
    return 0


def cmd_osc(cfg, spec) -> int:
    table = osc.level_table(cfg["n_max"], _osc_params(cfg), spec)
    _emit(table.to_csv(), cfg.get("out"))
    if cfg.get("svg"):
        emit_level_svg((osc.level_table(cfg["n_max"], _osc_params(cfg, 0.0), spec), table), cfg["svg"])
    return 0


def cmd_levels(cfg, spec) -> int:
    sphere = osc.level_table(cfg["n_max"], _osc_params(cfg, 0.0), spec)
    spheroid = osc.level_table(cfg["n_max"], _osc_params(cfg), spec)
    header, *rows0 = sphere.to_csv().splitlines()
    _, *rows1 = spheroid.to_csv().splitlines()
    lines = ["column," + header]
    lines += [f"{fmt(0.0)},{r}" for r in rows0]
    lines += [f"{fmt(spheroid.eps)},{r}" for r in rows1]
    _emit("\n".join(lines) + "\n", cfg.get("out"))
    if cfg.get("svg"):
        emit_level_svg((sphere, spheroid), cfg["svg"])
    return 0


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=float) + "\n"


def _round(obj):
    """Pass floats through the 12-significant-digit formatter so JSON is stable."""
    if isinstance(obj, float):
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def cmd_validate(cfg, spec) -> int:
    report = _round(run_suites(cfg["suite"], spec))
    _emit(_json(report), cfg.get("out"))
    return 0 if report["pass"] else 1


def cmd_geometry(cfg, spec) -> int:
    s = SurfaceParams.from_curvature(cfg["lambda"], cfg["eps"])
    points = cfg.get("point") or [[0.0, 0.0], [0.5, 0.0], [0.3, -0.7]]
    rows = []
    for x, y in points:
        t = TangentPoint(float(x), float(y))
        g = metric_tangent(t, s)
        q = tangent_to_spheroid(t, s)
        sph = project_spheroid_to_sphere(q, s)
        rows.append({
            "point": [t.x, t.y],
            "chi": t.chi(s.lam),
            "metric": list(g),
            "metric_fd_dev": float(abs(g.matrix() - embedding_metric_fd(t, s)).max()),
            "sqrt_g_sphere": float(sphere_measure(t.rho, s.lam) ** 0.5),
            "spheroid_point": [q.q1, q.q2, q.q3],
            "sphere_point": [sph.q1, sph.q2, sph.q3],
            "potential": potential_osc(t, s, cfg["omega"], cfg["coupling"]),
        })
    _emit(_json(_round({"lambda": s.lam, "eps": s.eps, "points": rows})), cfg.get("out"))
    return 0


COMMANDS = {"free": cmd_free, "osc": cmd_osc, "levels": cmd_levels, "validate": cmd_validate, "geometry": cmd_geometry}


def main(argv=None) -> int:
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve(args)
        if cfg["n_max"] < 0 or cfg["n_max"] > 40:
            raise DomainError(f"n-max must lie in 0..40, got {cfg['n_max']}")
        spec = QuadratureSpec.from_env()
        return COMMANDS[args.command](cfg, spec)
    except (UsageError, DomainError, ValueError) as exc:
        print(f"spheroid-qm: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"spheroid-qm: I/O error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
