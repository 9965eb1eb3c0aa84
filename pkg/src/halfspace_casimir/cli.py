"""Command-line front end.

Subcommands:

* ``reflection`` — tabulate the reflection-factor breakdown over a
  log-spaced momentum grid.
* ``energy`` — tabulate Casimir energy and eta (ratio to the Dirichlet
  reference) curves over a log-spaced separation grid, one curve per
  mass-to-coupling ratio mu.
* ``verify`` — run the acceptance-check suite and emit a report.

Output is data-only (CSV with ``#`` metadata lines, or JSON); identical
configuration produces byte-identical files.  Exit codes: 0 success,
1 numeric failure, 2 bad configuration, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Dict, List, Optional, Sequence

import numpy as np

from . import __version__, energy, verify
from .errors import NumericsError
from .quadrature import QuadratureSpec
from .reflection import CouplingMode, ModelParams, n_total

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_CONFIG = 2
EXIT_VERIFY = 3

_MODES = {"constant": CouplingMode.CONSTANT, "sqrt": CouplingMode.SQRT_MOMENTUM}


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_config_file(path: str) -> Dict[str, str]:
    """Flat key=value format; '#' starts a comment, blank lines ignored."""
    values: Dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"line {lineno}: expected key=value, got {raw!r}")
                key, _, val = line.partition("=")
                values[key.strip().replace("-", "_")] = val.strip()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from exc
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="halfspace",
        description="Reflection factor and Casimir energy of scalar-field half spaces.",
    )
    parser.add_argument("--version", action="version", version=f"halfspace {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        # argparse defaults stay None so config-file values can fill in;
        # the real defaults live in _resolve below.
        p.add_argument("--mode", choices=sorted(_MODES))
        p.add_argument("--lambda", dest="lam", type=float, help="coupling amplitude")
        p.add_argument("--rel-tol", type=float)
        p.add_argument("--abs-tol", type=float)
        p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--config", help="flat key=value config file")

    p_ref = sub.add_parser("reflection", help="tabulate the reflection factor")
    common(p_ref)
    p_ref.add_argument("--mass", type=float)
    p_ref.add_argument("--gamma-min", type=float)
    p_ref.add_argument("--gamma-max", type=float)
    p_ref.add_argument("--gamma-points", type=int)
    p_ref.add_argument(
        "--absolute", action="store_true", default=None,
        help="emit |value| columns (the sign convention of plotted "
        "reflection factors varies)",
    )

    p_en = sub.add_parser("energy", help="tabulate energy and eta curves")
    common(p_en)
    p_en.add_argument(
        "--mu", type=float, action="append",
        help="mass-to-coupling ratio; repeat for several curves "
        "(default 0.001 0.01 0.5 1)",
    )
    p_en.add_argument("--l-min", type=float)
    p_en.add_argument("--l-max", type=float)
    p_en.add_argument("--l-points", type=int)

    p_ver = sub.add_parser("verify", help="run the acceptance-check suite")
    common(p_ver)
    return parser


_DEFAULTS = {
    "reflection": {
        "mode": "constant", "lam": 1.0, "mass": 1.0,
        "gamma_min": 1e-2, "gamma_max": 1e2, "gamma_points": 81,
        "rel_tol": 1e-9, "abs_tol": 1e-12, "format": "csv",
        "out": None, "absolute": False,
    },
    "energy": {
        "mode": "sqrt", "lam": 1.0, "mu": [0.001, 0.01, 0.5, 1.0],
        "l_min": 0.1, "l_max": 100.0, "l_points": 13,
        # energy sweeps integrate many reflection evaluations; 1e-7 keeps
        # default runs fast and is far tighter than the table's use cases
        "rel_tol": 1e-7, "abs_tol": 1e-12, "format": "csv", "out": None,
    },
    "verify": {
        "mode": "constant", "lam": 1.0, "rel_tol": 1e-9, "abs_tol": 1e-12,
        "format": "csv", "out": None,
    },
}

_CASTS = {
    "lam": float, "mass": float, "gamma_min": float, "gamma_max": float,
    "gamma_points": int, "l_min": float, "l_max": float, "l_points": int,
    "rel_tol": float, "abs_tol": float, "mode": str, "format": str,
    "out": str, "absolute": lambda s: s.lower() in ("1", "true", "yes"),
    "mu": lambda s: [float(v) for v in s.split()],
}


def _resolve(args: argparse.Namespace) -> Dict[str, object]:
    """Merge CLI flags over config-file values over built-in defaults."""
    cfg = dict(_DEFAULTS[args.command])
    if getattr(args, "config", None):
        for key, raw in _parse_config_file(args.config).items():
            if key not in cfg:
                raise ValueError(f"unknown config key: {key}")
            cfg[key] = _CASTS[key](raw)
    for key in cfg:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    _validate(args.command, cfg)
    return cfg


def _validate(command: str, cfg: Dict[str, object]) -> None:
    if cfg["rel_tol"] <= 0 or cfg["abs_tol"] <= 0:
        raise ValueError("tolerances must be positive")
    if cfg["format"] not in ("csv", "json"):
        raise ValueError(f"unknown format: {cfg['format']}")
    if cfg["mode"] not in _MODES:
        raise ValueError(f"unknown mode: {cfg['mode']}")
    if command == "reflection":
        if not (0 < cfg["gamma_min"] < cfg["gamma_max"]):
            raise ValueError("need 0 < gamma-min < gamma-max")
        if cfg["gamma_points"] < 1:
            raise ValueError("gamma-points must be >= 1")
        if cfg["mass"] <= 0:
            raise ValueError("mass must be positive")
    if command == "energy":
        if not (0 < cfg["l_min"] < cfg["l_max"]):
            raise ValueError("need 0 < l-min < l-max")
        if cfg["l_points"] < 1:
            raise ValueError("l-points must be >= 1")
        if any(mu <= 0 for mu in cfg["mu"]):
            raise ValueError("mu must be positive")


def _metadata_lines(command: str, cfg: Dict[str, object]) -> List[str]:
    lines = [f"# halfspace {__version__} — {command} table"]
    for key in sorted(cfg):
        if key == "out":
            continue
        lines.append(f"# {key} = {cfg[key]}")
    return lines


def _emit(
    header: Sequence[str],
    rows: List[List[object]],
    cfg: Dict[str, object],
    command: str,
    out_stream,
) -> None:
    def cell(v: object) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return _fmt(v)
        return str(v)

    if cfg["format"] == "csv":
        for line in _metadata_lines(command, cfg):
            print(line, file=out_stream)
        print(",".join(header), file=out_stream)
        for row in rows:
            print(",".join(cell(v) for v in row), file=out_stream)
    else:
        payload = [dict(zip(header, row)) for row in rows]
        json.dump(payload, out_stream, indent=1)
        out_stream.write("\n")


def _cmd_reflection(cfg: Dict[str, object], out_stream) -> int:
    spec = QuadratureSpec(rel_tol=cfg["rel_tol"], abs_tol=cfg["abs_tol"])
    p = ModelParams(cfg["lam"], cfg["mass"], _MODES[cfg["mode"]])
    grid = np.geomspace(cfg["gamma_min"], cfg["gamma_max"], cfg["gamma_points"])
    header = ["gamma", "n_mm", "n_mp", "n_nt", "n_t", "total", "error_estimate"]
    rows: List[List[object]] = []
    for gamma in grid:
        try:
            b = n_total(float(gamma), p, spec)
        except NumericsError as exc:
            print(f"error: reflection factor failed at gamma = {gamma:g}: {exc}",
                  file=sys.stderr)
            return EXIT_NUMERIC
        vals = [b.n_mm, b.n_mp, b.n_nt, b.n_t, b.total]
        if cfg["absolute"]:
            vals = [abs(v) for v in vals]
        rows.append([float(gamma), *vals, b.error_estimate])
    _emit(header, rows, cfg, "reflection", out_stream)
    return EXIT_OK


def _cmd_energy(cfg: Dict[str, object], out_stream) -> int:
    spec = QuadratureSpec(rel_tol=cfg["rel_tol"], abs_tol=cfg["abs_tol"])
    mode = _MODES[cfg["mode"]]
    if mode is CouplingMode.CONSTANT:
        print("warning: constant coupling mode yields a complex (unstable) "
              "energy at every separation", file=sys.stderr)
    grid = np.geomspace(cfg["l_min"], cfg["l_max"], cfg["l_points"])
    header = ["mu", "lambda_l", "eta", "e_real", "e_imag", "stable", "error_estimate"]
    rows: List[List[object]] = []
    for mu in cfg["mu"]:
        for ll in grid:
            p = ModelParams(cfg["lam"], mu * cfg["lam"], mode)
            try:
                e = energy.casimir_energy(float(ll) / cfg["lam"], p, spec)
            except NumericsError as exc:
                print(f"error: energy failed at mu = {mu:g}, lambda*L = {ll:g}: {exc}",
                      file=sys.stderr)
                return EXIT_NUMERIC
            eta = e.real_part / energy.dirichlet_reference(float(ll) / cfg["lam"])
            rows.append([float(mu), float(ll), eta, e.real_part, e.imag_part,
                         bool(e.stable), e.error_estimate])
    _emit(header, rows, cfg, "energy", out_stream)
    return EXIT_OK


def _cmd_verify(cfg: Dict[str, object], out_stream) -> int:
    results = verify.run_all()
    print(verify.format_report(results), file=out_stream)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _resolve(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    runner = {"reflection": _cmd_reflection, "energy": _cmd_energy,
              "verify": _cmd_verify}[args.command]
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8", newline="\n") as fh:
            return runner(cfg, fh)
    return runner(cfg, sys.stdout)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
