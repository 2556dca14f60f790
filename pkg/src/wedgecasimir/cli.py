"""Command-line interface: paths, energy, sweep, limit, validate.

Machine-readable output: one JSON object per run for ``paths`` and
``energy``, CSV (or JSON) tables for ``sweep`` and ``limit``.  All numbers
are printed with 12 significant digits so output round-trips through text,
and identical inputs produce byte-identical output.  Angles are accepted in
radians (--gamma, --psi) or degrees (--gamma-deg, --psi-deg).  A config file
of ``key=value`` lines (keys are the long flag names) supplies defaults;
explicit flags override it.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import energy as en
from . import validation as val
from . import wedge as wg

DEFAULT_GAMMAS = "0.2,0.1,0.05,0.025"


def _sig12(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _round_tree(obj):
    if isinstance(obj, dict):
        return {k: _round_tree(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_tree(v) for v in obj]
    return _sig12(obj)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, output: str | None) -> None:
    _emit(json.dumps(_round_tree(payload), indent=2) + "\n", output)


def _emit_csv(header: list[str], rows: list[list], output: str | None) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(c) for c in row) for row in rows]
    _emit("\n".join(lines) + "\n", output)


def _read_config(path: str) -> dict[str, str]:
    cfg = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {line!r}")
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def _resolve(args, cfg: dict[str, str], name: str, cast, default=None):
    """Flag value if given, else config value, else default."""
    flag = getattr(args, name.replace("-", "_"), None)
    if flag is not None:
        return flag
    if name in cfg:
        return cast(cfg[name])
    return default


def _angle(args, cfg, rad_name: str, deg_name: str, default=None) -> float | None:
    rad = _resolve(args, cfg, rad_name, float)
    deg = _resolve(args, cfg, deg_name, float)
    if rad is not None and deg is not None:
        raise ValueError(f"give only one of --{rad_name} and --{deg_name}")
    if deg is not None:
        return math.radians(deg)
    if rad is not None:
        return rad
    return default


def _geometry(args, cfg) -> wg.WedgeGeometry:
    gamma = _angle(args, cfg, "gamma", "gamma-deg")
    if gamma is None:
        raise ValueError("an opening angle is required (--gamma or --gamma-deg)")
    r0 = _resolve(args, cfg, "r0", float, 1.0)
    r1 = _resolve(args, cfg, "r1", float, 2.0)
    width = _resolve(args, cfg, "width", float, 1.0)
    return wg.WedgeGeometry(gamma, r0, r1, width)


def _add_geometry_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gamma", type=float, help="opening angle in radians")
    p.add_argument("--gamma-deg", type=float, help="opening angle in degrees")
    p.add_argument("--r0", type=float, help="inner plate radius (default 1)")
    p.add_argument("--r1", type=float, help="outer plate radius (default 2)")
    p.add_argument("--width", type=float, help="plate width (default 1)")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file of flag defaults")
    p.add_argument("--output", help="write to file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wedgecasimir",
        description="Geometric-optics Casimir energy in a wedge: closed paths, "
                    "energy sums, limits and validation.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("paths", help="list closed bounce paths from a point")
    _add_common_flags(p)
    _add_geometry_flags(p)
    p.add_argument("--r", type=float, help="base point distance from the vertex")
    p.add_argument("--psi", type=float, help="base point angle from vertical, radians")
    p.add_argument("--psi-deg", type=float, help="base point angle from vertical, degrees")
    p.add_argument("--max-bounces", type=int, help="largest bounce count to list")

    p = sub.add_parser("energy", help="energy breakdown for one geometry")
    _add_common_flags(p)
    _add_geometry_flags(p)
    p.add_argument("--include-odd", action="store_true",
                   help="add the odd-order total into grand_total")
    p.add_argument("--units", type=float,
                   help="display multiplier for all energies (default 1 = hbar*c units)")

    p = sub.add_parser("sweep", help="energy table over one swept parameter")
    _add_common_flags(p)
    _add_geometry_flags(p)
    p.add_argument("--param", choices=["gamma", "r0", "r1", "width"],
                   help="parameter to sweep (default gamma)")
    p.add_argument("--start", type=float, help="sweep start value")
    p.add_argument("--stop", type=float, help="sweep stop value")
    p.add_argument("--count", type=int, help="number of sweep points (default 20)")
    p.add_argument("--scale", choices=["linear", "log"], help="sweep spacing")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")

    p = sub.add_parser("limit", help="closing-wedge convergence to parallel plates")
    _add_common_flags(p)
    p.add_argument("--separation", type=float, help="minimum plate separation L (default 1)")
    p.add_argument("--plate-length", type=float, help="plate length b (default 1)")
    p.add_argument("--width", type=float, help="plate width W (default 1)")
    p.add_argument("--gammas", help=f"comma list of opening angles (default {DEFAULT_GAMMAS})")
    p.add_argument("--format", choices=["csv", "json"], help="output format (default csv)")

    p = sub.add_parser("validate", help="run the oracle-vs-closed-form suite")
    _add_common_flags(p)
    p.add_argument("--samples", type=int, help="randomized sample count (default 300)")
    p.add_argument("--seed", type=int, help="random seed (default 20240424)")
    p.add_argument("--inject-fault", type=float, default=None,
                   help="testing hook: perturb closed forms by this relative amount")
    return parser


def cmd_paths(args, cfg) -> int:
    geom = _geometry(args, cfg)
    r = _resolve(args, cfg, "r", float)
    psi = _angle(args, cfg, "psi", "psi-deg")
    if r is None or psi is None:
        raise ValueError("paths needs --r and --psi (or --psi-deg)")
    point = wg.PolarPoint(r, psi)
    point.require_interior(geom)
    default_max = 2 * en.m0_of(geom) + 1
    max_bounces = _resolve(args, cfg, "max-bounces", int, min(default_max, 13))
    orbits = []
    for path in wg.closed_paths_from(point, geom, max_bounces):
        orbits.append({
            "bounces": path.bounces,
            "first_plate": path.first_plate.value,
            "branch_sign": path.branch_sign,
            "length": path.total_length,
            "initial_xi": path.initial_xi,
            "points": [[p.z.real, p.t] for p in path.points],
        })
    payload = {
        "gamma": geom.gamma,
        "r": point.r,
        "psi": point.psi,
        "max_bounces": max_bounces,
        "orbits": orbits,
    }
    _emit_json(payload, _resolve(args, cfg, "output", str))
    return 0


def cmd_energy(args, cfg) -> int:
    geom = _geometry(args, cfg)
    include_odd = bool(getattr(args, "include_odd", False) or
                       cfg.get("include-odd", "").lower() in ("1", "true", "yes"))
    units = _resolve(args, cfg, "units", float, 1.0)
    bd = en.energy_total(geom, include_odd=include_odd, units=units)
    payload = bd.to_dict()
    for key in ("even_total", "odd_total", "grand_total"):
        payload[key] = payload[key] * units
    payload["even_terms"] = {k: v * units for k, v in payload["even_terms"].items()}
    _emit_json(payload, _resolve(args, cfg, "output", str))
    return 0


def cmd_sweep(args, cfg) -> int:
    param = _resolve(args, cfg, "param", str, "gamma")
    start = _resolve(args, cfg, "start", float)
    stop = _resolve(args, cfg, "stop", float)
    if start is None or stop is None:
        raise ValueError("sweep needs --start and --stop")
    count = _resolve(args, cfg, "count", int, 20)
    if count < 1:
        raise ValueError("sweep count must be positive")
    scale = _resolve(args, cfg, "scale", str, "linear")
    if scale == "log":
        if start <= 0 or stop <= 0:
            raise ValueError("log scale needs positive bounds")
        values = np.geomspace(start, stop, count)
    else:
        values = np.linspace(start, stop, count)

    base = {
        "gamma": _angle(args, cfg, "gamma", "gamma-deg", math.pi / 4),
        "r0": _resolve(args, cfg, "r0", float, 1.0),
        "r1": _resolve(args, cfg, "r1", float, 2.0),
        "width": _resolve(args, cfg, "width", float, 1.0),
    }
    rows = []
    for v in values:
        params = dict(base)
        params[param] = float(v)
        bd = en.energy_total(wg.WedgeGeometry(**params))
        rows.append([float(v), bd.m0, bd.m1, bd.even_total, bd.odd_total,
                     bd.grand_total])
    header = [param, "m0", "m1", "even_total", "odd_total", "grand_total"]
    fmt = _resolve(args, cfg, "format", str, "csv")
    output = _resolve(args, cfg, "output", str)
    if fmt == "json":
        _emit_json({"param": param,
                    "rows": [dict(zip(header, row)) for row in rows]}, output)
    else:
        _emit_csv(header, rows, output)
    return 0


def cmd_limit(args, cfg) -> int:
    L = _resolve(args, cfg, "separation", float, 1.0)
    b = _resolve(args, cfg, "plate-length", float, 1.0)
    W = _resolve(args, cfg, "width", float, 1.0)
    gam_str = _resolve(args, cfg, "gammas", str, DEFAULT_GAMMAS)
    gammas = [float(tok) for tok in gam_str.split(",") if tok.strip()]
    if not gammas:
        raise ValueError("empty gamma list")
    for g in gammas:
        if not 0.0 < g < math.pi / 2:
            raise ValueError(f"opening angle {g} outside (0, pi/2)")
    rows = [[row.gamma, row.energy, row.parallel_plate, row.ratio]
            for row in en.limit_sweep(L, b, W, gammas)]
    header = ["gamma", "energy", "parallel_plate", "ratio"]
    fmt = _resolve(args, cfg, "format", str, "csv")
    output = _resolve(args, cfg, "output", str)
    if fmt == "json":
        _emit_json({"separation": L, "plate_length": b, "width": W,
                    "rows": [dict(zip(header, row)) for row in rows]}, output)
    else:
        _emit_csv(header, rows, output)
    return 0


def cmd_validate(args, cfg) -> int:
    samples = _resolve(args, cfg, "samples", int, 300)
    seed = _resolve(args, cfg, "seed", int, 20240424)
    fault = _resolve(args, cfg, "inject-fault", float, 0.0)
    report = val.run_validation(samples=samples, seed=seed, fault=fault)
    _emit("\n".join(report.lines()) + "\n", _resolve(args, cfg, "output", str))
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _read_config(args.config) if args.config else {}
        handler = {
            "paths": cmd_paths,
            "energy": cmd_energy,
            "sweep": cmd_sweep,
            "limit": cmd_limit,
            "validate": cmd_validate,
        }[args.command]
        return handler(args, cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
