"""Command-line interface: one subcommand per analysis, CSV/JSON emission.

Output convention: CSV files are UTF-8, comma-separated, `.` decimal.  Leading
`#` comment lines carry the schema version, the subcommand, and the fully
resolved configuration (JSON, sorted keys) including the seed; exactly one
non-comment header row follows, then data rows with floats at 17 significant
digits.  Identical config + seed therefore reproduces files byte for byte.

Flag precedence: command-line flags override values from an optional JSON
file passed via --config; remaining gaps fall back to built-in defaults.
"""

import argparse
import json
import os
import sys
from dataclasses import asdict

import numpy as np

from .checks import run_checks
from .core import ModelParams, orbit_from_energy, seed_point
from .entropy import DensityField, relative_entropy_at_time
from .eos import default_offsets, eos_grid
from .hdiffusion import A_MODES, default_h_grid, pss_curve
from .orbits import orbit_extents, summarize
from .stochastic import DiscreteState, sde_simulate, ssa_simulate
from .errors import LvError

SCHEMA_VERSION = 1


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _write_csv(path, command, config, header, rows):
    """Write comment header + one column-header row + data rows.

    path=None writes to stdout.  newline is always \\n so outputs are
    byte-identical across platforms.
    """
    # output paths are I/O plumbing, not run parameters: excluding them keeps
    # two runs with the same physics config byte-identical wherever they land
    config = {k: v for k, v in config.items()
              if k not in ("out", "summary_out")}
    lines = [f"# schema_version: {SCHEMA_VERSION}",
             f"# command: {command}",
             f"# config: {json.dumps(config, sort_keys=True)}",
             ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)


def _resolve(args, defaults):
    """Merge CLI flags over --config file values over built-in defaults."""
    file_cfg = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as f:
            file_cfg = json.load(f)
    cfg = {}
    for key, default in defaults.items():
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            cfg[key] = cli_val
        elif key in file_cfg:
            cfg[key] = file_cfg[key]
        else:
            cfg[key] = default
    return cfg


def _workers(cfg):
    if cfg.get("workers"):
        return int(cfg["workers"])
    return int(os.environ.get("LVTHERMO_WORKERS", "1"))


def _floats(text):
    return [float(v) for v in str(text).split(",") if v != ""]


def _cmd_orbit(args):
    cfg = _resolve(args, {"alpha": 1.0, "h": 2.61, "tol": 1e-10,
                          "n_points": 512, "out": None, "summary_out": None})
    p = ModelParams(cfg["alpha"])
    orbit = orbit_from_energy(cfg["h"], p, cfg["tol"])
    ts = np.linspace(0.0, orbit.period_tau, int(cfg["n_points"]))
    rows = [(t, *orbit.dense.at(t)) for t in ts]
    _write_csv(cfg["out"], "orbit", cfg, ("t", "x", "y"), rows)
    summary = asdict(summarize(orbit))
    text = json.dumps(summary, sort_keys=True, indent=2) + "\n"
    if cfg["summary_out"]:
        with open(cfg["summary_out"], "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def _cmd_eos(args):
    cfg = _resolve(args, {"alphas": "0.5,0.6,0.8,1.0,1.2", "offsets": None,
                          "n_offsets": 12, "tol": 1e-10, "workers": None,
                          "out": None})
    alphas = _floats(cfg["alphas"])
    if cfg["offsets"] is not None:
        offsets = _floats(cfg["offsets"])
    else:
        offsets = [float(v) for v in default_offsets(int(cfg["n_offsets"]))]
    cfg["offsets"] = ",".join(_fmt(v) for v in offsets)
    records = eos_grid(alphas, offsets, tol=cfg["tol"], workers=_workers(cfg))
    header = ("alpha", "h", "tau", "area_A", "ln_area", "theta",
              "f_alpha_abs", "area_lebesgue", "error")
    rows = [(r.alpha, r.h, r.tau, r.area_A, r.ln_area, r.theta,
             r.f_alpha_abs, r.area_lebesgue, r.error or "") for r in records]
    _write_csv(cfg["out"], "eos", cfg, header, rows)
    return 0


def _cmd_contours(args):
    cfg = _resolve(args, {"alpha": 1.0, "h_list": "3.40,2.61,2.19,2.01",
                          "tol": 1e-10, "n_points": 400, "out": None})
    p = ModelParams(cfg["alpha"])
    rows = []
    for h in _floats(cfg["h_list"]):
        orbit = orbit_from_energy(h, p, cfg["tol"])
        ts = np.linspace(0.0, orbit.period_tau, int(cfg["n_points"]))
        for t in ts:
            x, y = orbit.dense.at(t)
            rows.append((h, t, x, y))
    _write_csv(cfg["out"], "contours", cfg, ("h", "t", "x", "y"), rows)
    return 0


def _cmd_ssa(args):
    cfg = _resolve(args, {"alpha": 1.0, "omega": 100.0, "m0": None,
                          "n0": None, "t_max": 10.0, "seed": 0,
                          "path_index": 0, "out": None})
    p = ModelParams(cfg["alpha"])
    om = float(cfg["omega"])
    m0 = int(cfg["m0"]) if cfg["m0"] is not None else int(round(om))
    n0 = int(cfg["n0"]) if cfg["n0"] is not None else int(round(om))
    cfg["m0"], cfg["n0"] = m0, n0
    path = ssa_simulate(DiscreteState(m0, n0, om), p, cfg["t_max"],
                        int(cfg["seed"]), path_index=int(cfg["path_index"]))
    rows = zip(path.times.tolist(), path.m.tolist(), path.n.tolist())
    _write_csv(cfg["out"], "ssa", cfg, ("t", "m", "n"), rows)
    return 0


def _cmd_sde(args):
    cfg = _resolve(args, {"alpha": 1.0, "epsilon": 0.01, "x0": None,
                          "y0": None, "h": None, "dt": 1e-3, "t_max": 10.0,
                          "record_every": 1, "seed": 0, "path_index": 0,
                          "out": None})
    p = ModelParams(cfg["alpha"])
    if cfg["x0"] is not None and cfg["y0"] is not None:
        start = (float(cfg["x0"]), float(cfg["y0"]))
    elif cfg["h"] is not None:
        start = seed_point(float(cfg["h"]), p)
    else:
        raise ValueError("provide --x0/--y0 or --h for the start state")
    cfg["x0"], cfg["y0"] = start
    path = sde_simulate(start, p, cfg["epsilon"], cfg["dt"], cfg["t_max"],
                        int(cfg["seed"]), path_index=int(cfg["path_index"]),
                        record_every=int(cfg["record_every"]))
    rows = zip(path.times.tolist(), path.x.tolist(), path.y.tolist())
    _write_csv(cfg["out"], "sde", cfg, ("t", "x", "y"), rows)
    return 0


def _cmd_hdiff(args):
    cfg = _resolve(args, {"alpha": 1.0, "n_grid": 64, "h_ref": None,
                          "mode": "amplitude", "tol": 1e-10, "workers": None,
                          "out": None})
    if cfg["mode"] not in A_MODES:
        raise ValueError(f"mode must be one of {A_MODES}")
    p = ModelParams(cfg["alpha"])
    table = pss_curve(p, h_grid=default_h_grid(p, int(cfg["n_grid"])),
                      h_ref=cfg["h_ref"], mode=cfg["mode"], tol=cfg["tol"],
                      workers=_workers(cfg))
    cfg["h_ref"] = table.h_ref
    rows = zip(table.h_grid.tolist(), table.b_values.tolist(),
               table.a_values.tolist(), table.pss_values.tolist())
    _write_csv(cfg["out"], "hdiff", cfg, ("h", "b", "a", "pss"), rows)
    return 0


def _cmd_entropy(args):
    cfg = _resolve(args, {"alpha": 1.0, "h": 2.61, "t_max": None,
                          "n_times": 9, "psi": "zlnz", "quad_n": 64,
                          "tol": 1e-10, "out": None})
    p = ModelParams(cfg["alpha"])
    h = float(cfg["h"])
    orbit = orbit_from_energy(h, p, cfg["tol"])
    t_max = cfg["t_max"] if cfg["t_max"] is not None else orbit.period_tau
    cfg["t_max"] = float(t_max)
    field = DensityField(
        w0=lambda x, y: np.exp(-((x - 1.2) ** 2 + (y - 1.0) ** 2) / 0.02),
        rho=lambda H: np.ones_like(H),
        domain=orbit_extents(h, p), quadrature_n=int(cfg["quad_n"]),
        h_level=h)
    rows = []
    for t in np.linspace(0.0, float(t_max), int(cfg["n_times"])):
        s = relative_entropy_at_time(field, p, float(t), cfg["psi"],
                                     tol=cfg["tol"])
        rows.append((float(t), s))
    _write_csv(cfg["out"], "entropy", cfg, ("t", "S"), rows)
    return 0


def _cmd_check(args):
    only = getattr(args, "only", None)
    strict = bool(getattr(args, "strict", False))
    _, code = run_checks(only=only, strict=strict, stream=sys.stdout)
    return code


def _add_common(sp):
    sp.add_argument("--config", help="JSON file with default parameter values")
    sp.add_argument("--out", help="output CSV path (default: stdout)")
    sp.add_argument("--tol", type=float, help="integration tolerance")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lvthermo",
        description="Conservative thermodynamics of the Lotka-Volterra "
                    "system: orbits, state variables, stochastic paths, "
                    "energy diffusion, entropy checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("orbit", help="one closed orbit: trajectory CSV "
                        "plus summary JSON")
    _add_common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--h", type=float)
    sp.add_argument("--n-points", dest="n_points", type=int)
    sp.add_argument("--summary-out", dest="summary_out")
    sp.set_defaults(func=_cmd_orbit)

    sp = sub.add_parser("eos", help="equation-of-state table over "
                        "(alpha, h) grids")
    _add_common(sp)
    sp.add_argument("--alphas", help="comma-separated alpha values")
    sp.add_argument("--offsets", help="comma-separated offsets above h_min")
    sp.add_argument("--n-offsets", dest="n_offsets", type=int)
    sp.add_argument("--workers", type=int)
    sp.set_defaults(func=_cmd_eos)

    sp = sub.add_parser("contours", help="closed level curves of H as "
                        "polylines")
    _add_common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--h-list", dest="h_list",
                    help="comma-separated energy levels")
    sp.add_argument("--n-points", dest="n_points", type=int)
    sp.set_defaults(func=_cmd_contours)

    sp = sub.add_parser("ssa", help="exact jump-process path (t, m, n)")
    _add_common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--omega", type=float)
    sp.add_argument("--m0", type=int)
    sp.add_argument("--n0", type=int)
    sp.add_argument("--t-max", dest="t_max", type=float)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--path-index", dest="path_index", type=int)
    sp.set_defaults(func=_cmd_ssa)

    sp = sub.add_parser("sde", help="diffusion-limit path (t, x, y)")
    _add_common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--epsilon", type=float)
    sp.add_argument("--x0", type=float)
    sp.add_argument("--y0", type=float)
    sp.add_argument("--h", type=float,
                    help="start on the level curve at this energy")
    sp.add_argument("--dt", type=float)
    sp.add_argument("--t-max", dest="t_max", type=float)
    sp.add_argument("--record-every", dest="record_every", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--path-index", dest="path_index", type=int)
    sp.set_defaults(func=_cmd_sde)

    sp = sub.add_parser("hdiff", help="averaged energy-diffusion "
                        "coefficients and stationary density")
    _add_common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--n-grid", dest="n_grid", type=int)
    sp.add_argument("--h-ref", dest="h_ref", type=float)
    sp.add_argument("--mode", choices=A_MODES)
    sp.add_argument("--workers", type=int)
    sp.set_defaults(func=_cmd_hdiff)

    sp = sub.add_parser("entropy", help="relative-entropy time series")
    _add_common(sp)
    sp.add_argument("--alpha", type=float)
    sp.add_argument("--h", type=float)
    sp.add_argument("--t-max", dest="t_max", type=float)
    sp.add_argument("--n-times", dest="n_times", type=int)
    sp.add_argument("--psi", choices=("shannon", "zlnz", "one"))
    sp.add_argument("--quad-n", dest="quad_n", type=int)
    sp.set_defaults(func=_cmd_entropy)

    sp = sub.add_parser("check", help="run the invariant suite, print one "
                        "pass/fail line per criterion")
    sp.add_argument("--only", help="run only checks whose name contains this")
    sp.add_argument("--strict", action="store_true",
                    help="count documented-defect rows in the exit code")
    sp.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except LvError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
