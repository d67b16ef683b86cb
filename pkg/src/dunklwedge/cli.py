"""Command-line interface.

Subcommands::

    dunklwedge density   V0 density on a v-grid     (series | integral | bessel | tail | z2z2)
    dunklwedge tail      P(T0 > t) on a t-grid      (series | z2z2 | mc)
    dunklwedge bm-tail   planar-BM exit tail        (bessel | squarewave | mc)
    dunklwedge simulate  Monte Carlo tail estimate  (hitting | winding)
    dunklwedge check     run a verification suite   (see dunklwedge.checks)

Exit codes: 0 success, 1 numeric failure or failed check, 2 bad configuration.
Flags override values read from ``--config``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .errors import ConfigError, DomainError, LiftingError, NonConvergenceError, QuadratureError
from .model import DEFAULT_CONTROL, SeriesControl, StartPoint, WedgeModel, parse_grid, validate_model, validate_start

log = logging.getLogger("dunklwedge")

COLUMNS = ("abscissa", "value", "std_error", "method", "p", "k0", "k1", "rho", "phi", "seed")
METHODS = {
    "density": ("integral", "series", "bessel", "tail", "z2z2"),
    "tail": ("series", "z2z2", "mc"),
    "bm-tail": ("bessel", "squarewave", "mc"),
    "simulate": ("hitting", "winding"),
}
DEFAULTS = {
    "p": 2,
    "k": None,
    "k0": None,
    "k1": None,
    "rho": 1.0,
    "phi": None,
    "phi_frac": None,
    "grid": None,
    "t": None,
    "method": None,
    "seed": None,
    "n_paths": 100_000,
    "dt0": 1e-3,
    "eps_boundary": 1e-8,
    "t_max": None,
    "backend": None,
    "no_bridge": False,
    "raw": False,
    "output": None,
    "format": "csv",
    "rel_tol": DEFAULT_CONTROL.rel_tol,
    "max_terms": DEFAULT_CONTROL.max_terms,
    "quad_nodes": DEFAULT_CONTROL.quad_nodes,
    "consec_small": DEFAULT_CONTROL.consec_small,
    "suite": "all",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _add_common(sp: argparse.ArgumentParser) -> None:
    g = sp.add_argument_group("model")
    g.add_argument("--p", type=int, help="dihedral order (wedge angle pi/(2p))")
    g.add_argument("--k", type=float, help="common multiplicity k0 = k1")
    g.add_argument("--k0", type=float, help="multiplicity of the wall theta = 0")
    g.add_argument("--k1", type=float, help="multiplicity of the wall theta = pi/(2p)")
    g.add_argument("--rho", type=float, help="starting radius (default 1)")
    g.add_argument("--phi", type=float, help="starting angle (default: bisector)")
    g.add_argument("--phi-frac", help="starting angle as a fraction of pi, e.g. 1/8")
    g = sp.add_argument_group("evaluation")
    g.add_argument("--grid", help="start:stop:count")
    g.add_argument("--t", type=float, help="single time point")
    g.add_argument("--method")
    g.add_argument("--raw", action="store_true", default=None, help="unnormalised density")
    g = sp.add_argument_group("series control")
    g.add_argument("--rel-tol", type=float)
    g.add_argument("--max-terms", type=int)
    g.add_argument("--quad-nodes", type=int)
    g.add_argument("--consec-small", type=int)
    g = sp.add_argument_group("monte carlo")
    g.add_argument("--seed", type=int)
    g.add_argument("--n-paths", type=int)
    g.add_argument("--dt0", type=float)
    g.add_argument("--eps-boundary", type=float)
    g.add_argument("--t-max", type=float)
    g.add_argument("--backend", choices=("numba", "numpy"))
    g.add_argument("--no-bridge", action="store_true", default=None, help="grid-only exit detection")
    g = sp.add_argument_group("output")
    g.add_argument("--output", "-o", help="output file (default stdout)")
    g.add_argument("--format", choices=("csv", "json"))
    sp.add_argument("--config", help="JSON file with any of the long options (underscored keys)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dunklwedge", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    for name, help_ in (
        ("density", "density of V0 = rho^2/(2 T0) on a v-grid"),
        ("tail", "P(T0 > t) on a t-grid"),
        ("bm-tail", "planar Brownian exit tail on a t-grid"),
        ("simulate", "Monte Carlo tail estimate with standard errors"),
    ):
        _add_common(sub.add_parser(name, help=help_))
    chk = sub.add_parser("check", help="run a verification suite")
    chk.add_argument("--suite", help="suite name or 'all'")
    chk.add_argument("--seed", type=int)
    chk.add_argument("--n-paths", type=int)
    chk.add_argument("--backend", choices=("numba", "numpy"))
    chk.add_argument("--output", "-o")
    chk.add_argument("--format", choices=("csv", "json"))
    chk.add_argument("--config")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge hard defaults, the JSON file, then explicit flags."""
    cfg = dict(DEFAULTS)
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in DEFAULTS and key != "subcommand":
                raise ConfigError(f"unknown config key {key!r}")
            cfg[key] = value
    # a flag replaces its file-level alternative as well as its own key
    exclusive = {"grid": "t", "t": "grid", "phi": "phi_frac", "phi_frac": "phi"}
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("config", "verbose")}
    for key in flags:
        if key in exclusive and exclusive[key] not in flags:
            cfg[exclusive[key]] = None
    cfg.update(flags)
    return cfg


def _model(cfg) -> WedgeModel:
    k0 = cfg["k0"] if cfg["k0"] is not None else cfg["k"]
    k1 = cfg["k1"] if cfg["k1"] is not None else cfg["k"]
    if k0 is None or k1 is None:
        raise ConfigError("give --k, or both --k0 and --k1")
    model = WedgeModel(int(cfg["p"]), float(k0), float(k1))
    try:
        validate_model(model)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    return model


def _phi(cfg, wedge_angle: float) -> float:
    if cfg["phi"] is not None and cfg["phi_frac"] is not None:
        raise ConfigError("give only one of --phi and --phi-frac")
    if cfg["phi_frac"] is not None:
        try:
            return float(Fraction(str(cfg["phi_frac"]))) * math.pi
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad --phi-frac {cfg['phi_frac']!r}") from exc
    return wedge_angle / 2 if cfg["phi"] is None else float(cfg["phi"])


def _grid(cfg) -> np.ndarray:
    if cfg["grid"] is not None and cfg["t"] is not None:
        raise ConfigError("give only one of --grid and --t")
    if cfg["t"] is not None:
        return np.array([float(cfg["t"])])
    if cfg["grid"] is None:
        raise ConfigError("a --grid start:stop:count (or --t) is required")
    try:
        grid = parse_grid(str(cfg["grid"]))
    except (DomainError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    if np.any(grid <= 0):
        raise ConfigError("grid points must be > 0")
    return grid


def _ctrl(cfg) -> SeriesControl:
    try:
        return SeriesControl(float(cfg["rel_tol"]), int(cfg["max_terms"]), int(cfg["quad_nodes"]), int(cfg["consec_small"]))
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


def _method(cfg, sub: str) -> str:
    method = cfg["method"] or METHODS[sub][0]
    if method not in METHODS[sub]:
        raise ConfigError(f"method {method!r} not valid for {sub}; choose from {METHODS[sub]}")
    return method


def _mc_config(cfg, t_max: float):
    from .mcsim import McConfig

    seed = McConfig.master_seed if cfg["seed"] is None else int(cfg["seed"])
    return McConfig(
        n_paths=int(cfg["n_paths"]),
        dt0=float(cfg["dt0"]),
        eps_boundary=float(cfg["eps_boundary"]),
        t_max=float(cfg["t_max"]) if cfg["t_max"] is not None else t_max,
        master_seed=seed,
    )


def _rows(x, y, se, method, p, k0, k1, rho, phi, seed):
    se = [None] * len(x) if se is None else list(se)
    return [
        dict(abscissa=float(a), value=float(b), std_error=None if s is None else float(s), method=method,
             p=p, k0=k0, k1=k1, rho=rho, phi=phi, seed=seed)
        for a, b, s in zip(x, y, se)
    ]


def cmd_density(cfg) -> list[dict]:
    from .hittime import normalize_density
    from .hittime.normalize import _formula

    model, method, ctrl = _model(cfg), _method(cfg, "density"), _ctrl(cfg)
    phi = _phi(cfg, model.wedge_angle)
    validate_start(model, StartPoint(float(cfg["rho"]), phi))
    v = _grid(cfg)
    f, _ = _formula(method, model, phi, ctrl)
    values = np.atleast_1d(f(v))
    if not cfg["raw"]:
        values = values * normalize_density(method, model, ctrl=ctrl).constant
    return _rows(v, values, None, method, model.p, model.k0, model.k1, float(cfg["rho"]), phi, None)


def cmd_tail(cfg) -> list[dict]:
    from .hittime import tail_hitting_normalized, tail_z2z2

    model, method, ctrl = _model(cfg), _method(cfg, "tail"), _ctrl(cfg)
    rho = float(cfg["rho"])
    start = StartPoint(rho, _phi(cfg, model.wedge_angle))
    validate_start(model, start)
    ts = _grid(cfg)
    seed = se = None
    if method == "series":
        values = tail_hitting_normalized(ts, model, start, ctrl)
    elif method == "z2z2":
        if model.p != 1:
            raise ConfigError("the quadrant closed form needs p = 1")
        values = tail_z2z2(rho * rho / (2 * ts), model.nu0, model.nu1, start.phi)
    else:
        return cmd_simulate(dict(cfg, method="hitting"), label="mc")
    return _rows(ts, np.atleast_1d(values), se, method, model.p, model.k0, model.k1, rho, start.phi, seed)


def cmd_bm_tail(cfg) -> list[dict]:
    from .planarbm import bm_tail_bessel, bm_tail_squarewave

    method, ctrl = _method(cfg, "bm-tail"), _ctrl(cfg)
    p, rho = int(cfg["p"]), float(cfg["rho"])
    if p < 1:
        raise ConfigError("p must be >= 1")
    phi = _phi(cfg, math.pi / (2 * p))
    ts = _grid(cfg)
    if method == "mc":
        return cmd_simulate(dict(cfg, method="winding"), label="mc")
    fn = bm_tail_bessel if method == "bessel" else bm_tail_squarewave
    values = np.atleast_1d(fn(ts, p, rho, phi, ctrl))
    return _rows(ts, values, None, method, p, 1.0, 1.0, rho, phi, None)


def cmd_simulate(cfg, label: str | None = None) -> list[dict]:
    from .mcsim import estimate_tail, simulate_bm_winding, simulate_hitting

    what = cfg["method"] or "hitting"
    if what not in METHODS["simulate"]:
        raise ConfigError(f"simulate method must be one of {METHODS['simulate']}")
    ts = _grid(cfg)
    rho = float(cfg["rho"])
    if what == "hitting":
        model = _model(cfg)
        start = StartPoint(rho, _phi(cfg, model.wedge_angle))
        validate_start(model, start)
        mc = _mc_config(cfg, t_max=float(ts.max()) * 1.01)
        samples = simulate_hitting(model, start, mc, cfg["backend"])
        k0, k1, p = model.k0, model.k1, model.p
    else:
        p = int(cfg["p"])
        start = StartPoint(rho, _phi(cfg, math.pi / (2 * p)))
        mc = _mc_config(cfg, t_max=float(ts.max()))
        samples = simulate_bm_winding(start, float(ts.max()), p, mc, cfg["backend"], bridge=not cfg["no_bridge"])
        k0 = k1 = 1.0
    curve = estimate_tail(samples, ts)
    method = label or f"mc-{what}"
    return _rows(ts, curve.values, curve.std_errors, method, p, k0, k1, rho, start.phi, mc.master_seed)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def write_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in COLUMNS])


def cmd_check(cfg) -> int:
    from .checks import SUITE_NAMES, run_suite

    names = SUITE_NAMES if cfg["suite"] == "all" else (cfg["suite"],)
    unknown = [n for n in names if n not in SUITE_NAMES]
    if unknown:
        raise ConfigError(f"unknown suite {unknown[0]!r}; choose from {SUITE_NAMES} or 'all'")
    rows = []
    for name in names:
        kwargs = {}
        if name == "mc-cross":
            kwargs = {"n_paths": int(cfg["n_paths"]), "seed": cfg["seed"], "backend": cfg["backend"]}
        rows.extend(run_suite(name, **kwargs))
    for r in rows:
        print(r.line())
    n_fail = sum(not r.passed for r in rows)
    print(f"{len(rows) - n_fail}/{len(rows)} checks passed")
    if cfg["output"]:
        with open(cfg["output"], "w") as fh:
            data = [dict(suite=r.suite, name=r.name, value=r.value, tolerance=r.tolerance, passed=r.passed, note=r.note)
                    for r in rows]
            if cfg["format"] == "json":
                json.dump(data, fh, indent=1)
            else:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(("suite", "name", "value", "tolerance", "passed", "note"))
                for d in data:
                    w.writerow([_fmt(d[k]) for k in ("suite", "name", "value", "tolerance", "passed", "note")])
    return 0 if n_fail == 0 else 1


COMMANDS = {"density": cmd_density, "tail": cmd_tail, "bm-tail": cmd_bm_tail, "simulate": cmd_simulate}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
        cfg = resolve_config(args)
        if args.subcommand == "check":
            return cmd_check(cfg)
        rows = COMMANDS[args.subcommand](cfg)
        if cfg["output"]:
            with open(cfg["output"], "w", newline="") as fh:
                write_rows(rows, cfg["format"], fh)
        else:
            buf = io.StringIO()
            write_rows(rows, cfg["format"], buf)
            sys.stdout.write(buf.getvalue())
        return 0
    except (ConfigError, DomainError) as exc:
        print(f"dunklwedge: configuration error: {exc}", file=sys.stderr)
        return 2
    except (NonConvergenceError, QuadratureError, LiftingError, ArithmeticError) as exc:
        print(f"dunklwedge: numeric failure: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
