"""Command-line front end: benchmark runs, CSV/plot output, verification.

Exit codes: 0 success, 1 usage error, 2 solver failure.  Every flag has a
config-file equivalent (flat key=value lines, keys named like the long flags
without the leading dashes); explicit command-line flags override the file.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .cases import CASE_NAMES, build_case
from .coefficients import check_bounds, check_tvd, diffusion_D
from .driver import BoundaryCondition, Grid1D, run
from .euler import field_to_primitives
from .schemes import KINDS, LXF, ROE, ROELXF, ROESTAR, SchemeSpec, courant_coefficients


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    """Resolved parameters of one benchmark run."""

    case: str
    scheme: str
    courant: float
    ncells: int
    t_end: float
    beta: float | None
    delta: float
    seed: int
    out: str
    diagnostics: bool
    emit_plot: bool


_RUN_KEYS = {
    "case": str, "scheme": str, "courant": float, "cells": int, "t-end": float,
    "beta": float, "beta-per-dx": float, "delta": float, "seed": int,
    "out": str, "diagnostics": bool, "emit-plot": bool,
}


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def load_config_file(path: str) -> dict:
    """Flat key=value config; '#' starts a comment."""
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for lineno, raw in enumerate(handle, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key=value, got {raw!r}")
                key, _, text = line.partition("=")
                key = key.strip()
                if key not in _RUN_KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
                caster = _RUN_KEYS[key]
                values[key] = _parse_bool(text) if caster is bool else caster(text.strip())
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    return values


def make_parser() -> _Parser:
    parser = _Parser(prog="ltsfv",
                     description="Large-time-step TVD finite-volume solver")
    sub = parser.add_subparsers(dest="command", required=True)

    runp = sub.add_parser("run", help="run a benchmark case")
    runp.add_argument("--config", help="flat key=value config file")
    runp.add_argument("--case", choices=CASE_NAMES)
    runp.add_argument("--scheme", choices=KINDS)
    runp.add_argument("--courant", type=float, help="target Courant number")
    runp.add_argument("--cells", type=int, help="number of grid cells")
    runp.add_argument("--t-end", type=float, help="final time")
    runp.add_argument("--beta", type=float, help="RoeLxF blending weight in [0,1]")
    runp.add_argument("--beta-per-dx", type=float,
                      help="grid-adapted blending: beta = value * dx")
    runp.add_argument("--delta", type=float, help="Harten fix width in (0,1)")
    runp.add_argument("--seed", type=int, help="seed for randomized stepping")
    runp.add_argument("--out", help="output directory (default: current)")
    runp.add_argument("--diagnostics", action="store_const", const=True,
                      help="also write diagnostics.csv")
    runp.add_argument("--emit-plot", action="store_const", const=True,
                      help="also write a gnuplot script plot.gp")

    verp = sub.add_parser("verify", help="sweep-check TVD, envelope and diffusion "
                                         "properties of a scheme")
    verp.add_argument("--scheme", choices=[k for k in KINDS if k != "godunov"],
                      required=True)
    verp.add_argument("--k", type=int, default=3, help="stencil half-width")
    verp.add_argument("--beta", type=float, default=0.2)
    verp.add_argument("--delta", type=float, default=0.5)
    verp.add_argument("--cmin", type=float, help="sweep start (default -k)")
    verp.add_argument("--cmax", type=float, help="sweep end (default k)")
    verp.add_argument("--samples", type=int, default=241)
    verp.add_argument("--tol", type=float, default=1e-12)
    verp.add_argument("--out", help="also write the JSON report to this file")
    return parser


def _resolve_run_config(args) -> RunConfig:
    values = load_config_file(args.config) if args.config else {}
    cli = {
        "case": args.case, "scheme": args.scheme, "courant": args.courant,
        "cells": args.cells, "t-end": args.t_end, "beta": args.beta,
        "beta-per-dx": args.beta_per_dx, "delta": args.delta, "seed": args.seed,
        "out": args.out, "diagnostics": args.diagnostics, "emit-plot": args.emit_plot,
    }
    for key, value in cli.items():
        if value is not None:
            values[key] = value
    if "case" not in values:
        raise UsageError("a case is required (--case or config file)")
    if "scheme" not in values:
        raise UsageError("a scheme is required (--scheme or config file)")
    case = build_case(values["case"])
    defaults = case.defaults
    ncells = int(values.get("cells", defaults["ncells"]))
    if ncells < 3:
        raise UsageError(f"cells must be at least 3, got {ncells}")
    if "beta" in values and "beta-per-dx" in values:
        raise UsageError("--beta and --beta-per-dx are mutually exclusive")
    if "beta-per-dx" in values:
        dx = (case.domain[1] - case.domain[0]) / ncells
        beta = values["beta-per-dx"] * dx
    else:
        beta = values.get("beta")
    scheme = values["scheme"]
    if scheme == ROELXF and beta is None:
        beta = defaults["beta"]
    return RunConfig(
        case=values["case"], scheme=scheme,
        courant=float(values.get("courant", defaults["courant"])),
        ncells=ncells, t_end=float(values.get("t-end", defaults["t_end"])),
        beta=beta, delta=float(values.get("delta", defaults["delta"])),
        seed=int(values.get("seed", 0)), out=values.get("out", "."),
        diagnostics=bool(values.get("diagnostics", False)),
        emit_plot=bool(values.get("emit-plot", False)),
    )


def _fmt(value) -> str:
    return repr(float(value))


def _write_solution_csv(path, x, state, case, gas=None):
    with open(path, "w", encoding="utf-8") as handle:
        if case.kind == "scalar":
            handle.write("x,u\n")
            for xi, ui in zip(x, state):
                handle.write(f"{_fmt(xi)},{_fmt(ui)}\n")
        else:
            rho, u, p = field_to_primitives(state, case.model)
            handle.write("x,rho,u,p,E\n")
            for xi, ri, ui, pi, ei in zip(x, rho, u, p, state[:, 2]):
                handle.write(f"{_fmt(xi)},{_fmt(ri)},{_fmt(ui)},{_fmt(pi)},{_fmt(ei)}\n")


_PLOT_SCALAR = """\
set datafile separator ','
set key autotitle columnhead
set xlabel 'x'
set ylabel 'u'
plot 'solution.csv' using 1:2 with lines
"""

_PLOT_EULER = """\
set datafile separator ','
set key autotitle columnhead
set xlabel 'x'
set multiplot layout 3,1
plot 'solution.csv' using 1:2 with lines title 'rho'
plot 'solution.csv' using 1:3 with lines title 'u'
plot 'solution.csv' using 1:4 with lines title 'p'
unset multiplot
"""


def run_case(config: RunConfig) -> int:
    """Run one benchmark and write its outputs; returns the exit code."""
    case = build_case(config.case)
    grid = Grid1D(case.domain[0], case.domain[1], config.ncells)
    bc = BoundaryCondition(case.defaults.get("bc", "zero-gradient"))
    spec = SchemeSpec(
        kind=config.scheme,
        beta=config.beta if config.scheme == ROELXF else None,
        delta=config.delta if config.scheme == ROESTAR else None,
        seed=config.seed)
    x = grid.centers()
    state0 = case.initial(x)
    try:
        final, diag = run(state0, spec, case.model, grid, bc,
                          config.courant, config.t_end)
    except (ValueError, RuntimeError) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2
    try:
        os.makedirs(config.out, exist_ok=True)
        solution_path = os.path.join(config.out, "solution.csv")
        _write_solution_csv(solution_path, x, final, case)
        if config.diagnostics:
            diag.to_csv(os.path.join(config.out, "diagnostics.csv"))
        if config.emit_plot:
            script = _PLOT_SCALAR if case.kind == "scalar" else _PLOT_EULER
            with open(os.path.join(config.out, "plot.gp"), "w", encoding="utf-8") as fh:
                fh.write(script)
    except OSError as exc:
        print(f"I/O failure writing {config.out}: {exc}", file=sys.stderr)
        return 2
    print(f"case={config.case} scheme={config.scheme} courant={config.courant} "
          f"cells={config.ncells} t_end={config.t_end} steps={diag.nsteps}")
    if case.reference is not None:
        ref = case.reference(x, config.t_end)
        if case.kind == "scalar":
            err = final - ref
        else:
            err = final[:, 0] - ref[:, 0]  # density error
        l1 = float(np.sum(np.abs(err)) * grid.dx)
        linf = float(np.max(np.abs(err)))
        label = "u" if case.kind == "scalar" else "rho"
        print(f"L1 error ({label}) vs exact: {l1:.6e}")
        print(f"Linf error ({label}) vs exact: {linf:.6e}")
    print(f"min TVD residual over run: {min(diag.tvd_residuals):.6e}")
    print(f"wrote {solution_path}")
    return 0


def _roe_diffusion(c: float) -> float:
    a = abs(c)
    return (math.ceil(a) - a) * (1.0 + a - math.ceil(a))


def verify_command(args) -> int:
    """Sweep-check the configured scheme; emits a machine-readable report."""
    k = args.k
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    spec = SchemeSpec(kind=args.scheme,
                      beta=args.beta if args.scheme == ROELXF else None,
                      delta=args.delta if args.scheme == ROESTAR else None)
    cmin = -float(k) if args.cmin is None else args.cmin
    cmax = float(k) if args.cmax is None else args.cmax
    if not (cmin < cmax and abs(cmin) <= k and abs(cmax) <= k):
        raise UsageError(f"sweep [{cmin}, {cmax}] must be increasing and inside [-k, k]")
    sweep = np.linspace(cmin, cmax, args.samples)
    tol = args.tol

    worst_tvd = math.inf
    worst_tvd_c = None
    worst_lower = math.inf
    worst_upper = math.inf
    diffusion_violation = 0.0
    for c in sweep:
        vset = courant_coefficients(spec, float(c), k)
        report = check_tvd(vset, tol)
        if report.min_residual < worst_tvd:
            worst_tvd = report.min_residual
            worst_tvd_c = float(c)
        bounds = check_bounds(vset, tol)
        worst_lower = min(worst_lower, bounds.worst_lower_margin)
        worst_upper = min(worst_upper, bounds.worst_upper_margin)
        d = diffusion_D(vset, float(c))
        lo = _roe_diffusion(float(c))
        hi = float(k * k - c * c)
        diffusion_violation = max(diffusion_violation, lo - d, d - hi)
        if args.scheme == ROE:
            diffusion_violation = max(diffusion_violation, abs(d - lo))
        elif args.scheme == LXF:
            diffusion_violation = max(diffusion_violation, abs(d - hi))

    properties = {
        "tvd": {"pass": bool(worst_tvd >= -tol), "min_residual": worst_tvd,
                "at_courant": worst_tvd_c},
        "envelope": {"pass": bool(worst_lower >= -tol and worst_upper >= -tol),
                     "worst_lower_margin": worst_lower,
                     "worst_upper_margin": worst_upper},
        "diffusion": {"pass": bool(diffusion_violation <= tol),
                      "max_violation": diffusion_violation},
    }
    if args.scheme == ROELXF:
        c_mid = k - 0.5
        betas = np.linspace(0.0, 1.0, 11)
        values = []
        for b in betas:
            s = SchemeSpec(kind=ROELXF, beta=float(b))
            values.append(diffusion_D(courant_coefficients(s, c_mid, k), c_mid))
        increasing = all(values[i + 1] > values[i] for i in range(len(values) - 1))
        endpoints_ok = (abs(values[0] - _roe_diffusion(c_mid)) <= tol
                        and abs(values[-1] - (k * k - c_mid * c_mid)) <= tol)
        properties["beta_monotonicity"] = {
            "pass": bool(increasing and endpoints_ok),
            "at_courant": c_mid,
            "diffusion_values": values,
        }

    report = {
        "scheme": args.scheme, "k": k,
        "beta": spec.beta, "delta": spec.delta,
        "sweep": {"cmin": cmin, "cmax": cmax, "samples": args.samples, "tol": tol},
        "properties": properties,
        "pass": bool(all(p["pass"] for p in properties.values())),
    }
    text = json.dumps(report, indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    return 0


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "run":
            return run_case(_resolve_run_config(args))
        return verify_command(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


def console_main():
    sys.exit(main())
