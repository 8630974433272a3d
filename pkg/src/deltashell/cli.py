"""Command-line front end: pole tables, survival series, singularity scans,
and the self-verification suite, as deterministic CSV/JSON files.

Exit codes: 0 success, 2 invalid input, 3 no result (e.g. no axis crossing),
4 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import io as dsio
from .basis import build_basis
from .errors import (CompletenessError, DeltaShellError, NoCrossingError,
                     NoTransitionError, QuadratureError, SolverError,
                     TrajectoryLostError)
from .expansion import build_expansion, lifetime, survival_series
from .model import DeltaShellPotential, SineInitialState, box_state
from .oracle import survival_amplitude_exact
from .poles import find_poles
from .singularity import find_singularity, track_pole
from .verify import run_verification

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NO_RESULT = 3
EXIT_NUMERICAL = 4

DEFAULT_B = 4.5 * math.pi


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _parse_time(spec: str, tau: float) -> float:
    spec = spec.strip().lower()
    if spec.endswith("tau"):
        return float(spec[:-3]) * tau
    return float(spec)


def _potential(args) -> DeltaShellPotential:
    try:
        return DeltaShellPotential(b=args.b, a=args.a)
    except ValueError as exc:
        raise CliError(f"{exc}", EXIT_INVALID)


def _initial_state(args, a: float) -> SineInitialState:
    if args.q is not None and args.kc is not None:
        raise CliError("give either --q or --kc, not both", EXIT_INVALID)
    if args.q is not None:
        if args.q < 1:
            raise CliError("--q must be a positive integer", EXIT_INVALID)
        return box_state(args.q, a)
    if args.kc is not None:
        if args.kc <= 0:
            raise CliError("--kc must be positive", EXIT_INVALID)
        return SineInitialState.from_wavenumber(args.kc, a)
    return box_state(1, a)


def cmd_poles(args) -> int:
    pot = _potential(args)
    if args.n < 1:
        raise CliError("--n must be >= 1", EXIT_INVALID)
    ps = find_poles(pot, args.n, args.n)
    basis = build_basis(ps) if args.states else None
    if args.format == "json":
        text = dsio.pole_set_to_json(ps, basis)
    else:
        text = dsio.pole_set_to_csv(ps, basis)
    _write(args.out, text)
    return EXIT_OK


def cmd_survival(args) -> int:
    pot = _potential(args)
    init = _initial_state(args, pot.a)
    if args.samples < 2:
        raise CliError("--samples must be >= 2", EXIT_INVALID)
    if args.n < 1:
        raise CliError("--n must be >= 1", EXIT_INVALID)
    ctx = build_expansion(pot, init, args.n)
    tau = lifetime(ctx.pole_set)
    try:
        t_max = _parse_time(args.tmax, tau)
        t_min = _parse_time(args.tmin, tau) if args.tmin else t_max / args.samples
    except ValueError:
        raise CliError(f"cannot parse time specification {args.tmax!r}", EXIT_INVALID)
    if not (t_max > t_min > 0):
        raise CliError("need tmax > tmin > 0", EXIT_INVALID)
    if args.spacing == "log":
        grid = np.geomspace(t_min, t_max, args.samples)
    else:
        grid = np.linspace(t_min, t_max, args.samples)
    series = survival_series(pot, init, grid, args.n, context=ctx)
    oracle_S = None
    if args.oracle:
        oracle_S = [abs(survival_amplitude_exact(pot, init, float(t), args.n)) ** 2
                    for t in grid]
    config = {"b": pot.b, "a": pot.a, "k_c": init.k_c, "N_c": init.N_c,
              "n_pole_pairs": args.n, "samples": args.samples,
              "spacing": args.spacing, "t_min": float(grid[0]),
              "t_max": float(grid[-1]), "lifetime": tau, "seed": args.seed,
              "source": series.source}
    if args.format == "json":
        text = dsio.survival_to_json(series, config, oracle_S)
    else:
        text = dsio.survival_to_csv(series, config, oracle_S)
    _write(args.out, text)
    return EXIT_OK


def cmd_scan(args) -> int:
    if args.a <= 0:
        raise CliError("shell radius must be positive", EXIT_INVALID)
    try:
        lo_s, _, hi_s = args.b_range.partition(":")
        b_lo, b_hi = float(lo_s), float(hi_s)
    except ValueError:
        raise CliError(f"cannot parse --b-range {args.b_range!r}; expected lo:hi",
                       EXIT_INVALID)
    if not (b_hi > b_lo > 0):
        raise CliError(f"need 0 < lo < hi in --b-range, got {args.b_range!r}",
                       EXIT_INVALID)
    if args.family == 0:
        raise CliError("--family must be a nonzero signed index", EXIT_INVALID)
    if args.trajectory_out:
        pot0 = DeltaShellPotential(b=b_lo, a=args.a)
        n_req = max(abs(args.family) + 1, 2)
        pole0 = find_poles(pot0, n_req, n_req).by_index(args.family)
        traj = track_pole(pot0, pole0, b_lo, b_hi, args.steps)
        _write(args.trajectory_out, dsio.trajectory_to_csv(traj))
    b_star, k_star = find_singularity(args.a, args.family, b_lo, b_hi, steps=args.steps)
    pot_star = DeltaShellPotential(b=b_star, a=args.a)
    from .oracle import jost_function
    from .poles import pole_equation_residual
    residuals = {
        "pole_equation": abs(pole_equation_residual(complex(k_star), pot_star)),
        "jost": abs(jost_function(complex(k_star), pot_star)),
        "im_k": 0.0,
    }
    _write(args.out, dsio.singularity_report_json(args.family, args.a, b_star,
                                                  k_star, residuals))
    return EXIT_OK


def cmd_verify(args) -> int:
    pot = _potential(args)
    init = _initial_state(args, pot.a)
    if args.n < 2:
        raise CliError("--n must be >= 2", EXIT_INVALID)
    results = run_verification(pot, init, args.n)
    doc = {"schema_version": dsio.SCHEMA_VERSION,
           "config": {"b": pot.b, "a": pot.a, "k_c": init.k_c, "n": args.n},
           "checks": [r.as_dict() for r in results],
           "summary": {
               "pass": sum(r.status == "pass" for r in results),
               "fail": sum(r.status == "fail" for r in results),
               "inconclusive": sum(r.status == "inconclusive" for r in results),
           }}
    _write(args.out, json.dumps(doc, indent=2) + "\n")
    for r in results:
        if r.status == "inconclusive":
            print(f"warning: {r.name} inconclusive: {r.note}", file=sys.stderr)
    if any(r.status == "fail" for r in results):
        failed = [r.name for r in results if r.status == "fail"]
        print(f"error: checks failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltashell",
        description="Decay dynamics of the purely absorptive delta-shell potential")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--b", type=float, default=DEFAULT_B,
                       help="shell intensity (default 9*pi/2)")
        p.add_argument("--a", type=float, default=1.0, help="shell radius")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--seed", type=int, default=0,
                       help="reserved; every computation here is deterministic")

    p = sub.add_parser("poles", help="solve and tabulate the pole families")
    add_common(p)
    p.add_argument("--n", type=int, default=10, help="poles per family")
    p.add_argument("--states", action="store_true",
                   help="append normalization amplitudes of the resonant states")
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("survival", help="survival probability series")
    add_common(p)
    p.add_argument("--q", type=int, default=None, help="box-mode initial state")
    p.add_argument("--kc", type=float, default=None, help="sine-state wavenumber")
    p.add_argument("--tmax", default="5tau",
                   help="grid end; plain number or multiple of the lifetime like '40tau'")
    p.add_argument("--tmin", default=None, help="grid start (default tmax/samples)")
    p.add_argument("--samples", type=int, default=2000)
    p.add_argument("--spacing", choices=("linear", "log"), default="linear")
    p.add_argument("--n", type=int, default=40, help="pole pairs in the expansion")
    p.add_argument("--oracle", action="store_true",
                   help="append the exact contour-quadrature survival column")
    p.set_defaults(func=cmd_survival)

    p = sub.add_parser("scan", help="track a pole family in b and locate the axis crossing")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--family", type=int, required=True, help="signed pole index")
    p.add_argument("--b-range", required=True, help="intensity bracket lo:hi")
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--out", default=None)
    p.add_argument("--trajectory-out", default=None,
                   help="also write the tracked trajectory CSV here")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the structural-identity suite")
    add_common(p)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--kc", type=float, default=None)
    p.add_argument("--n", type=int, default=40)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NoCrossingError, NoTransitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_RESULT
    except (SolverError, CompletenessError, QuadratureError, TrajectoryLostError,
            DeltaShellError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
