"""Command-line front end: ``chargedpoly <command> [flags]``.

Every inverse temperature passed on the command line is in the bar
convention; commands that work with the original measure (``bonds``,
``cdf``) use ``2 * beta`` internally and report both values in the CSV
comment header.  Exit codes: 0 ok, 1 usage error, 2 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from math import isfinite
from pathlib import Path

import numpy as np

from . import __version__, charges, diblock, observables, output, selftest, undirected
from . import freeenergy as fe


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def parse_grid(text: str) -> np.ndarray:
    """``a:b:k`` -> ``k`` evenly spaced points from ``a`` to ``b`` inclusive."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected a:b:k, got {text!r}")
    try:
        a, b, k = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if k < 1 or not (isfinite(a) and isfinite(b)):
        raise argparse.ArgumentTypeError("need finite endpoints and k >= 1")
    if k == 1:
        return np.array([a])
    return np.linspace(a, b, k)


def _betas(args) -> np.ndarray:
    if args.beta_grid is not None:
        grid = args.beta_grid
    elif args.beta is not None:
        grid = np.array([args.beta])
    else:
        raise UsageError("one of --beta or --beta-grid is required")
    if np.any(grid < 0):
        raise UsageError("inverse temperatures must be >= 0")
    return grid


def _need_n(args, minimum: int = 1) -> int:
    if args.n is None or args.n < minimum:
        raise UsageError(f"--n >= {minimum} is required")
    return args.n


def _charges(args) -> charges.ChargeSequence:
    n = _need_n(args, 2)
    if args.dist == "diblock" and n % 2:
        raise UsageError("--dist diblock needs an even --n")
    return charges.make_charges(args.dist, n, args.seed)


def _header(args, extra=()) -> list[str]:
    keys = ("dist", "n", "beta", "samples", "seed", "d", "delta")
    params = " ".join(f"{k}={getattr(args, k)}" for k in keys if getattr(args, k, None) is not None)
    lines = [f"chargedpoly {__version__} {args.command}", params] if params else [f"chargedpoly {__version__} {args.command}"]
    return lines + list(extra)


# ---------------------------------------------------------------- commands

def cmd_fe_sweep(args):
    n = _need_n(args)
    if args.samples is None or args.samples < 2:
        raise UsageError("--samples >= 2 is required")
    cols = ["beta", "n", "samples", "fe_mean", "fe_stderr", "lb_elementary", "lb_variational", "ub_annealed"]
    rows = []
    for b in _betas(args):
        pt = fe.free_energy_point(n, float(b), args.samples, args.seed, args.dist, args.threads)
        rows.append([pt.beta_bar, pt.n, pt.samples, pt.fe_mean, pt.fe_stderr,
                     pt.lb_elementary, pt.lb_variational, pt.ub_annealed])
    return cols, rows, _header(args, ["beta is the bar-convention inverse temperature"])


def _profile(args):
    w = _charges(args)
    if args.beta is None:
        raise UsageError("--beta is required")
    if args.beta < 0:
        raise UsageError("inverse temperatures must be >= 0")
    beta_orig = 2.0 * args.beta
    prof = observables.bond_profile(w, beta_orig)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", observables.BoundPoleWarning)
        bound = observables.dgh2_bound(beta_orig)
    extra = [f"beta_bar={output.fmt(float(args.beta))} beta_original={output.fmt(beta_orig)}",
             f"dgh2_bound={output.fmt(bound)} min_p={output.fmt(float(prof.p.min()))}"]
    return prof, extra


def cmd_bonds(args):
    prof, extra = _profile(args)
    rows = [[i, p] for i, p in enumerate(prof.p, start=1)]
    return ["i", "p_i"], rows, _header(args, extra)


def cmd_cdf(args):
    prof, extra = _profile(args)
    ps = np.linspace(0.0, 1.0, 101)
    rows = [[float(p), observables.empirical_cdf(prof, float(p))] for p in ps]
    return ["p", "F_n(p)"], rows, _header(args, extra)


def cmd_annealed(args):
    dist = args.dist if args.dist in ("binary", "gaussian") else None
    if dist is None:
        raise UsageError("annealed needs --dist binary or gaussian")
    rows = [[float(b), fe.annealed_fe(float(b), dist)] for b in _betas(args)]
    return ["beta", "F_ann"], rows, _header(args)


def cmd_wsaw(args):
    b0 = fe.beta0()
    rows = []
    for b in _betas(args):
        b = float(b)
        if b <= 0:
            raise UsageError("wsaw needs beta > 0")
        rows.append([b, fe.s_of_beta(b), fe.wsaw_fe(b), fe.collapse_rate(b)])
    return ["beta", "S", "F_plus", "C"], rows, _header(args, [f"beta0={output.fmt(b0)}"])


def cmd_diblock(args):
    n = _need_n(args, 2)
    if n % 2:
        raise UsageError("diblock needs an even --n (total length)")
    if args.beta is None or not args.beta > 0:
        raise UsageError("diblock needs --beta > 0")
    joint = diblock.diblock_joint(n // 2, args.beta)
    prob = joint.prob
    rows = [[i, j, float(prob[i, j])] for i in range(prob.shape[0]) for j in range(prob.shape[1])]
    extra = [f"normalization_gap={output.fmt(diblock.normalization_gap(joint))}"]
    return ["i", "j", "prob"], rows, _header(args, extra)


def cmd_undirected(args):
    n = _need_n(args)
    if args.beta is None or args.beta < 0:
        raise UsageError("undirected needs --beta >= 0")
    dist = args.dist if args.dist in ("binary", "gaussian") else None
    if dist is None:
        raise UsageError("undirected needs --dist binary or gaussian")
    w = charges.make_tilted(n, args.delta, args.seed, dist)
    rows = []
    if (2 * args.d) ** n <= undirected.MAX_PATHS:
        s = undirected.enumerate_undirected(w, args.beta, args.d, threads=args.threads)
        rows += [[n, "log_z", s.log_z, 0.0], [n, "p_range_small", s.p_range_small, 0.0],
                 [n, "log_p_range_small", s.log_p_range_small, 0.0],
                 [n, "mean_speed_right", s.mean_speed_right, 0.0],
                 [n, "range_ineq_violations", s.range_ineq_violations, 0.0], [n, "straight_path_lower", s.straight_path_lower, 0.0]]
    else:
        if args.samples is None or args.samples < 100:
            raise UsageError("n too large to enumerate; pass --samples >= 100")
        est = undirected.mc_undirected(n, args.beta, w, args.d, args.samples, args.seed)
        rows += [[n, "p_range_small", est.p_range_small, est.p_range_small_se],
                 [n, "once_fraction", est.once_fraction, est.once_fraction_se],
                 [n, "ess", est.ess, 0.0], [n, "reliable", est.reliable, 0.0],
                 [n, "range_ineq_fraction", est.range_ineq_fraction, 0.0],
                 [n, "once_bound_fraction", est.once_bound_fraction, 0.0]]
    if args.beta > 0 and args.delta > 0:
        ok, margin = undirected.ballistic_condition(args.delta, args.beta, dist)
        rows += [[n, "ballistic_condition", ok, 0.0], [n, "ballistic_margin", margin, 0.0]]
    return ["n", "stat", "value", "stderr"], rows, _header(args)


def cmd_selftest(args):
    results = selftest.run_all()
    rows = [[r.name, r.value, r.threshold, r.passed] for r in results]
    width = max(len(r.name) for r in results)
    for r in results:
        sys.stderr.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  "
                         f"value={output.fmt(r.value)}  threshold={output.fmt(r.threshold)}\n")
    failed = sum(not r.passed for r in results)
    sys.stderr.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return ["check", "value", "threshold", "passed"], rows, [f"chargedpoly {__version__} selftest"]


COMMANDS = {
    "fe-sweep": cmd_fe_sweep,
    "bonds": cmd_bonds,
    "cdf": cmd_cdf,
    "annealed": cmd_annealed,
    "wsaw": cmd_wsaw,
    "diblock": cmd_diblock,
    "undirected": cmd_undirected,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="chargedpoly", description="Charged polymer free energies and observables.")
    parser.add_argument("--version", action="version", version=f"chargedpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--dist", choices=("binary", "gaussian", "diblock"), default="binary")
        p.add_argument("--n", type=int)
        p.add_argument("--beta", type=float)
        p.add_argument("--beta-grid", type=parse_grid, metavar="a:b:k")
        p.add_argument("--samples", type=int)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", metavar="PATH")
        p.add_argument("--svg", action="store_true", help="also render a line plot next to --out")
        if name == "undirected":
            p.add_argument("--d", type=int, default=1, choices=(1, 2, 3))
            p.add_argument("--delta", type=float, default=0.0, help="charge tilt")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be >= 1")
    if args.svg and args.out is None:
        parser.error("--svg needs --out")
    try:
        cols, rows, comments = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ArithmeticError, FloatingPointError, ValueError) as exc:
        sys.stderr.write(f"chargedpoly: numerical failure: {exc}\n")
        return 2
    params = {k: v for k, v in vars(args).items() if k not in ("command", "out", "svg")}
    params = {k: (v.tolist() if isinstance(v, np.ndarray) else v) for k, v in params.items()}
    manifest = output.RunManifest(command=args.command, params=params, seed=args.seed)
    path = output.emit(output.render_csv(cols, rows, comments), args.out, manifest)
    if args.svg and path is not None:
        output.render_svg(Path(path))
    if args.command == "selftest" and not all(r[3] for r in rows):
        return 2
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
