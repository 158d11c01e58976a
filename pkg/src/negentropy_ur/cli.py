"""Command-line front end.

    negentropy-ur report --family fock --n 1 --json
    negentropy-ur sweep --family cat --param 0:5:51 --theta 0 --out cat.csv
    negentropy-ur random --count 2000 --seed 42 --dim 11 --out random.csv
    negentropy-ur verify

Exit codes: 0 success, 1 regression failure (``verify``), 2 argument or I/O
error, 3 quadrature convergence error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import shlex
import sys
from dataclasses import asdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConvergenceError, CurveConstructionError, DomainError
from .explorer import (SWEEP_PARAMETER, cat_reference_curve, family_sweep,
                       scatter)
from .measures import uncertainty_report
from .quadrature import IntegrationConfig
from .states import Family, construct_state

EXIT_OK, EXIT_REGRESSION, EXIT_USAGE, EXIT_CONVERGENCE = 0, 1, 2, 3

SWEEP_COLUMNS = ("param", "sigma_x", "sigma_p", "h_x", "h_p", "j_x", "j_p",
                 "n_total", "b_bound", "eur_residual", "purity", "b_corrected",
                 "error_est")
SCATTER_COLUMNS = ("index", "seed", "coeff_digest", "b_bound", "n_total", "ratio",
                   "above_cat_reference", "error_est", "status")
CURVE_COLUMNS = ("alpha", "b_bound", "n_total")

FAMILY_ALIASES = {
    "fock": Family.FOCK,
    "laplace": Family.LAPLACE,
    "photon_added_coherent": Family.PHOTON_ADDED_COHERENT,
    "pac": Family.PHOTON_ADDED_COHERENT,
    "photon_added_squeezed": Family.PHOTON_ADDED_SQUEEZED,
    "pas": Family.PHOTON_ADDED_SQUEEZED,
    "cat": Family.CAT,
    "photon_added_thermal": Family.PHOTON_ADDED_THERMAL,
    "pat": Family.PHOTON_ADDED_THERMAL,
    "fock_superposition": Family.FOCK_SUPERPOSITION,
    "superposition": Family.FOCK_SUPERPOSITION,
}


_FLAGS = {"n": "--n", "lam": "--lambda", "alpha": "--alpha", "xi": "--xi",
          "theta": "--theta", "n_bar": "--nbar", "coefficients": "--coeffs"}


class UsageError(Exception):
    pass


def fmt(value):
    """Fixed CSV formatting: 12 significant digits, empty for missing."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return format(float(value), ".12g")


def _rounded(value):
    return float(fmt(value))


def parse_grid(spec):
    """``start:stop:count`` (inclusive, linear) or ``log:start:stop:count``."""
    text = spec.strip()
    log = text.startswith("log:")
    if log:
        text = text[4:]
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"malformed grid spec {spec!r}; expected [log:]start:stop:count") from None
    if count < 1 or (count == 1 and start != stop):
        raise UsageError(f"grid {spec!r} needs count >= 2 (or start == stop)")
    if log:
        if start <= 0 or stop <= 0:
            raise UsageError(f"log grid {spec!r} needs positive endpoints")
        return list(np.geomspace(start, stop, count))
    return list(np.linspace(start, stop, count))


def parse_coefficients(text):
    try:
        return [complex(part.strip().replace(" ", "")) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"malformed coefficient list {text!r}") from None


def _config(args):
    try:
        return IntegrationConfig(base_nodes=args.base_nodes,
                                 range_multiplier=args.range_multiplier,
                                 doubling_tolerance=args.doubling_tolerance,
                                 max_doublings=args.max_doublings)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _family(name):
    try:
        return FAMILY_ALIASES[name.lower()]
    except KeyError:
        raise UsageError(f"unknown family {name!r}; choose from "
                         f"{', '.join(sorted(FAMILY_ALIASES))}") from None


def _state_params(family, args):
    wanted = {
        Family.FOCK: {"n": args.n},
        Family.LAPLACE: {"lam": args.lam},
        Family.PHOTON_ADDED_COHERENT: {"alpha": args.alpha},
        Family.PHOTON_ADDED_SQUEEZED: {"xi": args.xi},
        Family.CAT: {"alpha": args.alpha, "theta": args.theta},
        Family.PHOTON_ADDED_THERMAL: {"n_bar": args.nbar},
        Family.FOCK_SUPERPOSITION: {"coefficients": args.coeffs},
    }[family]
    missing = [k for k, v in wanted.items() if v is None]
    if missing:
        raise UsageError(f"{family} needs {_FLAGS[missing[0]]}")
    if family is Family.FOCK_SUPERPOSITION:
        wanted["coefficients"] = parse_coefficients(args.coeffs)
    return wanted


def _open_for_write(path):
    try:
        path = Path(path)
        return path.open("w", encoding="utf-8", newline="\n")
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def write_csv(path, columns, rows):
    buf = io.StringIO(newline="")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(fmt(row.get(c)) for c in columns) + "\n")
    with _open_for_write(path) as fh:
        fh.write(buf.getvalue())


def sweep_record(param, report):
    """One CSV record; derived columns are computed from the rounded values
    so that re-deriving them from the file reproduces them exactly."""
    row = {"param": param}
    if report is None:
        return row
    row.update({k: v for k, v in asdict(report).items()
                if k in SWEEP_COLUMNS})
    row["eur_residual"] = _rounded(report.b_bound) - _rounded(report.n_total)
    row["error_est"] = report.entropy_error_estimate
    return row


def scatter_record(row):
    rec = {"index": row.index, "seed": row.seed, "coeff_digest": row.digest,
           "above_cat_reference": row.above_cat_reference,
           "error_est": row.entropy_error_estimate,
           "status": "ok" if not row.failed else "failed: " + row.error.replace(",", ";")}
    if not row.failed:
        rec["b_bound"] = row.b_bound
        rec["n_total"] = row.n_total
        if row.ratio is not None:
            rec["ratio"] = _rounded(row.n_total) / _rounded(row.b_bound)
    return rec


def write_manifest(csv_path, argv, config, seed=None):
    lines = {
        "command": shlex.join(["negentropy-ur", *argv]),
        "base_nodes": config.base_nodes,
        "range_multiplier": config.range_multiplier,
        "doubling_tolerance": config.doubling_tolerance,
        "max_doublings": config.max_doublings,
        "master_seed": "" if seed is None else seed,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    with _open_for_write(str(csv_path) + ".manifest") as fh:
        for key, value in lines.items():
            fh.write(f"{key}={value}\n")


def write_plotscript(csv_path, title, x, series, xlabel, ylabel, extra=()):
    """A gnuplot script; ``series`` is a list of ``(column, label, style)``
    drawn from the CSV, ``extra`` holds ``(path, x, column, label, style)``
    for curves from other files."""
    csv_path = Path(csv_path)
    clauses = [(csv_path.name, x, *item) for item in series]
    clauses += [(os.path.relpath(path, csv_path.parent), *rest) for path, *rest in extra]
    plots = ", \\\n     ".join(
        f'"{name}" using "{xc}":"{col}" with {style} title "{label}"'
        for name, xc, col, label, style in clauses)
    text = (f"# columns of {csv_path.name} mapped to the figure axes\n"
            "set datafile separator ','\n"
            "set key autotitle columnhead\n"
            f'set title "{title}"\n'
            f'set xlabel "{xlabel}"\n'
            f'set ylabel "{ylabel}"\n'
            f"plot {plots}\n")
    with _open_for_write(csv_path.with_suffix(csv_path.suffix + ".gp")) as fh:
        fh.write(text)


# -- subcommands ---------------------------------------------------------------

def cmd_report(args, argv):
    family = _family(args.family)
    state = construct_state(family, **_state_params(family, args))
    report = uncertainty_report(state, _config(args))
    if args.csv:
        buf = io.StringIO()
        buf.write(",".join(SWEEP_COLUMNS) + "\n")
        rec = sweep_record(None, report)
        buf.write(",".join(fmt(rec.get(c)) for c in SWEEP_COLUMNS) + "\n")
        sys.stdout.write(buf.getvalue())
    elif args.json:
        print(json.dumps({"state": state.label(), **report.as_dict()}, indent=2))
    else:
        print(state.label())
        for key, value in report.as_dict().items():
            print(f"  {key:24s} {fmt(value)}")
    return EXIT_OK


def cmd_sweep(args, argv):
    family = _family(args.family)
    if family not in SWEEP_PARAMETER:
        raise UsageError(f"{family} cannot be swept")
    grid = parse_grid(args.param)
    fixed = {"theta": args.theta} if family is Family.CAT else {}
    config = _config(args)
    handle = _open_for_write(args.out)
    handle.close()
    rows = family_sweep(family, grid, config, **fixed)
    failures = [r for r in rows if r.report is None]
    for r in failures:
        print(f"warning: {family} at {r.param:g}: {r.error}", file=sys.stderr)
    write_csv(args.out, SWEEP_COLUMNS, [sweep_record(r.param, r.report) for r in rows])
    write_manifest(args.out, argv, config)
    if args.plotscript:
        series = [("n_total", "N", "lines"), ("b_bound", "B", "linespoints dt 2")]
        if family is Family.PHOTON_ADDED_THERMAL:
            series.append(("b_corrected", "B + ln(mu)", "points"))
        write_plotscript(args.out, f"{family}", "param", series,
                         SWEEP_PARAMETER[family], "nats")
    return EXIT_CONVERGENCE if failures else EXIT_OK


def cmd_random(args, argv):
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    if not 0 <= args.seed < 2 ** 64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    config = _config(args)
    _open_for_write(args.out).close()
    curve = cat_reference_curve(config=config)
    rows = scatter(args.seed, args.count, args.dim, config, cat_curve=curve)
    write_csv(args.out, SCATTER_COLUMNS, [scatter_record(r) for r in rows])
    write_manifest(args.out, argv, config, seed=args.seed)
    extra = []
    if args.cat_curve:
        write_csv(args.cat_curve, CURVE_COLUMNS,
                  [dict(zip(CURVE_COLUMNS, r)) for r in curve.rows()])
        extra.append((args.cat_curve, "b_bound", "n_total", "even cat", "lines"))
    if args.plotscript:
        write_plotscript(args.out, f"random states (dim {args.dim})", "b_bound",
                         [("n_total", "N", "points"), ("b_bound", "N = B", "lines")],
                         "B", "N", extra)
    failed = sum(r.failed for r in rows)
    if failed:
        print(f"warning: {failed} of {len(rows)} rows failed to converge", file=sys.stderr)
        return EXIT_CONVERGENCE
    return EXIT_OK


def cmd_verify(args, argv):
    from .regression import run_regression

    results = run_regression(_config(args))
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:{width}s}  {r.detail}")
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_REGRESSION if failed else EXIT_OK


# -- parser ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    defaults = IntegrationConfig()
    common = _Parser(add_help=False)
    q = common.add_argument_group("quadrature")
    q.add_argument("--base-nodes", type=int, default=defaults.base_nodes)
    q.add_argument("--range-multiplier", type=float, default=defaults.range_multiplier)
    q.add_argument("--doubling-tolerance", type=float, default=defaults.doubling_tolerance)
    q.add_argument("--max-doublings", type=int, default=defaults.max_doublings)

    state = _Parser(add_help=False)
    s = state.add_argument_group("state parameters")
    s.add_argument("--n", type=int)
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--xi", type=float)
    s.add_argument("--theta", type=float, default=0.0)
    s.add_argument("--nbar", type=float)
    s.add_argument("--coeffs", help="comma-separated complex numbers, e.g. 1,0.5j,1-1j")

    parser = _Parser(prog="negentropy-ur", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("report", parents=[common, state], help="one uncertainty report")
    p.add_argument("--family", required=True)
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", action="store_true")
    out.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("sweep", parents=[common, state], help="reports over a parameter grid")
    p.add_argument("--family", required=True)
    p.add_argument("--param", required=True, help="grid, start:stop:count or log:start:stop:count")
    p.add_argument("--out", required=True)
    p.add_argument("--plotscript", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("random", parents=[common], help="random Fock superpositions")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dim", type=int, default=11)
    p.add_argument("--out", required=True)
    p.add_argument("--cat-curve", help="also write the even-cat reference curve here")
    p.add_argument("--plotscript", action="store_true")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("verify", parents=[common], help="closed-form regression checks")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, argv)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, CurveConstructionError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


def main():
    sys.exit(run())
