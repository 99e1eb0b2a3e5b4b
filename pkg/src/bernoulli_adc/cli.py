"""Command line entry point.

Exit codes: 0 success, 1 invalid input (a JSON error object goes to stderr),
2 a checked claim failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import audit, coeffs, diagnostics
from .boxes import AxisBox, box_measure_rational
from .errors import MeasureError
from .io import Table, dumps_json, emit_report, load_spec, spec_json
from .measure import BernoulliMeasure, validate_spec
from .rational import format_fraction, parse_vector
from .regions import Metric

DEFAULT_SEED = 20190101
DEFAULT_GEN_CAP = 12


class ClaimFailed(Exception):
    pass


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    # SUPPRESS keeps a subcommand's copy of a flag from clobbering the value
    # given before the subcommand name.
    g.add_argument("--config", default=argparse.SUPPRESS, help="measure spec JSON")
    g.add_argument("--out", default=argparse.SUPPRESS, help="output file (stdout when omitted)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    g.add_argument("--gen-cap", type=int, default=argparse.SUPPRESS)
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="bernoulli-adc", parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-coeffs", parents=[common], help="emit a spec on the slab-balance solution set")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--t", default=None, help="comma-separated rational parameters")

    p = sub.add_parser("measure", parents=[common], help="exact measure queries")
    msub = p.add_subparsers(dest="action", required=True)
    b = msub.add_parser("box", parents=[common])
    b.add_argument("--box", required=True, help='per-axis "lo,hi" joined by ";"')

    p = sub.add_parser("audit", parents=[common], help="annular decay and doubling audits")
    asub = p.add_subparsers(dest="action", required=True)
    for name in ("adc", "doubling", "contiguity", "counterexample", "blowup"):
        a = asub.add_parser(name, parents=[common])
        a.add_argument("--metric", default="linf", choices=[m.value for m in Metric])
        a.add_argument("--depth", "--n", dest="depth", type=int, default=3)
        a.add_argument("--gen", type=int, default=None)
        a.add_argument("--max-j", type=int, default=6)
        a.add_argument("--method", default="auto", choices=["auto", "exact", "cells"])

    p = sub.add_parser("diag", parents=[common], help="singularity diagnostics")
    dsub = p.add_subparsers(dest="action", required=True)
    for name in ("entropy", "trajectory", "lln"):
        d = dsub.add_parser(name, parents=[common])
        d.add_argument("--law", default="lebesgue", choices=list(diagnostics.LAWS))
        d.add_argument("--samples", type=int, default=1000)
        d.add_argument("--depth", type=int, default=40)
    return parser


def _measure(args) -> BernoulliMeasure:
    if not args.config:
        raise MeasureError("--config is required for this command")
    if not Path(args.config).is_file():
        raise MeasureError(f"config file {args.config} does not exist")
    return validate_spec(load_spec(args.config))


def _write(text: str, out) -> None:
    if out:
        Path(out).write_text(text, newline="")
    else:
        sys.stdout.write(text)


def _parse_box(text: str) -> AxisBox:
    lo, hi = [], []
    for part in text.split(";"):
        a, b = parse_vector(part)
        lo.append(a)
        hi.append(b)
    return AxisBox(tuple(lo), tuple(hi))


def _solve_coeffs(args) -> None:
    param = coeffs.solve_affine(coeffs.build_adc_system(args.dim))
    t = parse_vector(args.t) if args.t else (Fraction(0),) * len(param.basis)
    _write(spec_json(coeffs.sample_coefficients(param, t)), args.out)


def _measure_box(args) -> None:
    m = _measure(args)
    _write(format_fraction(box_measure_rational(m, _parse_box(args.box))) + "\n", args.out)


def _audit(args) -> None:
    m = _measure(args)
    jobs, cap = args.jobs, args.gen_cap
    if args.action == "adc":
        g = args.gen if args.gen is not None else args.depth + 2
        if g > cap:
            raise MeasureError(f"generation {g} exceeds --gen-cap {cap}")
        centers = audit.cube_center_grid(m.dim, args.depth, m.p)
        radii = audit.radius_family(range(args.depth + 1), range(1, args.max_j + 1), m.p)
        scan = audit.adc_scan(m, args.metric, centers, radii, g=g, method=args.method, jobs=jobs)
        _write(emit_report(scan.reports), args.out)
        return

    if args.action == "doubling":
        bound = audit.doubling_constant(m)
        centers = audit.cube_center_grid(m.dim, args.depth, m.p)
        radii = [Fraction(1, 2 * m.p**k) for k in range(1, args.depth + 2)]
        rows = []
        for c, r, ratio in audit.doubling_grid(m, centers, radii):
            rows.append((c, r, ratio, bound, ratio <= bound))
        _write(emit_report(Table(("center", "r", "ratio", "bound", "pass"), tuple(rows))), args.out)
        if not all(row[-1] for row in rows):
            raise ClaimFailed("a doubling ratio exceeds 2^N a_min^(-N-3)")
        return

    if args.action == "contiguity":
        rows = []
        for n in range(1, args.depth + 1):
            low = audit.contiguous_pair_audit(m, n)
            rows.append((n, low, m.a_min, low >= m.a_min))
        _write(emit_report(Table(("n", "min_ratio", "a_min", "pass"), tuple(rows))), args.out)
        if not all(row[-1] for row in rows):
            raise ClaimFailed("adjacent-cube ratio below a_min")
        return

    if args.action == "counterexample":
        eps = audit.epsilon_of(m)
        rows = []
        for n in range(1, args.depth + 1):
            value = audit.chain_measure(m, n)
            target = audit.chain_target(eps, n)
            rows.append((n, value, target, value == target))
        _write(emit_report(Table(("n", "chain_measure", "expected", "pass"), tuple(rows))), args.out)
        if not all(row[-1] for row in rows):
            raise ClaimFailed("chain mass differs from (1/3 + 3 eps)^n")
        return

    if args.action == "blowup":
        eps = audit.epsilon_of(m)
        method = "exact" if args.method == "auto" else args.method
        reports = audit.d1_blowup_series(m, args.depth, g=args.gen, method=method)
        _write(emit_report(reports), args.out)
        quotients = audit.growth_quotients(reports)[2:]
        threshold = (1 + 9 * eps) * Fraction(9, 10)
        if eps > 0 and any(q is None or q < threshold for q in quotients):
            raise ClaimFailed("l1 annulus ratios do not grow at rate (1 + 9 eps)")
        return
    raise MeasureError(f"unknown audit {args.action!r}")


def _diag(args) -> None:
    m = _measure(args)
    seed = args.seed
    if args.action == "entropy":
        out = {
            "entropy": diagnostics.entropy(m),
            "dimension": diagnostics.dimension(m),
            "expected_log_lebesgue": diagnostics.expected_log(m, diagnostics.LEBESGUE),
            "expected_log_mu": diagnostics.expected_log(m, diagnostics.MU),
            "uniform": m.is_uniform,
        }
        _write(dumps_json(out), args.out)
        return
    if args.action == "trajectory":
        x = diagnostics.sample_point(m, args.law, args.depth, seed)
        traj = diagnostics.density_trajectory(m, x, args.depth)
        rows = tuple((n, v) for n, v in enumerate(traj.values))
        _write(emit_report(Table(("n", "log_density"), rows)), args.out)
        return
    if args.action == "lln":
        stats = diagnostics.lln_experiment(m, args.law, args.samples, args.depth, seed)
        _write(dumps_json(stats.to_dict()), args.out)
        if not stats.passed:
            raise ClaimFailed("empirical mean of S_n/n misses its limit")
        return
    raise MeasureError(f"unknown diagnostic {args.action!r}")


def _join_negative_values(argv):
    """Let ``--box -1/2,...`` through: argparse would read the value as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--box", "--t") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_join_negative_values(argv))
    for name, default in (("config", None), ("out", None), ("seed", DEFAULT_SEED), ("jobs", 1), ("gen_cap", DEFAULT_GEN_CAP)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        if args.out and not Path(args.out).resolve().parent.is_dir():
            raise MeasureError(f"output directory for {args.out} does not exist")
        if args.command == "solve-coeffs":
            _solve_coeffs(args)
        elif args.command == "measure":
            _measure_box(args)
        elif args.command == "audit":
            _audit(args)
        elif args.command == "diag":
            _diag(args)
    except ClaimFailed as exc:
        sys.stderr.write(json.dumps({"error": "ClaimFailed", "message": str(exc)}) + "\n")
        return 2
    except AssertionError as exc:
        sys.stderr.write(json.dumps({"error": "AssertionError", "message": str(exc)}) + "\n")
        return 2
    except MeasureError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    except (OSError, ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
