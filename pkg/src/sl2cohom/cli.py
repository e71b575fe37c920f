"""Batch command-line front end.

Four subcommands: ``dim`` answers a single-instance dimension query with
any subset of the methods, ``table`` materialises a parameter sweep as CSV
or JSON, ``verify`` runs the sweep cross-check gate, and ``basis`` exports
a spanning set of cocycle representatives.  Weights are passed as exact
rational strings; no floats are parsed anywhere, so the natural-shift
predicate stays exact.  Exit codes: 0 success, 1 method disagreement in
``verify``, 2 usage error, 3 unwritable output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .cecomplex import brute_force_h2, default_alpha_max
from .closedform import classify, dim_h2_closed_form, dim_h2_summary_table
from .polynomials import format_rational, parse_rational
from .reduced import cocycle_basis, cocycle_residual, dim_h2_via_system
from .sweep import rows_to_csv, rows_to_json, run_sweep, verify_rows
from .weights import Weights

USAGE_EXIT = 2
IO_EXIT = 3

ALL_METHODS = ("system", "closed", "summary", "oracle")


class UsageError(Exception):
    pass


def _parse_rational_arg(text: str, what: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"malformed rational for {what}: {text!r} ({exc})") from exc


def _parse_weights(args: argparse.Namespace) -> Weights:
    if args.lambdas is None or args.mu is None:
        raise UsageError("--lambdas and --mu are required")
    parts = [p for p in args.lambdas.split(",") if p.strip()]
    lambdas = tuple(_parse_rational_arg(p, "--lambdas") for p in parts)
    if args.n is not None and args.n != len(lambdas):
        raise UsageError(f"--n {args.n} does not match {len(lambdas)} lambdas")
    if not lambdas:
        raise UsageError("--lambdas must list at least one rational")
    return Weights(lambdas, _parse_rational_arg(args.mu, "--mu"))


def _parse_methods(raw: Optional[str], default: Sequence[str]) -> tuple[str, ...]:
    if raw is None:
        return tuple(default)
    methods = tuple(m.strip() for m in raw.split(",") if m.strip())
    for m in methods:
        if m not in ALL_METHODS:
            raise UsageError(f"unknown method {m!r}; choose from {', '.join(ALL_METHODS)}")
    if not methods:
        raise UsageError("--methods must list at least one method")
    return methods


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def _cmd_dim(args: argparse.Namespace) -> int:
    w = _parse_weights(args)
    methods = _parse_methods(args.methods, ("system", "closed", "oracle"))
    tag = classify(w)
    results = []
    for method in methods:
        if method == "system":
            results.append(dim_h2_via_system(w).to_json_dict())
        elif method == "closed":
            value = dim_h2_closed_form(tag, w.n)
            results.append({
                "dim": value, "method": "closed", "alpha_max": None,
                "stable": True, "weights": w.to_json_dict(),
                "case": tag.describe(),
            })
        elif method == "summary":
            value = dim_h2_summary_table(tag, w.n)
            results.append({
                "dim": None if value is None else format_rational(value),
                "method": "summary", "alpha_max": None, "stable": True,
                "weights": w.to_json_dict(), "case": tag.describe(),
            })
        else:
            amax = args.alpha_max if args.alpha_max is not None else default_alpha_max(w)
            results.append(brute_force_h2(w, amax).to_json_dict())
    _write_output(json.dumps(results, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    methods = _parse_methods(args.methods, ("system", "closed", "summary", "oracle"))
    rows = run_sweep(args.n, args.k_max, methods, oracle_policy=args.oracle,
                     alpha_max=args.alpha_max)
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
    _write_output(text, args.out)
    return 0


def _perturb_first_entry(matrix):
    """Negative-control hook: corrupt one entry of the constraint system."""
    if matrix.rows == 0 or matrix.cols == 0:
        return matrix
    return matrix.with_entry(0, 0, matrix[0, 0] + 1)


def _cmd_verify(args: argparse.Namespace) -> int:
    perturb = _perturb_first_entry if args.self_test_perturb else None
    rows = run_sweep(args.n, args.k_max, ("system", "closed", "summary", "oracle"),
                     oracle_policy=args.oracle, alpha_max=args.alpha_max,
                     perturb=perturb)
    report = verify_rows(rows)
    if args.out is not None:
        _write_output(json.dumps(report.to_json_dict(), indent=2, sort_keys=True) + "\n",
                      args.out)
    for line in report.summary_lines():
        print(line)
    return 0 if report.passed else 1


def _cmd_basis(args: argparse.Namespace) -> int:
    w = _parse_weights(args)
    if w.natural_delta() is None:
        print("H^2 = 0, empty basis")
        _write_output(json.dumps([], indent=2) + "\n", args.out)
        return 0
    basis = cocycle_basis(w)
    for element in basis:
        if cocycle_residual(element):
            raise AssertionError("basis element with nonzero residual")
    _write_output(json.dumps([b.to_json_dict() for b in basis],
                             indent=2, sort_keys=True) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sl2cohom",
        description="Exact dimensions of the degree-2 cohomology of sl(2) "
                    "acting on n-ary differential operators between "
                    "weighted density modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_weight_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, default=None, help="arity (checked against --lambdas)")
        p.add_argument("--lambdas", type=str, default=None,
                       help="comma-separated exact rationals, e.g. 0,1/2")
        p.add_argument("--mu", type=str, default=None, help="target weight, exact rational")

    p_dim = sub.add_parser("dim", help="dimension of one configuration per method")
    add_weight_args(p_dim)
    p_dim.add_argument("--methods", type=str, default=None,
                       help="comma list from: system,closed,summary,oracle")
    p_dim.add_argument("--alpha-max", type=int, default=None)
    p_dim.add_argument("--out", type=str, default=None)
    p_dim.add_argument("--format", choices=("json",), default="json")
    p_dim.set_defaults(func=_cmd_dim)

    p_table = sub.add_parser("table", help="parameter sweep report")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--k-max", type=int, required=True)
    p_table.add_argument("--methods", type=str, default=None)
    p_table.add_argument("--oracle", choices=("auto", "on", "off"), default="auto")
    p_table.add_argument("--alpha-max", type=int, default=None)
    p_table.add_argument("--format", choices=("csv", "json"), default="csv")
    p_table.add_argument("--out", type=str, default=None)
    p_table.set_defaults(func=_cmd_table)

    p_verify = sub.add_parser("verify", help="cross-check methods over a sweep")
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--k-max", type=int, required=True)
    p_verify.add_argument("--oracle", choices=("auto", "on", "off"), default="auto")
    p_verify.add_argument("--alpha-max", type=int, default=None)
    p_verify.add_argument("--out", type=str, default=None)
    p_verify.add_argument("--self-test-perturb", action="store_true",
                          help="corrupt one matrix entry to prove the gate trips")
    p_verify.set_defaults(func=_cmd_verify)

    p_basis = sub.add_parser("basis", help="export cocycle representatives")
    add_weight_args(p_basis)
    p_basis.add_argument("--out", type=str, default=None)
    p_basis.add_argument("--format", choices=("json",), default="json")
    p_basis.set_defaults(func=_cmd_basis)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except IOError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return IO_EXIT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
