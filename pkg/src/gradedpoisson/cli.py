"""Command-line surface: suite runs, single brackets, chart listing.

Exit codes: 0 when every check passes, 1 when any check fails, 2 for
usage, manifest, or expression errors.
"""

from __future__ import annotations

import argparse
import sys

from .brackets import bracket_fastpath, even_bracket, ks_bracket
from .exprparse import ExprError, parse_form_expr, parse_scalar_expr
from .geometry import ChartError, builtin_chart, builtin_names
from .graded import theta_even_cached
from .manifest import ManifestError, parse_manifest
from .suites import SUITES, run_suite


def load_chart(target: str):
    if target.startswith("builtin:"):
        return builtin_chart(target[len("builtin:") :])
    try:
        with open(target, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise ManifestError(f"cannot read manifest: {err}", 0) from None
    return parse_manifest(text)


def _cmd_check(args) -> int:
    chart = load_chart(args.target)
    report = run_suite(
        chart,
        suite=args.suite,
        seed=args.seed,
        samples=args.samples,
        max_form_degree=args.max_form_degree,
    )
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return 0 if report.ok else 1


def _fastpath_operand(text: str, chart):
    """A scalar, or d(scalar) marking the exact-differential slot."""
    stripped = text.strip()
    if stripped.startswith("d(") and stripped.endswith(")"):
        return parse_scalar_expr(stripped[2:-1], chart.field), True
    return parse_scalar_expr(stripped, chart.field), False


def _cmd_bracket(args) -> int:
    chart = load_chart(args.target)
    if args.fastpath:
        if args.odd:
            raise ExprError("--fastpath computes even brackets only", 1)
        f, df = _fastpath_operand(args.alpha, chart)
        h, dh = _fastpath_operand(args.beta, chart)
        kind = {(False, False): "ff", (False, True): "f_dh", (True, True): "df_dh"}.get(
            (df, dh)
        )
        if kind is None:
            raise ExprError(
                "no closed form for [[df,h]]; swap the slots or drop --fastpath", 1
            )
        result = bracket_fastpath(kind, f, h, chart)
    else:
        alpha = parse_form_expr(args.alpha, chart)
        beta = parse_form_expr(args.beta, chart)
        if args.odd:
            result = ks_bracket(alpha, beta, chart)
        else:
            result = even_bracket(alpha, beta, theta_even_cached(chart, "omega_g", "nabla"))
    sys.stdout.write(f"{result}\n")
    return 0


def _cmd_charts(args) -> int:
    for name in builtin_names():
        chart = builtin_chart(name)
        sign = chart.j_square_scalar()
        flavor = {1: "product type", -1: "complex type"}.get(sign, "mixed type")
        sys.stdout.write(
            f"{name:10s} dim {chart.dim}  coords {','.join(chart.field.coords)}  {flavor}\n"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedpoisson",
        description="Exact verification of graded symplectic calculus on coordinate charts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run a verification suite over a chart")
    check.add_argument("target", help="manifest path or builtin:NAME")
    check.add_argument("--suite", choices=SUITES, default="all")
    check.add_argument("--seed", type=int, default=42)
    check.add_argument("--samples", type=int, default=8)
    check.add_argument("--max-form-degree", type=int, default=2)
    check.add_argument("--format", choices=("text", "json"), default="text")
    check.set_defaults(fn=_cmd_check)

    bracket = sub.add_parser("bracket", help="compute one graded Poisson bracket")
    bracket.add_argument("target", help="manifest path or builtin:NAME")
    bracket.add_argument("--alpha", required=True, help="first operand expression")
    bracket.add_argument("--beta", required=True, help="second operand expression")
    bracket.add_argument("--odd", action="store_true", help="use the odd bracket")
    bracket.add_argument(
        "--fastpath",
        action="store_true",
        help="use the closed-form route; operands must be scalars or d(scalar)",
    )
    bracket.set_defaults(fn=_cmd_bracket)

    charts = sub.add_parser("charts", help="list built-in charts")
    charts.set_defaults(fn=_cmd_charts)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ManifestError, ExprError, ChartError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
