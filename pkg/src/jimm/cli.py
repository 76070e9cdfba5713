"""Command-line front end.

Exit codes: 0 on success, 1 when a ``verify`` property fails, 2 for usage,
parse and domain errors.  Exact values are always printed as ``p/q``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import measures, transforms, tree, verify
from .cf import (
    CFTuple,
    DomainError,
    format_rational,
    parse_rational,
    parse_tuple,
    star,
    theta,
    theta_inverse,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _measure_arg(text: str) -> measures.TransitionFunction:
    try:
        return measures.parse_measure(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _on_vertex(fn):
    """Lift a tuple map to rationals in (0,1) through theta."""
    return lambda r: theta(fn(theta_inverse(r)))


EVALUATORS = {
    "k": transforms.k_rational,
    "flip": transforms.flip_rational,
    "jimm": transforms.jimm_extended,
    "farey": transforms.farey_map_rational,
    "parent": _on_vertex(transforms.parent_map),
    "pi-lambda": lambda r: measures.pi_lambda(theta_inverse(r)),
    "theta-inv": theta_inverse,
}


def _format_value(value) -> str:
    if isinstance(value, CFTuple):
        return str(value)
    return format_rational(value)


def cmd_eval(args: argparse.Namespace) -> int:
    r = args.r
    if args.explain:
        if args.fn != "jimm":
            raise UsageError("--explain is only available for jimm")
        print(_explain_jimm(r))
    print(_format_value(EVALUATORS[args.fn](r)))
    return EXIT_OK


def _explain_jimm(r: Fraction) -> str:
    if r == 0:
        raise DomainError("Jimm is not defined at 0")
    lines = []
    if r < 0:
        lines.append(f"J({format_rational(r)}) = -1/J({format_rational(-r)})")
        r = -r
    if r == 1:
        lines.append("J(1/1) = 1/1")
        return "\n".join(lines)
    if r > 1:
        lines.append(f"J({format_rational(r)}) = 1/J({format_rational(1 / r)})")
        r = 1 / r
    x = theta_inverse(r)
    lines.append(f"theta_inverse({format_rational(r)}) = {x}")
    lines.append(transforms.jimm_trace(x).render())
    return "\n".join(lines)


def _parse_operand(text: str) -> tuple[CFTuple, bool]:
    """A tuple ``(n1,..,nk)`` or a rational in (0,1); the flag says which."""
    if "(" in text or "," in text:
        return parse_tuple(text), True
    return theta_inverse(parse_rational(text)), False


def cmd_star(args: argparse.Namespace) -> int:
    operands = [_parse_operand(t) for t in args.operands]
    product = operands[0][0]
    for x, _ in operands[1:]:
        product = star(product, x)
    if any(is_tuple for _, is_tuple in operands):
        print(product)
    else:
        print(format_rational(theta(product)))
    return EXIT_OK


def cmd_tree(args: argparse.Namespace) -> int:
    spec = tree.TreeRenderSpec(args.variant, args.depth, args.format)
    sys.stdout.write(tree.render_tree(spec))
    return EXIT_OK


def cmd_cdf(args: argparse.Namespace) -> int:
    tf = args.measure
    if args.at is not None:
        value = measures.cdf(tf, args.at)
        text = format_rational(value)
        if args.digits is not None:
            text += f" {measures.to_decimal(value, args.digits)}"
        print(text)
        return EXIT_OK
    digits = 18 if args.digits is None else args.digits
    samples = measures.cdf_grid(tf, args.grid, workers=args.workers)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            measures.write_cdf_csv(samples, fh, digits)
    else:
        measures.write_cdf_csv(samples, sys.stdout, digits)
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    for r in transforms.twisted_calkin_wilf(args.count):
        print(format_rational(r))
    return EXIT_OK


def cmd_walk(args: argparse.Namespace) -> int:
    summary = measures.monte_carlo_walk(args.measure, args.samples, args.depth, args.seed, args.workers)
    print(summary)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    outcomes = verify.run_all(args.depth)
    for outcome in outcomes:
        print(outcome.line())
    failed = sum(not o.result.ok for o in outcomes)
    checks = sum(o.result.count for o in outcomes)
    print(f"{len(outcomes) - failed}/{len(outcomes)} properties passed, {checks} checks")
    return EXIT_FAILURE if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jimm", description="Farey tree automorphisms and boundary measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="apply a map to a rational")
    p.add_argument("fn", choices=sorted(EVALUATORS))
    p.add_argument("r", type=_rational_arg, help="rational as p/q or an integer")
    p.add_argument("--explain", action="store_true", help="show the Jimm rewriting steps")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("star", help="monoid product of tuples or rationals in (0,1)")
    p.add_argument("operands", nargs="+", metavar="X")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("tree", help="print the top levels of a labelled tree")
    p.add_argument("variant", choices=tree.VARIANTS)
    p.add_argument("--depth", type=_positive_int, default=5, help="number of levels (default 5)")
    p.add_argument("--format", choices=tree.FORMATS, default="text")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("cdf", help="exact c.d.f. at a point or on a grid (CSV)")
    p.add_argument("measure", type=_measure_arg, help="e.g. lebesgue, minkowski, denjoy:1/3, lebesgue@J")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--at", type=_rational_arg, metavar="P/Q")
    where.add_argument("--grid", type=_positive_int, metavar="N", help="sample at j/N for j = 0..N")
    p.add_argument("--digits", type=int, default=None, help="decimal places (grid default 18)")
    p.add_argument("--out", help="CSV path (default: standard output)")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_cdf)

    p = sub.add_parser("enumerate", help="twisted Calkin-Wilf sequence")
    p.add_argument("count", type=_positive_int)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("walk", help="Monte-Carlo random walks against the exact c.d.f.")
    p.add_argument("measure", type=_measure_arg)
    p.add_argument("--samples", type=_positive_int, default=100_000)
    p.add_argument("--depth", type=_positive_int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=_positive_int, default=1)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("verify", help="run every exhaustive property check")
    p.add_argument("--depth", type=_positive_int, default=10)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "digits", None) is not None and args.digits < 0:
        print("jimm: error: --digits must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        # DomainError is a ValueError too
        print(f"jimm {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
