"""Command-line entry point: ``spectra-lab <command> [args] [--json]``."""

from __future__ import annotations

import argparse
import sys

from ..errors import ConsistencyError, SpectraError
from ..monomial import DEFAULT_DEGREE_BOUND
from ..ring import set_size_cap
from ..verify import SUITES
from . import reports
from .dsl import build, parse, pretty

COMMANDS = ("classify", "decompose", "kernel", "star", "verify", "search", "poset")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report (sorted keys)")
    common.add_argument("--degree-bound", type=int, default=DEFAULT_DEGREE_BOUND,
                        help="witness degree bound for monomial kernel searches (default %(default)s)")
    common.add_argument("--size-cap", type=int, default=None,
                        help="largest ring to build (default: $SPECTRA_LAB_SIZE_CAP or 4096)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="spectra-lab", description="Spectra of finite commutative rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="all ring flags with witnesses")
    p.add_argument("expr")

    p = sub.add_parser("decompose", parents=[common], help="CRT decomposition or a refusal")
    p.add_argument("expr")
    p.add_argument("--kind", default="local", choices=["local", "fields", "domains", "lqp"])

    p = sub.add_parser("kernel", parents=[common], help="Ker of the localization at a prime")
    p.add_argument("expr")
    p.add_argument("--at", required=True, help="prime: generators such as 2, (2) or x,y")
    p.add_argument("--element", action="append", default=[], help="extra element to test (repeatable)")

    p = sub.add_parser("star", parents=[common], help="the set I* of f with Af + I proper")
    p.add_argument("expr")
    p.add_argument("--ideal", default="0", help="generators of I (default: the zero ideal)")

    p = sub.add_parser("verify", parents=[common], help="run a theorem suite over a corpus")
    p.add_argument("suite", help="one of: " + ", ".join(SUITES))
    p.add_argument("--corpus", default=None, help="e.g. zmod:2..60, products:depth2, posets:5, standard")
    p.add_argument("--size", type=int, default=None, help="poset size, or ring size limit")

    p = sub.add_parser("search", parents=[common], help="first corpus member satisfying a predicate")
    p.add_argument("predicate", help='e.g. "lessened && !reduced"')
    scope = p.add_mutually_exclusive_group()
    scope.add_argument("--corpus", default=None)
    scope.add_argument("--posets", type=int, default=None, help="search posets with at most this many points")

    p = sub.add_parser("poset", parents=[common], help="spectral poset: shapes, retractions, dual")
    p.add_argument("expr")
    return parser


def _subject(text: str):
    expr = parse(text)
    return pretty(expr), build(expr)


def run(args: argparse.Namespace) -> reports.Report:
    cmd = args.command
    if args.degree_bound < 0:
        raise SpectraError("--degree-bound must be non-negative")
    if cmd == "verify":
        return reports.verify_report(args.suite, args.corpus, args.size)
    if cmd == "search":
        corpus = f"posets:{args.posets}" if args.posets is not None else (args.corpus or "zmod:2..100")
        return reports.search_report(args.predicate, corpus, args.degree_bound)
    subject, value = _subject(args.expr)
    if cmd == "classify":
        return reports.classify_report(subject, value, args.degree_bound)
    if cmd == "decompose":
        return reports.decompose_report(subject, value, args.kind)
    if cmd == "kernel":
        return reports.kernel_report(subject, value, args.at, args.element, args.degree_bound)
    if cmd == "star":
        return reports.star_report(subject, value, args.ideal)
    return reports.poset_report(subject, value)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.size_cap is not None:
            set_size_cap(args.size_cap)
        report = run(args)
    except (SpectraError, ConsistencyError, ValueError) as exc:
        subject = getattr(args, "expr", None) or getattr(args, "suite", None) or getattr(args, "predicate", "")
        report = reports.Report(subject, "error", {"error": str(exc)}, status=reports.ERROR)
        if args.json:
            sys.stdout.write(report.to_json())
        else:
            print(f"error: {exc}", file=sys.stderr)
            pointer = getattr(exc, "pointer", None)
            if pointer is not None:
                print(pointer(), file=sys.stderr)
        return report.exit_code
    finally:
        if args.size_cap is not None:
            set_size_cap(None)
    sys.stdout.write(report.to_json() if args.json else reports.render_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
