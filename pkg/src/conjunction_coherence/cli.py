from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from .coherence import check_coherence, extension_interval
from .config import DEFAULT_LOG_LEVEL
from .crq import ConjunctionTerm, conjunction_value_table
from .errors import CapacityError, InputError, StateError
from .io import MODES, dumps_report, read_document, document_to_problem, write_report
from .regions import closed_form_extension, closed_form_verdict, closed_form_violations, identify_family
from .report import (
    extension_report,
    lambda_report,
    render_extension_text,
    render_lambda_text,
    render_table_text,
    render_verdict_text,
    table_report,
    verdict_report,
)
from .rationals import to_unit
from .tnorm import find_lambda

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def _parse_members(text: str) -> ConjunctionTerm:
    try:
        members = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise InputError(f"Expected a comma-separated index list like 1,2 - got {text!r}") from None
    return ConjunctionTerm(frozenset(members))


def _load(args: argparse.Namespace):
    raw = read_document(args.input)
    problem = document_to_problem(raw)
    mode = getattr(args, "mode", None) or raw.get("options", {}).get("mode", "auto")
    return problem, mode


def _emit(args: argparse.Namespace, report: dict, text: str) -> None:
    if args.json:
        print(dumps_report(report))
    else:
        print(text)
    if getattr(args, "out", None):
        write_report(args.out, report)
        if not args.json:
            print(f"Wrote report to {args.out}")


def _cmd_check(args: argparse.Namespace) -> int:
    problem, mode = _load(args)
    family = identify_family(problem)
    violations = closed_form_violations(problem) if mode != "lp" else None
    if mode == "closed-form" and violations is None:
        raise InputError("No closed form covers this family; use --mode lp or auto")
    closed = None if violations is None else not violations

    verdict = None
    if closed is None or args.verify_lp:
        verdict = check_coherence(problem)
    mismatch = closed is not None and verdict is not None and closed != verdict.coherent
    if mismatch:
        logger.warning("Closed form says %s but the LP engine says %s", closed, verdict.coherent)

    report = verdict_report(problem, verdict, violations, family if closed is not None else None, mismatch)
    _emit(args, report, render_verdict_text(report))
    if mismatch or not report["coherent"]:
        return EXIT_NEGATIVE
    return EXIT_OK


def _cmd_extend(args: argparse.Namespace) -> int:
    problem, mode = _load(args)
    target = _parse_members(args.target)
    base = problem.without_term(target) if target in problem.terms else problem

    bounds = None
    family = None
    if mode != "lp":
        bounds = closed_form_extension(problem, target)
        if bounds is not None:
            family = identify_family(problem, set(problem.terms) | {target})
            base_ok = closed_form_verdict(base)
            if base_ok is None:
                base_ok = check_coherence(base).coherent
            if not base_ok:
                raise StateError("Cannot extend an incoherent assessment")
    if mode == "closed-form" and bounds is None:
        raise InputError("No closed form covers this extension; use --mode lp or auto")

    result = None
    if bounds is None or args.verify_lp:
        candidates = [bounds.lower, bounds.upper] if bounds is not None else None
        result = extension_interval(problem, target, candidates=candidates)
    mismatch = (
        bounds is not None
        and result is not None
        and (bounds.lower, bounds.upper) != (result.lower, result.upper)
    )
    if mismatch:
        logger.warning("Closed-form bounds differ from the LP extension")

    report = extension_report(target, result, bounds, family, mismatch)
    _emit(args, report, render_extension_text(report))
    return EXIT_NEGATIVE if mismatch else EXIT_OK


def _cmd_lambda(args: argparse.Namespace) -> int:
    x, y, z = (to_unit(v, name) for v, name in ((args.x, "x"), (args.y, "y"), (args.z, "z")))
    fit = find_lambda(x, y, z)
    report = lambda_report(x, y, z, fit)
    _emit(args, report, render_lambda_text(report))
    return EXIT_OK


def _cmd_table(args: argparse.Namespace) -> int:
    problem, _ = _load(args)
    term = _parse_members(args.term)
    table = conjunction_value_table(term, problem.constituent_table, problem.previsions)
    report = table_report(problem, table)
    _emit(args, report, render_table_text(report))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coherence",
        description="Coherence checks for previsions of conjunctions of conditional events",
    )
    parser.add_argument(
        "--log-level",
        default=DEFAULT_LOG_LEVEL.upper(),
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (default: %(default)s, or COHERENCE_LOG_LEVEL)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Check command
    check = subparsers.add_parser("check", help="Decide coherence of an assessment document")
    check.add_argument("input", help="Assessment document JSON")
    check.add_argument("--mode", choices=list(MODES), default=None, help="Default: the document's option, else auto")
    check.add_argument("--verify-lp", action="store_true", help="Confirm a closed-form answer with the LP engine")
    check.add_argument("--json", action="store_true", help="Print the JSON report")
    check.add_argument("--out", default="", help="Also write the report to this path")
    check.set_defaults(func=_cmd_check)

    # Extend command
    extend = subparsers.add_parser("extend", help="Coherent extension interval for one more term")
    extend.add_argument("input", help="Assessment document JSON")
    extend.add_argument("--target", required=True, help="Members of the new term, e.g. 1,2")
    extend.add_argument("--mode", choices=list(MODES), default=None)
    extend.add_argument("--verify-lp", action="store_true")
    extend.add_argument("--json", action="store_true")
    extend.add_argument("--out", default="")
    extend.set_defaults(func=_cmd_extend)

    # Lambda command
    lam = subparsers.add_parser("lambda", help="Recover the Frank parameter with z = T_lambda(x, y)")
    lam.add_argument("--x", required=True)
    lam.add_argument("--y", required=True)
    lam.add_argument("--z", required=True)
    lam.add_argument("--json", action="store_true")
    lam.set_defaults(func=_cmd_lambda)

    # Table command
    table = subparsers.add_parser("table", help="Value table of a conjunction over the constituents")
    table.add_argument("input", help="Assessment document JSON")
    table.add_argument("--term", required=True, help="Members of the conjunction, e.g. 1,2,3")
    table.add_argument("--json", action="store_true")
    table.set_defaults(func=_cmd_table)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (InputError, CapacityError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE


if __name__ == "__main__":
    sys.exit(main())
