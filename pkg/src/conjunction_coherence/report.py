"""
Report payloads for the CLI.

Every report is a plain dict with stable keys; rationals are ``"p/q"``
strings. ``render_*`` helpers produce the short human-readable summaries.
"""
from __future__ import annotations

from typing import Any, Dict, List, Optional

from .coherence.models import AssessmentProblem, CoherenceVerdict, ExtensionResult
from .crq import ConjunctionTerm, ValueTable
from .logic.constituents import constituent_label
from .rationals import format_rational
from .regions import Bounds, FamilyMatch
from .tnorm import LambdaFit


def verdict_report(
    problem: AssessmentProblem,
    verdict: Optional[CoherenceVerdict],
    violations: Optional[List[str]] = None,
    family: Optional[FamilyMatch] = None,
    mismatch: bool = False,
) -> Dict[str, Any]:
    """Report for ``check``.

    *verdict* is the LP result (``None`` when only the closed form ran);
    *violations* lists the region inequalities the closed form found broken,
    ``None`` when no closed form was used. Without an LP verdict the
    closed-form family and violations fill ``certificate`` or ``witness``
    and ``recursion_trace`` is empty.
    """
    closed_form = None if violations is None else not violations
    coherent = verdict.coherent if verdict is not None else bool(closed_form)
    report: Dict[str, Any] = {
        "terms": [list(t.sorted_members) for t in problem.terms],
        "assessment": [format_rational(v) for v in problem.assessment],
        "coherent": coherent,
        "closed_form_used": closed_form is not None,
        "family": family.kind.value if family is not None else None,
    }
    if verdict is not None:
        detail = verdict.to_dict()
        report["recursion_trace"] = detail["recursion_trace"]
        report["flagged"] = detail["flagged"]
        if verdict.coherent:
            report["certificate"] = detail["certificate"]
        elif "witness" in detail:
            report["witness"] = detail["witness"]
    else:
        region = {"family": report["family"], "violated": list(violations or [])}
        report["recursion_trace"] = []
        if coherent:
            report["certificate"] = region
        else:
            region["description"] = "violates " + ", ".join(region["violated"])
            report["witness"] = region
    if closed_form is not None and verdict is not None:
        report["closed_form"] = closed_form
        report["violated"] = list(violations)
    if mismatch:
        report["mismatch"] = True
    return report


def extension_report(
    target: ConjunctionTerm,
    result: Optional[ExtensionResult],
    closed_form: Optional[Bounds] = None,
    family: Optional[FamilyMatch] = None,
    mismatch: bool = False,
) -> Dict[str, Any]:
    if result is not None:
        report = result.to_dict()
    else:
        assert closed_form is not None
        report = {
            "target": list(target.sorted_members),
            "lower": format_rational(closed_form.lower),
            "upper": format_rational(closed_form.upper),
            "exact": True,
            "method": "closed-form",
        }
    report["closed_form_used"] = closed_form is not None
    report["family"] = family.kind.value if family is not None else None
    if closed_form is not None and result is not None:
        report["closed_form"] = closed_form.to_dict()
    if mismatch:
        report["mismatch"] = True
    return report


def lambda_report(x, y, z, fit: LambdaFit) -> Dict[str, Any]:
    report = fit.to_dict()
    report.update({"x": format_rational(x), "y": format_rational(y), "z": format_rational(z)})
    return report


def table_report(problem: AssessmentProblem, table: ValueTable) -> Dict[str, Any]:
    constituents = {c.index: c for c in problem.constituent_table.constituents}
    rows: List[Dict[str, Any]] = []
    for row in table.rows:
        rows.append(
            {
                "constituent": f"C{row.constituent}",
                "label": constituent_label(constituents[row.constituent]),
                "value": format_rational(row.value),
                "void": list(row.void),
            }
        )
    return {"term": list(table.term.sorted_members), "rows": rows}


# ---------------------------------------------------------------------------
# Text rendering
# ---------------------------------------------------------------------------

def render_table_text(report: Dict[str, Any]) -> str:
    """Aligned ``constituent  label  value`` listing."""
    rows = report["rows"]
    width_c = max([len("case")] + [len(r["constituent"]) for r in rows])
    width_l = max([len("constituent")] + [len(r["label"]) for r in rows])
    lines = [f"{'case':<{width_c}}  {'constituent':<{width_l}}  value"]
    for r in rows:
        lines.append(f"{r['constituent']:<{width_c}}  {r['label']:<{width_l}}  {r['value']}")
    return "\n".join(lines)


def render_verdict_text(report: Dict[str, Any]) -> str:
    status = "COHERENT" if report["coherent"] else "NOT COHERENT"
    lines = [f"Assessment is {status}"]
    if report.get("family"):
        lines.append(f"  Family: {report['family']}")
    if report.get("recursion_trace"):
        lines.append(f"  Levels checked: {len(report['recursion_trace'])}")
    witness = report.get("witness")
    if witness:
        lines.append(f"  Witness: {witness['description']}")
    if report.get("mismatch"):
        lines.append("  WARNING: closed form and LP disagree")
    return "\n".join(lines)


def render_extension_text(report: Dict[str, Any]) -> str:
    target = ConjunctionTerm(frozenset(report["target"])).label
    lines = [f"Coherent extension for {target}: [{report['lower']}, {report['upper']}]"]
    lines.append(f"  Method: {report['method']} ({'exact' if report['exact'] else 'approximate'})")
    if report.get("mismatch"):
        lines.append("  WARNING: closed form and LP disagree")
    return "\n".join(lines)


def render_lambda_text(report: Dict[str, Any]) -> str:
    line = f"T_lambda({report['x']}, {report['y']}) = {report['z']}: {report['kind']}"
    if "lambda" in report:
        line += f", lambda = {report['lambda']}"
    if "residual" in report:
        line += f" (residual {report['residual']:.3g})"
    if report["kind"] == "UNDERDETERMINED":
        line += ", every lambda in [0, +inf] works"
    return line
