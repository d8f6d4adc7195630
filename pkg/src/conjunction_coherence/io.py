"""
Reading and writing assessment documents and reports.

An assessment document is JSON::

    {
      "atoms": ["A", "H", "B", "K"],
      "conditionals": [
        {"consequent": "A", "antecedent": "H"},
        {"consequent": "B", "antecedent": "K"}
      ],
      "terms": [
        {"members": [1], "prevision": "7/20"},
        {"members": [2], "prevision": "9/20"},
        {"members": [1, 2], "prevision": "0.1575"}
      ],
      "options": {"mode": "auto"}
    }

``auxiliary`` may list further sub-conjunction previsions that value tables
need but that are not part of the checked family.
"""
from __future__ import annotations

import json
from datetime import datetime, timezone
from importlib.resources import files
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from .coherence.models import AssessmentProblem
from .crq import ConjunctionTerm, PrevisionMap
from .errors import InputError
from .logic.models import ConditionalEvent, make_atoms
from .logic.parser import parse_formula, render_formula
from .rationals import format_rational, to_unit


def _utc_now_iso() -> str:
    return datetime.now(tz=timezone.utc).isoformat()


def load_assessment_schema() -> Dict[str, Any]:
    schema_path = files("conjunction_coherence.schemas").joinpath("assessment.schema.json")
    return json.loads(schema_path.read_text(encoding="utf-8"))


ASSESSMENT_SCHEMA = load_assessment_schema()
MODES = tuple(ASSESSMENT_SCHEMA["properties"]["options"]["properties"]["mode"]["enum"])


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _require_keys(obj: Any, required: List[str], allowed: List[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be a JSON object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise InputError(f"{where} is missing {missing}")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise InputError(f"{where} has unknown keys {unknown}. Allowed: {sorted(allowed)}")


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def validate_document(raw: Any) -> None:
    """Structural checks following the shipped JSON schema."""
    schema = ASSESSMENT_SCHEMA
    _require_keys(raw, schema["required"], list(schema["properties"]), "document")
    if not isinstance(raw["atoms"], list) or not all(isinstance(a, str) for a in raw["atoms"]):
        raise InputError("'atoms' must be a list of names")
    cond_schema = schema["properties"]["conditionals"]["items"]
    if not isinstance(raw["conditionals"], list) or not raw["conditionals"]:
        raise InputError("'conditionals' must be a non-empty list")
    for i, item in enumerate(raw["conditionals"], start=1):
        _require_keys(item, cond_schema["required"], list(cond_schema["properties"]), f"conditional {i}")
        for key in cond_schema["required"]:
            if not isinstance(item[key], str):
                raise InputError(f"conditional {i}: '{key}' must be a formula string")
    term_schema = schema["$defs"]["assessed_term"]
    for section in ("terms", "auxiliary"):
        items = raw.get(section, [])
        if not isinstance(items, list):
            raise InputError(f"'{section}' must be a list")
        for i, item in enumerate(items, start=1):
            _require_keys(item, term_schema["required"], list(term_schema["properties"]), f"{section}[{i}]")
            members = item["members"]
            if not isinstance(members, list) or not members:
                raise InputError(f"{section}[{i}]: 'members' must be a non-empty list of indices")
            if not all(_is_int(m) and m >= 1 for m in members):
                raise InputError(f"{section}[{i}]: 'members' must be positive integers, got {members!r}")
            if len(set(members)) != len(members):
                raise InputError(f"{section}[{i}]: 'members' has repeated indices {members!r}")
    options = raw.get("options", {})
    _require_keys(options, [], list(schema["properties"]["options"]["properties"]), "options")
    if "mode" in options and options["mode"] not in MODES:
        raise InputError(f"Unknown mode {options['mode']!r}. Known: {list(MODES)}")
    if "max_atoms" in options and not (_is_int(options["max_atoms"]) and options["max_atoms"] >= 1):
        raise InputError(f"options.max_atoms must be an integer >= 1, got {options['max_atoms']!r}")


# ---------------------------------------------------------------------------
# Documents <-> problems
# ---------------------------------------------------------------------------

def _prevision(item: Mapping[str, Any], where: str) -> Any:
    value = item["prevision"]
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise InputError(f"{where}: prevision must be a rational string")
    return to_unit(value, name=f"{where} prevision")


def document_to_problem(raw: Mapping[str, Any]) -> AssessmentProblem:
    """Build an :class:`AssessmentProblem` from a parsed document."""
    validate_document(raw)
    atoms = make_atoms(raw["atoms"])
    conditionals = tuple(
        ConditionalEvent(
            parse_formula(item["consequent"], atoms),
            parse_formula(item["antecedent"], atoms),
            name=f"conditional {i}",
        )
        for i, item in enumerate(raw["conditionals"], start=1)
    )
    values: Dict[ConjunctionTerm, Any] = {}
    for i, item in enumerate(raw.get("auxiliary", []), start=1):
        values[ConjunctionTerm(frozenset(item["members"]))] = _prevision(item, f"auxiliary[{i}]")
    terms: List[ConjunctionTerm] = []
    for i, item in enumerate(raw["terms"], start=1):
        term = ConjunctionTerm(frozenset(item["members"]))
        terms.append(term)
        values[term] = _prevision(item, f"terms[{i}]")
    max_atoms = raw.get("options", {}).get("max_atoms")
    return AssessmentProblem(atoms, conditionals, tuple(terms), PrevisionMap(values), max_atoms=max_atoms)


def problem_to_document(problem: AssessmentProblem, mode: Optional[str] = None) -> Dict[str, Any]:
    """Inverse of :func:`document_to_problem`."""
    family = set(problem.terms)
    doc: Dict[str, Any] = {
        "atoms": [a.name for a in problem.atoms],
        "conditionals": [
            {"consequent": render_formula(c.consequent), "antecedent": render_formula(c.antecedent)}
            for c in problem.conditionals
        ],
        "terms": [
            {"members": list(t.sorted_members), "prevision": format_rational(problem.previsions[t])}
            for t in problem.terms
        ],
    }
    auxiliary = [
        {"members": list(t.sorted_members), "prevision": format_rational(v)}
        for t, v in problem.previsions.sorted_items()
        if t not in family
    ]
    if auxiliary:
        doc["auxiliary"] = auxiliary
    options: Dict[str, Any] = {}
    if mode is not None:
        options["mode"] = mode
    if problem.max_atoms is not None:
        options["max_atoms"] = problem.max_atoms
    if options:
        doc["options"] = options
    return doc


def read_document(path: str | Path) -> Dict[str, Any]:
    """Load and validate a document; undecodable or non-JSON files raise :class:`InputError`."""
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not UTF-8 text: {exc.reason} at byte {exc.start}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    validate_document(raw)
    return raw


def read_problem(path: str | Path) -> AssessmentProblem:
    return document_to_problem(read_document(path))


def write_document(path: str | Path, problem: AssessmentProblem, mode: Optional[str] = None) -> None:
    payload = problem_to_document(problem, mode)
    Path(path).write_text(json.dumps(payload, indent=2), encoding="utf-8")


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def dumps_report(report: Mapping[str, Any]) -> str:
    """Stable-key JSON text of a report."""
    return json.dumps(report, indent=2, sort_keys=True)


def write_report(path: str | Path, report: Mapping[str, Any]) -> None:
    payload = {"created_at_utc": _utc_now_iso(), "report": dict(report)}
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(payload, indent=2, sort_keys=True), encoding="utf-8")


def read_report(path: str | Path) -> Dict[str, Any]:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    return raw.get("report", {}) or {}
