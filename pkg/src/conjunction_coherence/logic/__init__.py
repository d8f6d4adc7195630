"""
Events, conditional events and constituents.

- :class:`Atom` / :class:`EventExpr` -- Boolean formulas over named atoms
- :class:`ConditionalEvent` -- the three-valued ``A|H``
- :func:`enumerate_constituents` -- the constituents ``C0..Cm`` of a family
- :func:`parse_formula` / :func:`render_formula` -- the document grammar
"""

from .constituents import (
    CaseTag,
    Constituent,
    ConstituentTable,
    constituent_label,
    enumerate_constituents,
)
from .models import (
    FALSE,
    TRUE,
    And,
    Atom,
    AtomRef,
    ConditionalEvent,
    Const,
    EventExpr,
    Not,
    Or,
    conj,
    disj,
    evaluate,
    is_satisfiable,
    iter_assignments,
    logically_independent,
    make_atoms,
    realized_patterns,
)
from .parser import parse_formula, render_formula

__all__ = [
    "And",
    "Atom",
    "AtomRef",
    "CaseTag",
    "ConditionalEvent",
    "Const",
    "Constituent",
    "ConstituentTable",
    "EventExpr",
    "FALSE",
    "Not",
    "Or",
    "TRUE",
    "conj",
    "constituent_label",
    "disj",
    "enumerate_constituents",
    "evaluate",
    "is_satisfiable",
    "iter_assignments",
    "logically_independent",
    "make_atoms",
    "parse_formula",
    "realized_patterns",
    "render_formula",
]
