"""
Boolean event expressions and conditional events.

Events are Boolean formulas over named atoms. They are immutable and
hashable, so they can key dictionaries and be shared between problems.
Python's ``&``, ``|`` and ``~`` operators build compound events::

    A, H = AtomRef("A"), AtomRef("H")
    event = A & ~H
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from ..config import DEFAULT_MAX_ATOMS
from ..errors import CapacityError, InputError

_IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
RESERVED_NAMES = frozenset({"TRUE", "FALSE"})


# ---------------------------------------------------------------------------
# Atoms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    """A named primitive event such as ``A``, ``H`` or ``E1``."""

    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not _IDENTIFIER_RE.fullmatch(self.name):
            raise InputError(f"Atom name must be a non-empty identifier, got {self.name!r}")
        if self.name in RESERVED_NAMES:
            raise InputError(f"Atom name {self.name!r} is reserved")

    def ref(self) -> "AtomRef":
        return AtomRef(self.name)


def make_atoms(names: Iterable[str]) -> Tuple[Atom, ...]:
    """Build atoms from names, rejecting duplicates."""
    atoms: List[Atom] = []
    seen: set = set()
    for name in names:
        if name in seen:
            raise InputError(f"Duplicate atom name {name!r}")
        seen.add(name)
        atoms.append(Atom(name))
    return tuple(atoms)


# ---------------------------------------------------------------------------
# Expression tree
# ---------------------------------------------------------------------------

class EventExpr:
    """Base class of the event expression tree."""

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        raise NotImplementedError

    def atom_names(self) -> FrozenSet[str]:
        raise NotImplementedError

    def __and__(self, other: "EventExpr") -> "EventExpr":
        return And((self, other))

    def __or__(self, other: "EventExpr") -> "EventExpr":
        return Or((self, other))

    def __invert__(self) -> "EventExpr":
        return Not(self)


@dataclass(frozen=True)
class Const(EventExpr):
    value: bool

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        return self.value

    def atom_names(self) -> FrozenSet[str]:
        return frozenset()


TRUE = Const(True)
FALSE = Const(False)


@dataclass(frozen=True)
class AtomRef(EventExpr):
    name: str

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        try:
            return bool(assignment[self.name])
        except KeyError:
            raise InputError(f"Unknown atom {self.name!r} in assignment") from None

    def atom_names(self) -> FrozenSet[str]:
        return frozenset((self.name,))


@dataclass(frozen=True)
class Not(EventExpr):
    operand: EventExpr

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        return not self.operand.evaluate(assignment)

    def atom_names(self) -> FrozenSet[str]:
        return self.operand.atom_names()


@dataclass(frozen=True)
class And(EventExpr):
    operands: Tuple[EventExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise InputError("Conjunction needs at least two operands")

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        # Evaluate every operand so unknown atoms are always reported.
        results = [op.evaluate(assignment) for op in self.operands]
        return all(results)

    def atom_names(self) -> FrozenSet[str]:
        return frozenset().union(*(op.atom_names() for op in self.operands))


@dataclass(frozen=True)
class Or(EventExpr):
    operands: Tuple[EventExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "operands", tuple(self.operands))
        if len(self.operands) < 2:
            raise InputError("Disjunction needs at least two operands")

    def evaluate(self, assignment: Mapping[str, bool]) -> bool:
        results = [op.evaluate(assignment) for op in self.operands]
        return any(results)

    def atom_names(self) -> FrozenSet[str]:
        return frozenset().union(*(op.atom_names() for op in self.operands))


def conj(*operands: EventExpr) -> EventExpr:
    """Conjunction of any number of events (``TRUE`` when empty)."""
    if not operands:
        return TRUE
    if len(operands) == 1:
        return operands[0]
    return And(tuple(operands))


def disj(*operands: EventExpr) -> EventExpr:
    """Disjunction of any number of events (``FALSE`` when empty)."""
    if not operands:
        return FALSE
    if len(operands) == 1:
        return operands[0]
    return Or(tuple(operands))


# ---------------------------------------------------------------------------
# Truth-table operations
# ---------------------------------------------------------------------------

def evaluate(expr: EventExpr, assignment: Mapping[str, bool]) -> bool:
    """Evaluate *expr* under *assignment* (atom name -> truth value)."""
    return expr.evaluate(assignment)


def _names(atoms: Sequence[Atom | str]) -> List[str]:
    return [a.name if isinstance(a, Atom) else a for a in atoms]


def iter_assignments(
    atoms: Sequence[Atom | str],
    max_atoms: Optional[int] = None,
) -> Iterator[Dict[str, bool]]:
    """Yield every assignment over *atoms* in canonical order.

    The order is lexicographic on the assignment vector with ``False < True``
    and atoms in the given order.
    """
    names = _names(atoms)
    cap = DEFAULT_MAX_ATOMS if max_atoms is None else max_atoms
    if len(names) > cap:
        raise CapacityError(
            f"{len(names)} atoms exceed the enumeration cap of {cap}; "
            "raise it with max_atoms or COHERENCE_MAX_ATOMS"
        )
    for values in product((False, True), repeat=len(names)):
        yield dict(zip(names, values))


def _check_covered(expr: EventExpr, names: Sequence[str]) -> None:
    missing = expr.atom_names() - set(names)
    if missing:
        raise InputError(f"Undeclared atoms in formula: {sorted(missing)}")


def is_satisfiable(
    expr: EventExpr,
    atoms: Sequence[Atom | str],
    max_atoms: Optional[int] = None,
) -> bool:
    """Decide satisfiability by exhaustive enumeration over ``2**len(atoms)``."""
    names = _names(atoms)
    _check_covered(expr, names)
    return any(expr.evaluate(a) for a in iter_assignments(names, max_atoms))


def realized_patterns(
    events: Sequence[EventExpr],
    atoms: Sequence[Atom | str],
    max_atoms: Optional[int] = None,
) -> Set[Tuple[bool, ...]]:
    """The truth-value patterns of *events* that some assignment produces."""
    names = _names(atoms)
    for event in events:
        _check_covered(event, names)
    return {
        tuple(e.evaluate(a) for e in events)
        for a in iter_assignments(names, max_atoms)
    }


def logically_independent(
    events: Sequence[EventExpr],
    atoms: Sequence[Atom | str],
    max_atoms: Optional[int] = None,
) -> bool:
    """True iff every conjunction of literals of *events* is satisfiable."""
    return len(realized_patterns(events, atoms, max_atoms)) == 2 ** len(events)


# ---------------------------------------------------------------------------
# Conditional events
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConditionalEvent:
    """The three-valued conditional event ``consequent | antecedent``.

    True when both hold, false when the antecedent holds and the
    consequent does not, void when the antecedent is false.
    """

    consequent: EventExpr
    antecedent: EventExpr
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        names = sorted(self.consequent.atom_names() | self.antecedent.atom_names())
        if not is_satisfiable(self.antecedent, names):
            label = self.name or "conditional event"
            raise InputError(f"Antecedent of {label} is impossible (H = empty set)")

    def atom_names(self) -> FrozenSet[str]:
        return self.consequent.atom_names() | self.antecedent.atom_names()
