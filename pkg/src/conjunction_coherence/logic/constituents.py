"""
Constituent enumeration for a family of conditional events.

Truth assignments of the atoms are grouped by the pattern of truth values
they induce on the family: for every conditional event the assignment is
either in its true case, its false case, or its void case. Assignments
with the same pattern are indistinguishable for every conjunction of the
family, so each pattern is one constituent. The pattern with every
conditional void is the distinguished constituent ``C0``.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import InputError
from .models import Atom, ConditionalEvent, iter_assignments

logger = logging.getLogger(__name__)


class CaseTag(enum.Enum):
    """Which of its three cases a conditional event is in."""

    TRUE = "true"    # consequent and antecedent
    FALSE = "false"  # antecedent without consequent
    VOID = "void"    # antecedent false


@dataclass(frozen=True)
class Constituent:
    """One logical constituent of the family.

    Attributes:
        index: ``0`` for ``C0``; ``1..m`` for the constituents inside the
            disjunction of the antecedents, in canonical order.
        tags: One :class:`CaseTag` per conditional event of the family.
        assignments: The satisfying truth assignments grouped here, as
            value tuples in the table's atom order.
    """

    index: int
    tags: Tuple[CaseTag, ...]
    assignments: Tuple[Tuple[bool, ...], ...]

    @property
    def is_zero(self) -> bool:
        return all(tag is CaseTag.VOID for tag in self.tags)

    def tag(self, conditional: int) -> CaseTag:
        return self.tags[conditional]

    def void_members(self, members: Sequence[int]) -> Tuple[int, ...]:
        return tuple(i for i in members if self.tags[i] is CaseTag.VOID)


@dataclass(frozen=True)
class ConstituentTable:
    """All constituents of a family, ``C0`` first when it is nonempty."""

    atoms: Tuple[str, ...]
    family: Tuple[ConditionalEvent, ...]
    constituents: Tuple[Constituent, ...]

    @property
    def zero(self) -> Optional[Constituent]:
        first = self.constituents[0] if self.constituents else None
        return first if first is not None and first.is_zero else None

    @property
    def proper(self) -> Tuple[Constituent, ...]:
        """The constituents ``C1..Cm`` contained in the union of antecedents."""
        return tuple(c for c in self.constituents if not c.is_zero)

    def __len__(self) -> int:
        return len(self.constituents)

    def __iter__(self):
        return iter(self.constituents)


def _case(conditional: ConditionalEvent, assignment: Dict[str, bool]) -> CaseTag:
    if not conditional.antecedent.evaluate(assignment):
        return CaseTag.VOID
    if conditional.consequent.evaluate(assignment):
        return CaseTag.TRUE
    return CaseTag.FALSE


def enumerate_constituents(
    family: Sequence[ConditionalEvent],
    atoms: Optional[Sequence[Atom | str]] = None,
    max_atoms: Optional[int] = None,
) -> ConstituentTable:
    """Enumerate the constituents of *family*.

    Args:
        family: Non-empty list of conditional events.
        atoms: Atoms to enumerate over; defaults to the atoms the family
            references, sorted by name.
        max_atoms: Enumeration cap (default from configuration).

    Returns:
        A :class:`ConstituentTable`; proper constituents are sorted by their
        first assignment vector, ``C0`` (if nonempty) comes first.
    """
    if not family:
        raise InputError("Constituent enumeration needs a non-empty family")
    if atoms is None:
        names = sorted(frozenset().union(*(c.atom_names() for c in family)))
    else:
        names = [a.name if isinstance(a, Atom) else a for a in atoms]
        undeclared = frozenset().union(*(c.atom_names() for c in family)) - set(names)
        if undeclared:
            raise InputError(f"Undeclared atoms in family: {sorted(undeclared)}")

    groups: Dict[Tuple[CaseTag, ...], List[Tuple[bool, ...]]] = {}
    for assignment in iter_assignments(names, max_atoms):
        pattern = tuple(_case(c, assignment) for c in family)
        groups.setdefault(pattern, []).append(tuple(assignment[n] for n in names))

    void_pattern = tuple(CaseTag.VOID for _ in family)
    # Groups are filled in canonical assignment order, so the first vector of
    # each group is its smallest.
    ordered = sorted(
        (p for p in groups if p != void_pattern),
        key=lambda p: groups[p][0],
    )
    constituents: List[Constituent] = []
    if void_pattern in groups:
        constituents.append(Constituent(0, void_pattern, tuple(groups[void_pattern])))
    for h, pattern in enumerate(ordered, start=1):
        constituents.append(Constituent(h, pattern, tuple(groups[pattern])))

    logger.debug(
        "Enumerated %d constituents (C0 %s) over %d atoms",
        len(constituents),
        "present" if void_pattern in groups else "empty",
        len(names),
    )
    return ConstituentTable(tuple(names), tuple(family), tuple(constituents))


def constituent_label(constituent: Constituent, names: Optional[Sequence[str]] = None) -> str:
    """Literal label of *constituent* in the conditional-event vocabulary.

    Conditional ``i`` (1-based, or ``names[i]``) contributes ``EiHi`` when
    true, ``!EiHi`` when false and ``!Hi`` when void, e.g.
    ``"!H1 & !H2 & E3H3"``.
    """
    parts: List[str] = []
    for i, tag in enumerate(constituent.tags):
        suffix = names[i] if names is not None else str(i + 1)
        if tag is CaseTag.TRUE:
            parts.append(f"E{suffix}H{suffix}")
        elif tag is CaseTag.FALSE:
            parts.append(f"!E{suffix}H{suffix}")
        else:
            parts.append(f"!H{suffix}")
    return " & ".join(parts)
