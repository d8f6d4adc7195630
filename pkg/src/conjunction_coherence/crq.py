"""
Conjunctions of conditional events as conditional random quantities.

The conjunction of the conditional events indexed by ``S`` takes, on each
constituent, the value

- ``1`` when every member is true,
- ``0`` when some member is false,
- ``x_V`` otherwise, where ``V`` is the set of void members and ``x_V`` the
  assessed prevision of their conjunction.

On ``C0`` every member is void and the value is the term's own prevision,
which makes ``Q0 = M``. Member indices are 1-based, matching the usual
``C12``/``x12`` notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import InputError
from .logic.constituents import CaseTag, Constituent, ConstituentTable
from .rationals import ONE, ZERO, RationalLike, format_rational, to_unit

if TYPE_CHECKING:
    from .coherence.models import AssessmentProblem


# ---------------------------------------------------------------------------
# Terms and previsions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjunctionTerm:
    """The conjunction of the conditional events with 1-based indices ``members``."""

    members: frozenset

    def __post_init__(self) -> None:
        try:
            members = frozenset(self.members)
        except TypeError:
            raise InputError(f"Term members must be positive integers, got {self.members!r}") from None
        if not members:
            raise InputError("A conjunction term needs at least one member")
        for i in members:
            if isinstance(i, bool) or not isinstance(i, int) or i < 1:
                raise InputError(f"Term members must be positive integers, got {i!r}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, *members: int) -> "ConjunctionTerm":
        return cls(frozenset(members))

    @property
    def sorted_members(self) -> Tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def positions(self) -> Tuple[int, ...]:
        """0-based positions into the conditional-event list."""
        return tuple(i - 1 for i in self.sorted_members)

    @property
    def label(self) -> str:
        """``C12`` style label; members above 9 are comma separated."""
        members = self.sorted_members
        if all(i < 10 for i in members):
            return "C" + "".join(str(i) for i in members)
        return "C{" + ",".join(str(i) for i in members) + "}"

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return self.label


TermLike = Union[ConjunctionTerm, Iterable[int], int]


def as_term(value: TermLike) -> ConjunctionTerm:
    if isinstance(value, ConjunctionTerm):
        return value
    if isinstance(value, int):
        return ConjunctionTerm.of(value)
    return ConjunctionTerm(frozenset(value))


class PrevisionMap(Mapping[ConjunctionTerm, Fraction]):
    """Immutable map from conjunction terms to exact previsions in ``[0, 1]``."""

    def __init__(self, values: Optional[Mapping[TermLike, RationalLike]] = None) -> None:
        self._values: Dict[ConjunctionTerm, Fraction] = {}
        for key, value in (values or {}).items():
            term = as_term(key)
            self._values[term] = to_unit(value, name=f"prevision of {term.label}")

    def __getitem__(self, key: TermLike) -> Fraction:
        return self._values[as_term(key)]

    def __iter__(self) -> Iterator[ConjunctionTerm]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def __contains__(self, key: object) -> bool:
        try:
            return as_term(key) in self._values  # type: ignore[arg-type]
        except (InputError, TypeError):
            return False

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PrevisionMap):
            return self._values == other._values
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"{t.label}: {format_rational(v)}" for t, v in self.sorted_items())
        return f"PrevisionMap({{{inner}}})"

    def require(self, key: TermLike) -> Fraction:
        """Return the prevision of *key*, or raise naming the missing member set."""
        term = as_term(key)
        try:
            return self._values[term]
        except KeyError:
            raise InputError(
                f"Missing prevision for sub-conjunction {term.label} "
                f"(members {list(term.sorted_members)})"
            ) from None

    def with_value(self, key: TermLike, value: RationalLike) -> "PrevisionMap":
        merged: Dict[ConjunctionTerm, RationalLike] = dict(self._values)
        merged[as_term(key)] = value
        return PrevisionMap(merged)

    def sorted_items(self) -> List[Tuple[ConjunctionTerm, Fraction]]:
        return sorted(self._values.items(), key=lambda kv: (len(kv[0]), kv[0].sorted_members))


# ---------------------------------------------------------------------------
# Value tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValueRow:
    """Value of a conjunction on one constituent.

    ``void`` is the set of void members the value was taken from (empty when
    the value is 0 or 1).
    """

    constituent: int
    value: Fraction
    void: Tuple[int, ...] = ()

    @property
    def is_zero_row(self) -> bool:
        return self.constituent == 0


@dataclass(frozen=True)
class ValueTable:
    term: ConjunctionTerm
    rows: Tuple[ValueRow, ...]

    def value(self, constituent: int) -> Fraction:
        for row in self.rows:
            if row.constituent == constituent:
                return row.value
        raise KeyError(f"No constituent {constituent} in the value table of {self.term.label}")

    def as_dict(self) -> Dict[int, Fraction]:
        return {row.constituent: row.value for row in self.rows}


def _check_members(term: ConjunctionTerm, table: ConstituentTable) -> None:
    n = len(table.family)
    bad = [i for i in term.sorted_members if i > n]
    if bad:
        raise InputError(f"Term {term.label} references conditional(s) {bad}; the family has {n}")


def conjunction_value(
    term: ConjunctionTerm,
    constituent: Constituent,
    previsions: Mapping[ConjunctionTerm, Fraction],
) -> ValueRow:
    """Value of the conjunction *term* on a single constituent."""
    void: List[int] = []
    for i in term.sorted_members:
        tag = constituent.tags[i - 1]
        if tag is CaseTag.FALSE:
            return ValueRow(constituent.index, ZERO)
        if tag is CaseTag.VOID:
            void.append(i)
    if not void:
        return ValueRow(constituent.index, ONE)
    sub = ConjunctionTerm(frozenset(void))
    if isinstance(previsions, PrevisionMap):
        value = previsions.require(sub)
    elif sub in previsions:
        value = previsions[sub]
    else:
        raise InputError(f"Missing prevision for sub-conjunction {sub.label} (members {void})")
    return ValueRow(constituent.index, value, tuple(void))


def conjunction_value_table(
    term: TermLike,
    table: ConstituentTable,
    previsions: Mapping[ConjunctionTerm, Fraction],
) -> ValueTable:
    """Value of the conjunction *term* on every constituent of *table*.

    Raises:
        InputError: when the prevision of a needed sub-conjunction is missing.
    """
    term = as_term(term)
    _check_members(term, table)
    rows = tuple(conjunction_value(term, c, previsions) for c in table.constituents)
    return ValueTable(term, rows)


@dataclass(frozen=True)
class QVector:
    """The point ``Q_h`` associated with constituent ``C_h``."""

    constituent: int
    values: Tuple[Fraction, ...]


def q_vectors_for(
    terms: Sequence[ConjunctionTerm],
    table: ConstituentTable,
    previsions: Mapping[ConjunctionTerm, Fraction],
) -> List[QVector]:
    """Stack the value tables of *terms*; ``Q0`` (if any) is first."""
    tables = [conjunction_value_table(t, table, previsions) for t in terms]
    result: List[QVector] = []
    for position, constituent in enumerate(table.constituents):
        values = tuple(vt.rows[position].value for vt in tables)
        result.append(QVector(constituent.index, values))
    return result


def q_vectors(problem: "AssessmentProblem") -> List[QVector]:
    """The points ``Q_h`` of an assessment problem, ``Q0 = M`` first when ``C0`` is nonempty."""
    return q_vectors_for(problem.terms, problem.constituent_table, problem.previsions)
