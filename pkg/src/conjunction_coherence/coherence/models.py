"""
Data models for the coherence engine.

- :class:`AssessmentProblem` -- a family of conjunction terms with assessed
  previsions (plus auxiliary sub-previsions their value tables need)
- :class:`SigmaSystem` -- the linear system whose solvability says the
  assessment lies in the convex hull of the points ``Q_h``
- :class:`CoherenceVerdict` -- the outcome of the recursive check, with a
  feasible ``Lambda`` per level or a separating hyperplane
- :class:`ExtensionResult` -- coherent extension bounds for one more term
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from ..crq import (
    ConjunctionTerm,
    PrevisionMap,
    TermLike,
    ValueTable,
    as_term,
    conjunction_value_table,
)
from ..errors import InputError
from ..logic.constituents import ConstituentTable, enumerate_constituents
from ..logic.models import Atom, ConditionalEvent, make_atoms
from ..logic.parser import parse_formula
from ..rationals import RationalLike, format_rational


# ---------------------------------------------------------------------------
# Assessment problem
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AssessmentProblem:
    """An assessment ``M`` on a family ``F`` of conjunction terms.

    Attributes:
        atoms: Declared atoms; every formula may only use these.
        conditionals: The conditional events ``E_i|H_i`` (1-based in terms).
        terms: The assessed family, in order; ``M`` follows this order.
        previsions: Prevision of every term plus any auxiliary
            sub-conjunction previsions the value tables need.
        max_atoms: Optional override of the enumeration cap.
    """

    atoms: Tuple[Atom, ...]
    conditionals: Tuple[ConditionalEvent, ...]
    terms: Tuple[ConjunctionTerm, ...]
    previsions: PrevisionMap
    max_atoms: Optional[int] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "atoms", tuple(self.atoms))
        object.__setattr__(self, "conditionals", tuple(self.conditionals))
        object.__setattr__(self, "terms", tuple(as_term(t) for t in self.terms))
        if not isinstance(self.previsions, PrevisionMap):
            object.__setattr__(self, "previsions", PrevisionMap(self.previsions))
        self._validate()

    def _validate(self) -> None:
        names = [a.name for a in self.atoms]
        if len(set(names)) != len(names):
            raise InputError(f"Duplicate atom names in {names}")
        if not self.conditionals:
            raise InputError("The problem has no conditional events")
        if not self.terms:
            raise InputError("The problem has no assessed terms")
        declared = set(names)
        for i, conditional in enumerate(self.conditionals, start=1):
            undeclared = conditional.atom_names() - declared
            if undeclared:
                raise InputError(f"Conditional {i} uses undeclared atoms {sorted(undeclared)}")
        if len(set(self.terms)) != len(self.terms):
            raise InputError("The assessed family lists the same term twice")
        n = len(self.conditionals)
        for term in self.terms:
            bad = [i for i in term.sorted_members if i > n]
            if bad:
                raise InputError(f"Term {term.label} references conditional(s) {bad}; there are {n}")
            self.previsions.require(term)
            if len(term) > 1:
                for i in term.sorted_members:
                    if ConjunctionTerm.of(i) not in self.previsions:
                        raise InputError(
                            f"Term {term.label} needs the prevision of its member C{i}"
                        )
        # Building the value tables reports any missing sub-prevision.
        self.value_tables  # noqa: B018

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def build(
        cls,
        atoms: Sequence[str],
        conditionals: Sequence[Tuple[str, str]],
        assessment: Mapping[TermLike, RationalLike],
        auxiliary: Optional[Mapping[TermLike, RationalLike]] = None,
        max_atoms: Optional[int] = None,
    ) -> "AssessmentProblem":
        """Build a problem from atom names, ``(consequent, antecedent)`` formula
        strings and an ordered ``{members: prevision}`` assessment."""
        atom_objs = make_atoms(atoms)
        events = tuple(
            ConditionalEvent(
                parse_formula(consequent, atom_objs),
                parse_formula(antecedent, atom_objs),
                name=f"conditional {i}",
            )
            for i, (consequent, antecedent) in enumerate(conditionals, start=1)
        )
        terms = tuple(as_term(key) for key in assessment)
        values: Dict[TermLike, RationalLike] = dict(auxiliary or {})
        for key, value in assessment.items():
            values[as_term(key)] = value
        return cls(atom_objs, events, terms, PrevisionMap(values), max_atoms=max_atoms)

    def with_assessment(self, term: TermLike, value: RationalLike) -> "AssessmentProblem":
        """Copy of the problem with *term* assessed at *value* (appended if new)."""
        term = as_term(term)
        terms = self.terms if term in self.terms else self.terms + (term,)
        return AssessmentProblem(
            self.atoms,
            self.conditionals,
            terms,
            self.previsions.with_value(term, value),
            max_atoms=self.max_atoms,
        )

    def without_term(self, term: TermLike) -> "AssessmentProblem":
        """Copy of the problem with *term* removed from the family.

        Its prevision is dropped too unless a remaining term strictly contains
        it, since that term's value table reads it where only *term* is void.
        """
        term = as_term(term)
        terms = tuple(t for t in self.terms if t != term)
        previsions = self.previsions
        if not any(term.members < t.members for t in terms):
            previsions = PrevisionMap({t: v for t, v in self.previsions.items() if t != term})
        return AssessmentProblem(self.atoms, self.conditionals, terms, previsions, max_atoms=self.max_atoms)

    # ------------------------------------------------------------------
    # Derived data
    # ------------------------------------------------------------------

    @cached_property
    def constituent_table(self) -> ConstituentTable:
        return enumerate_constituents(self.conditionals, self.atoms, self.max_atoms)

    @cached_property
    def value_tables(self) -> Tuple[ValueTable, ...]:
        return tuple(
            conjunction_value_table(term, self.constituent_table, self.previsions)
            for term in self.terms
        )

    @property
    def assessment(self) -> Tuple[Fraction, ...]:
        """The vector ``M`` in family order."""
        return tuple(self.previsions[t] for t in self.terms)

    def term_index(self, term: TermLike) -> int:
        term = as_term(term)
        try:
            return self.terms.index(term)
        except ValueError:
            known = [t.label for t in self.terms]
            raise InputError(f"No term {term.label} in the family. Known: {known}") from None


# ---------------------------------------------------------------------------
# System (Sigma)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SigmaSystem:
    """``sum_h lambda_h Q_h = M``, ``sum_h lambda_h = 1``, ``lambda >= 0``.

    Rows follow ``term_indices`` (positions into the problem's family);
    columns are the constituents (by index ``h``) lying in the union of the
    antecedents of those terms. ``antecedent`` flags, per row and column,
    whether the constituent lies in that term's antecedent.
    """

    term_indices: Tuple[int, ...]
    terms: Tuple[ConjunctionTerm, ...]
    constituents: Tuple[int, ...]
    matrix: Tuple[Tuple[Fraction, ...], ...]
    target: Tuple[Fraction, ...]
    antecedent: Tuple[Tuple[bool, ...], ...]

    def row_of(self, term_index: int) -> int:
        try:
            return self.term_indices.index(term_index)
        except ValueError:
            raise InputError(f"Term index {term_index} is not part of this system") from None

    def column(self, position: int) -> Tuple[Fraction, ...]:
        return tuple(row[position] for row in self.matrix)

    def equality_form(self) -> Tuple[List[List[Fraction]], List[Fraction]]:
        """``(A, b)`` with the normalisation row appended last."""
        A = [list(row) for row in self.matrix]
        A.append([Fraction(1)] * len(self.constituents))
        b = list(self.target) + [Fraction(1)]
        return A, b

    def is_solution(self, weights: Mapping[int, Fraction]) -> bool:
        """Exact check that *weights* (constituent -> lambda) solve the system."""
        lam = [Fraction(weights.get(h, 0)) for h in self.constituents]
        if any(v < 0 for v in lam) or sum(lam) != 1:
            return False
        return all(
            sum((a * v for a, v in zip(row, lam)), Fraction(0)) == mu
            for row, mu in zip(self.matrix, self.target)
        )


@dataclass(frozen=True)
class SeparatingHyperplane:
    """Infeasibility witness ``f(P) = sum_i a_i P_i + c``.

    ``f(Q_h) <= 0`` for every column of the system and ``f(M) = margin > 0``,
    so ``M`` is outside the convex hull of the ``Q_h``.
    """

    terms: Tuple[ConjunctionTerm, ...]
    coefficients: Tuple[Fraction, ...]
    constant: Fraction
    margin: Fraction

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * p for a, p in zip(self.coefficients, point)), self.constant)

    def separates(self, system: SigmaSystem) -> bool:
        columns_ok = all(
            self.evaluate(system.column(k)) <= 0 for k in range(len(system.constituents))
        )
        return columns_ok and self.evaluate(system.target) > 0

    def describe(self) -> str:
        parts = [
            f"{format_rational(a)}*{t.label}" for a, t in zip(self.coefficients, self.terms) if a
        ]
        parts.append(format_rational(self.constant))
        return " + ".join(parts) + f" <= 0 on every Q_h but equals {format_rational(self.margin)} at M"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "coefficients": {
                t.label: format_rational(a) for a, t in zip(self.coefficients, self.terms)
            },
            "constant": format_rational(self.constant),
            "margin": format_rational(self.margin),
            "description": self.describe(),
        }


# ---------------------------------------------------------------------------
# Verdicts
# ---------------------------------------------------------------------------

def _terms_dict(terms: Iterable[ConjunctionTerm]) -> List[List[int]]:
    return [list(t.sorted_members) for t in terms]


@dataclass
class LevelRecord:
    """One level of the recursive check.

    Attributes:
        level: ``0`` for the full family.
        term_indices: Positions (into the problem's family) checked here.
        feasible: Whether the level's system is solvable.
        solution: Constituent index -> ``lambda_h`` when feasible.
        zero_set: ``I0`` -- the positions whose antecedent gets zero mass
            in every solution.
        witness: Separating hyperplane when infeasible.
    """

    level: int
    term_indices: Tuple[int, ...]
    terms: Tuple[ConjunctionTerm, ...]
    feasible: bool
    solution: Optional[Dict[int, Fraction]] = None
    zero_set: Tuple[int, ...] = ()
    witness: Optional[SeparatingHyperplane] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "level": self.level,
            "terms": _terms_dict(self.terms),
            "feasible": self.feasible,
            "zero_set": [i + 1 for i in self.zero_set],
        }
        if self.solution is not None:
            data["lambda"] = {
                f"C{h}": format_rational(v) for h, v in sorted(self.solution.items()) if v
            }
        if self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


@dataclass
class CoherenceVerdict:
    """Outcome of :func:`~conjunction_coherence.coherence.engine.check_coherence`.

    ``flagged`` is set when a level's ``I0`` equalled its whole index set and
    the recursion was stopped there.
    """

    coherent: bool
    levels: List[LevelRecord] = field(default_factory=list)
    flagged: bool = False

    @property
    def certificate(self) -> List[Dict[int, Fraction]]:
        """One feasible ``Lambda`` per level (empty when incoherent)."""
        if not self.coherent:
            return []
        return [lvl.solution for lvl in self.levels if lvl.solution is not None]

    @property
    def witness(self) -> Optional[SeparatingHyperplane]:
        if self.coherent or not self.levels:
            return None
        return self.levels[-1].witness

    @property
    def recursion_trace(self) -> List[Tuple[int, Tuple[int, ...]]]:
        return [(lvl.level, lvl.zero_set) for lvl in self.levels]

    def __bool__(self) -> bool:
        return self.coherent

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "coherent": self.coherent,
            "recursion_trace": [
                {"level": level, "zero_set": [i + 1 for i in zero]}
                for level, zero in self.recursion_trace
            ],
            "levels": [lvl.to_dict() for lvl in self.levels],
            "flagged": self.flagged,
        }
        if self.coherent:
            data["certificate"] = [lvl["lambda"] for lvl in data["levels"] if "lambda" in lvl]
        elif self.witness is not None:
            data["witness"] = self.witness.to_dict()
        return data


@dataclass
class ExtensionResult:
    """Coherent extension interval ``[lower, upper]`` for one more term.

    ``exact`` is true when both endpoints come from the exact LP bracket and
    were certified by full coherence checks; bisection results are accurate
    to ``tolerance``.
    """

    target: ConjunctionTerm
    lower: Fraction
    upper: Fraction
    exact: bool
    method: str
    tolerance: Fraction = Fraction(0)
    probes: List[Tuple[Fraction, bool]] = field(default_factory=list)

    def contains(self, value: RationalLike) -> bool:
        from ..rationals import to_fraction

        return self.lower <= to_fraction(value) <= self.upper

    def to_dict(self) -> Dict[str, Any]:
        return {
            "target": list(self.target.sorted_members),
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "exact": self.exact,
            "method": self.method,
            "tolerance": format_rational(self.tolerance),
            "probes": [
                {"value": format_rational(v), "coherent": ok} for v, ok in self.probes
            ],
        }
