"""
Recursive coherence check for prevision assessments on conjunctions.

An assessment ``M`` on a family ``F`` is coherent iff

1. the system ``Sigma`` (``M`` as a convex combination of the points ``Q_h``
   of the constituents in the union of the antecedents) is solvable, and
2. the sub-assessment on ``I0`` -- the terms whose antecedent receives zero
   mass in *every* solution -- is coherent in turn.

Each level is decided by an exact rational simplex, so verdicts at the
boundary of the coherence region are never flipped by rounding.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from ..errors import InputError, StateError
from ..logic.constituents import CaseTag
from .models import (
    AssessmentProblem,
    CoherenceVerdict,
    LevelRecord,
    SeparatingHyperplane,
    SigmaSystem,
)
from .simplex import RationalSimplex

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Building the system
# ---------------------------------------------------------------------------

def build_sigma(problem: AssessmentProblem, term_indices: Optional[Sequence[int]] = None) -> SigmaSystem:
    """Assemble ``Sigma`` for the terms at *term_indices* (0-based; all by default).

    Columns are the constituents on which at least one selected term is not
    void; ``C0`` is never a column.
    """
    if term_indices is None:
        term_indices = range(len(problem.terms))
    indices = tuple(term_indices)
    if not indices:
        raise InputError("Cannot build a system for an empty set of terms")
    for i in indices:
        if not 0 <= i < len(problem.terms):
            raise InputError(f"Term index {i} out of range for a family of {len(problem.terms)}")

    tables = [problem.value_tables[i] for i in indices]
    terms = tuple(problem.terms[i] for i in indices)
    constituents = problem.constituent_table.constituents

    columns: List[int] = []
    antecedent_cols: List[Tuple[bool, ...]] = []
    values_cols: List[Tuple[Fraction, ...]] = []
    for position, constituent in enumerate(constituents):
        if constituent.is_zero:
            continue
        flags = tuple(
            any(constituent.tags[m - 1] is not CaseTag.VOID for m in term.sorted_members)
            for term in terms
        )
        if not any(flags):
            continue
        columns.append(constituent.index)
        antecedent_cols.append(flags)
        values_cols.append(tuple(table.rows[position].value for table in tables))

    matrix = tuple(tuple(col[r] for col in values_cols) for r in range(len(terms)))
    antecedent = tuple(tuple(col[r] for col in antecedent_cols) for r in range(len(terms)))
    target = tuple(problem.previsions[t] for t in terms)
    logger.debug("System for %s: %d rows x %d columns", [t.label for t in terms], len(terms), len(columns))
    return SigmaSystem(indices, terms, tuple(columns), matrix, target, antecedent)


class _SigmaSolver:
    """Feasibility plus antecedent-mass LPs over one system, sharing phase one."""

    def __init__(self, system: SigmaSystem) -> None:
        self.system = system
        A, b = system.equality_form()
        self.lp = RationalSimplex(A, b)

    def solve(self) -> Tuple[bool, Union[Dict[int, Fraction], SeparatingHyperplane]]:
        result = self.lp.find_feasible()
        if result.feasible:
            assert result.x is not None
            return True, dict(zip(self.system.constituents, result.x))
        assert result.farkas is not None
        y = result.farkas
        coefficients = tuple(y[:-1])
        constant = y[-1]
        margin = sum((a * mu for a, mu in zip(coefficients, self.system.target)), constant)
        witness = SeparatingHyperplane(self.system.terms, coefficients, constant, margin)
        return False, witness

    def max_mass(self, row: int) -> Tuple[Fraction, List[Fraction]]:
        c = [_ONE if flag else _ZERO for flag in self.system.antecedent[row]]
        optimum = self.lp.maximize(c)
        return optimum.value, optimum.x


def feasible(system: SigmaSystem) -> Tuple[bool, Union[Dict[int, Fraction], SeparatingHyperplane]]:
    """Decide ``Sigma``.

    Returns:
        ``(True, Lambda)`` with ``Lambda`` mapping constituent index to weight,
        or ``(False, witness)`` with a separating hyperplane.
    """
    return _SigmaSolver(system).solve()


def max_antecedent_mass(system: SigmaSystem, term_index: int) -> Fraction:
    """``max sum_{C_h in H_i} lambda_h`` over the solutions of *system*.

    Raises:
        StateError: if the system has no solution.
    """
    solver = _SigmaSolver(system)
    ok, _ = solver.solve()
    if not ok:
        raise StateError("Antecedent mass is undefined for an unsolvable system")
    value, _ = solver.max_mass(system.row_of(term_index))
    return value


def _masses(system: SigmaSystem, weights: Sequence[Fraction]) -> List[Fraction]:
    return [
        sum((w for w, flag in zip(weights, flags) if flag), _ZERO)
        for flags in system.antecedent
    ]


def _zero_set(solver: _SigmaSolver, weights: Sequence[Fraction]) -> Tuple[int, ...]:
    """Rows of ``I0``; rows already shown positive by some solution skip their LP."""
    system = solver.system
    positive: Set[int] = {r for r, m in enumerate(_masses(system, weights)) if m > 0}
    for row in range(len(system.terms)):
        if row in positive:
            continue
        value, x = solver.max_mass(row)
        if value > 0:
            positive.update(r for r, m in enumerate(_masses(system, x)) if m > 0)
    return tuple(system.term_indices[r] for r in range(len(system.terms)) if r not in positive)


# ---------------------------------------------------------------------------
# Recursive check
# ---------------------------------------------------------------------------

def check_sub_assessment(problem: AssessmentProblem, term_indices: Sequence[int]) -> CoherenceVerdict:
    """Run the recursive check starting from the terms at *term_indices*."""
    indices = tuple(sorted(set(term_indices)))
    verdict = CoherenceVerdict(coherent=False)
    level = 0
    while True:
        system = build_sigma(problem, indices)
        solver = _SigmaSolver(system)
        ok, outcome = solver.solve()
        if not ok:
            assert isinstance(outcome, SeparatingHyperplane)
            logger.info("Level %d infeasible: %s", level, outcome.describe())
            verdict.levels.append(LevelRecord(level, indices, system.terms, False, witness=outcome))
            verdict.coherent = False
            return verdict

        assert isinstance(outcome, dict)
        weights = [outcome[h] for h in system.constituents]
        zero = _zero_set(solver, weights)
        verdict.levels.append(LevelRecord(level, indices, system.terms, True, outcome, zero))
        logger.debug("Level %d feasible, I0 = %s", level, [i + 1 for i in zero])
        if not zero:
            verdict.coherent = True
            return verdict
        if set(zero) == set(indices):
            # Unreachable for a solvable system: the normalisation row puts
            # positive mass on some column, which lies in some antecedent.
            logger.warning("Level %d: I0 equals the whole index set; stopping", level)
            verdict.coherent = True
            verdict.flagged = True
            return verdict
        indices = zero
        level += 1


def check_coherence(problem: AssessmentProblem) -> CoherenceVerdict:
    """Decide whether the assessment of *problem* is coherent.

    The verdict carries one feasible ``Lambda`` per level when coherent, or a
    separating hyperplane for the failing level otherwise.
    """
    verdict = check_sub_assessment(problem, range(len(problem.terms)))
    logger.info(
        "Assessment on %s is %s after %d level(s)",
        [t.label for t in problem.terms],
        "coherent" if verdict.coherent else "not coherent",
        len(verdict.levels),
    )
    return verdict
