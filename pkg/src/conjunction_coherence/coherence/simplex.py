"""
Exact two-phase simplex over :class:`fractions.Fraction`.

Solves equality-form problems ``A x = b, x >= 0``. Pivoting follows Bland's
rule (lowest-index entering column, lowest-index leaving variable on ratio
ties), which guarantees termination without any tolerance.

When phase one ends with a positive artificial sum the duals of the
phase-one problem give a Farkas certificate ``y`` with ``y^T A <= 0`` on
every column and ``y^T b > 0``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from ..config import SIMPLEX_MAX_PIVOTS
from ..errors import InputError, SimplexError

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class FeasibilityResult:
    feasible: bool
    x: Optional[List[Fraction]] = None
    farkas: Optional[List[Fraction]] = None
    pivots: int = 0


@dataclass
class OptimumResult:
    value: Fraction
    x: List[Fraction] = field(default_factory=list)
    pivots: int = 0


class RationalSimplex:
    """Exact simplex solver for one constraint system ``A x = b, x >= 0``.

    Usage::

        lp = RationalSimplex(A, b)
        feasibility = lp.find_feasible()
        if feasibility.feasible:
            best = lp.maximize(c)

    Phase one runs once; every :meth:`maximize` call starts from a copy of
    the feasible basis it found.
    """

    def __init__(
        self,
        A: Sequence[Sequence[Fraction]],
        b: Sequence[Fraction],
        max_pivots: int = SIMPLEX_MAX_PIVOTS,
    ) -> None:
        if len(A) != len(b):
            raise InputError(f"Constraint matrix has {len(A)} rows but b has {len(b)} entries")
        self.n = len(A[0]) if A else 0
        if any(len(row) != self.n for row in A):
            raise InputError("Constraint matrix rows have different lengths")
        self.A = [[Fraction(v) for v in row] for row in A]
        self.b = [Fraction(v) for v in b]
        self.max_pivots = max_pivots
        self._result: Optional[FeasibilityResult] = None
        # Feasible tableau after phase one: rows of length n + 1 (rhs last).
        self._rows: List[List[Fraction]] = []
        self._basis: List[int] = []

    # ------------------------------------------------------------------
    # Pivoting
    # ------------------------------------------------------------------

    @staticmethod
    def _pivot(rows: List[List[Fraction]], cost: List[Fraction], r: int, j: int) -> None:
        pivot_row = rows[r]
        pivot = pivot_row[j]
        if pivot != _ONE:
            rows[r] = pivot_row = [v / pivot for v in pivot_row]
        for i, row in enumerate(rows):
            if i != r:
                factor = row[j]
                if factor:
                    rows[i] = [a - factor * p for a, p in zip(row, pivot_row)]
        factor = cost[j]
        if factor:
            cost[:] = [a - factor * p for a, p in zip(cost, pivot_row)]

    def _run(self, rows: List[List[Fraction]], cost: List[Fraction], basis: List[int]) -> int:
        """Minimize with Bland's rule; ``cost`` holds reduced costs and ``-objective``."""
        pivots = 0
        width = len(cost) - 1
        while True:
            entering = next((j for j in range(width) if cost[j] < 0), None)
            if entering is None:
                return pivots
            leaving = None
            best: Optional[Fraction] = None
            for i, row in enumerate(rows):
                a = row[entering]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                        best, leaving = ratio, i
            if leaving is None:
                raise SimplexError("Linear program is unbounded")
            self._pivot(rows, cost, leaving, entering)
            basis[leaving] = entering
            pivots += 1
            if pivots > self.max_pivots:
                raise SimplexError(f"Simplex exceeded {self.max_pivots} pivots")

    # ------------------------------------------------------------------
    # Phase one
    # ------------------------------------------------------------------

    def find_feasible(self) -> FeasibilityResult:
        """Decide feasibility; return a vertex solution or a Farkas certificate."""
        if self._result is not None:
            return self._result

        m, n = len(self.A), self.n
        signs = [(-1 if bi < 0 else 1) for bi in self.b]
        rows: List[List[Fraction]] = []
        for i in range(m):
            s = signs[i]
            art = [_ZERO] * m
            art[i] = _ONE
            rows.append([s * v for v in self.A[i]] + art + [s * self.b[i]])
        basis = [n + i for i in range(m)]
        cost = [-sum((row[j] for row in rows), _ZERO) for j in range(n)] + [_ZERO] * m
        cost.append(-sum((row[-1] for row in rows), _ZERO))

        pivots = self._run(rows, cost, basis)
        infeasibility = -cost[-1]
        if infeasibility > 0:
            farkas = [signs[i] * (_ONE - cost[n + i]) for i in range(m)]
            logger.debug("Phase one infeasible after %d pivots (residual %s)", pivots, infeasibility)
            self._result = FeasibilityResult(False, farkas=farkas, pivots=pivots)
            return self._result

        # Drive remaining artificial variables out of the basis.
        keep: List[int] = []
        for i in range(m):
            if basis[i] >= n:
                j = next((j for j in range(n) if rows[i][j] != 0), None)
                if j is None:
                    continue  # redundant row
                self._pivot(rows, [_ZERO] * (n + m + 1), i, j)
                basis[i] = j
            keep.append(i)
        self._rows = [rows[i][:n] + [rows[i][-1]] for i in keep]
        self._basis = [basis[i] for i in keep]

        x = self._solution(self._rows, self._basis)
        logger.debug("Phase one feasible after %d pivots", pivots)
        self._result = FeasibilityResult(True, x=x, pivots=pivots)
        return self._result

    def _solution(self, rows: List[List[Fraction]], basis: List[int]) -> List[Fraction]:
        x = [_ZERO] * self.n
        for i, var in enumerate(basis):
            x[var] = rows[i][-1]
        return x

    # ------------------------------------------------------------------
    # Phase two
    # ------------------------------------------------------------------

    def maximize(self, c: Sequence[Fraction]) -> OptimumResult:
        """Maximize ``c^T x`` over the feasible set.

        Raises:
            SimplexError: if the system is infeasible or the objective unbounded.
        """
        if len(c) != self.n:
            raise InputError(f"Objective has {len(c)} coefficients, expected {self.n}")
        feasibility = self.find_feasible()
        if not feasibility.feasible:
            raise SimplexError("Cannot optimize over an infeasible system")

        rows = [list(row) for row in self._rows]
        basis = list(self._basis)
        obj = [-Fraction(v) for v in c]  # minimize -c^T x
        cost = list(obj) + [_ZERO]
        for i, var in enumerate(basis):
            factor = cost[var]
            if factor:
                cost = [a - factor * p for a, p in zip(cost, rows[i])]
        pivots = self._run(rows, cost, basis)
        x = self._solution(rows, basis)
        value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), _ZERO)
        return OptimumResult(value=value, x=x, pivots=pivots)


def find_feasible(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> FeasibilityResult:
    """One-shot feasibility check of ``A x = b, x >= 0``."""
    return RationalSimplex(A, b).find_feasible()


def maximize(
    c: Sequence[Fraction],
    A: Sequence[Sequence[Fraction]],
    b: Sequence[Fraction],
) -> OptimumResult:
    """One-shot maximization of ``c^T x`` subject to ``A x = b, x >= 0``."""
    return RationalSimplex(A, b).maximize(c)
