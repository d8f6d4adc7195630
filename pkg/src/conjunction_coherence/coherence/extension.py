"""
Coherent extension of an assessment to one more conjunction term.

The coherent values of the new prevision form a closed interval. Its
candidate endpoints come from a linear-fractional program over the first
level of the recursive check (solved exactly after the Charnes-Cooper
change of variables); each endpoint is then certified by full coherence
checks at the endpoint and just outside it. If a certificate fails, the
endpoint is located by exact rational bisection instead.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from ..config import EXTENSION_EPSILON
from ..crq import TermLike, as_term, conjunction_value
from ..errors import SimplexError, StateError
from ..logic.constituents import CaseTag
from ..rationals import RationalLike, format_rational, to_fraction
from .engine import check_coherence
from .models import AssessmentProblem, ExtensionResult
from .simplex import RationalSimplex

logger = logging.getLogger(__name__)

_ZERO = Fraction(0)
_ONE = Fraction(1)
_GRID_DENOMINATOR = 64


def _lp_bracket(base: AssessmentProblem, target) -> Optional[Tuple[Fraction, Fraction]]:
    """Min and max of ``sum_{H_T} lambda_h v_h / sum_{H_T} lambda_h`` over ``Sigma``.

    Returns ``None`` when the target antecedent gets zero mass in every
    solution of the base system.
    """
    table = base.constituent_table
    tables = base.value_tables
    mu = base.assessment
    members = target.sorted_members

    columns: List[Tuple[Tuple[Fraction, ...], bool, Fraction]] = []
    for position, constituent in enumerate(table.constituents):
        if constituent.is_zero:
            continue
        base_live = any(
            any(constituent.tags[m - 1] is not CaseTag.VOID for m in term.sorted_members)
            for term in base.terms
        )
        target_live = any(constituent.tags[m - 1] is not CaseTag.VOID for m in members)
        if not (base_live or target_live):
            continue
        q = tuple(vt.rows[position].value for vt in tables)
        v = conjunction_value(target, constituent, base.previsions).value if target_live else _ZERO
        columns.append((q, target_live, v))

    # Variables: w_h for each column, then t.
    A: List[List[Fraction]] = []
    b: List[Fraction] = []
    for i, mu_i in enumerate(mu):
        A.append([q[i] for q, _, _ in columns] + [-mu_i])
        b.append(_ZERO)
    A.append([_ONE] * len(columns) + [-_ONE])
    b.append(_ZERO)
    A.append([_ONE if live else _ZERO for _, live, _ in columns] + [_ZERO])
    b.append(_ONE)

    lp = RationalSimplex(A, b)
    if not lp.find_feasible().feasible:
        return None
    objective = [v if live else _ZERO for _, live, v in columns] + [_ZERO]
    try:
        upper = lp.maximize(objective).value
        lower = -lp.maximize([-c for c in objective]).value
    except SimplexError as exc:
        raise StateError(f"Extension bracket LP failed: {exc}") from exc
    return lower, upper


def _edge(
    ok: Callable[[Fraction], bool],
    bad: Fraction,
    good: Fraction,
    epsilon: Fraction,
    candidates: Iterable[Fraction],
) -> Fraction:
    """Coherent point within *epsilon* of the boundary between *bad* and *good*.

    Candidates lying between the two are tried first, nearest to *bad* first.
    """
    lo, hi = min(bad, good), max(bad, good)
    between = sorted((c for c in candidates if lo < c < hi), key=lambda c: abs(c - bad))
    for c in between:
        if ok(c):
            good = c
            break
        bad = c
    step = epsilon if good > bad else -epsilon
    outside = good - step
    if abs(good - bad) <= epsilon or not ok(outside):
        return good
    bad_side = bad
    good = outside
    while abs(good - bad_side) > epsilon:
        mid = (good + bad_side) / 2
        if ok(mid):
            good = mid
        else:
            bad_side = mid
    return good


def extension_interval(
    problem: AssessmentProblem,
    target: TermLike,
    candidates: Optional[Iterable[RationalLike]] = None,
    epsilon: Fraction = EXTENSION_EPSILON,
) -> ExtensionResult:
    """Interval of coherent previsions for *target* given the rest of *problem*.

    If *target* is already assessed in *problem* its value is ignored.

    Args:
        candidates: Closed-form endpoint guesses; they are verified, never trusted.
        epsilon: Certification offset and bisection accuracy.

    Raises:
        StateError: if the base assessment is not coherent.
        InputError: if a sub-prevision the target needs is missing.
    """
    target = as_term(target)
    candidates = list(candidates or ())
    base = problem.without_term(target) if target in problem.terms else problem
    verdict = check_coherence(base)
    if not verdict.coherent:
        raise StateError(
            "Cannot extend an incoherent assessment"
            + (f": {verdict.witness.describe()}" if verdict.witness else "")
        )

    probes: Dict[Fraction, bool] = {}

    def ok(value: Fraction) -> bool:
        if value not in probes:
            probes[value] = check_coherence(base.with_assessment(target, value)).coherent
            logger.debug("Probe %s=%s: %s", target.label, format_rational(value), probes[value])
        return probes[value]

    hints = sorted(set(_unit_values(candidates)))
    bracket = _lp_bracket(base, target)
    lower, upper = bracket if bracket is not None else (_ZERO, _ONE)
    logger.info("Bracket for %s: [%s, %s]", target.label, format_rational(lower), format_rational(upper))

    exact = ok(lower) and ok(upper)
    if exact:
        below, above = lower - epsilon, upper + epsilon
        if below >= 0 and ok(below):
            exact = False
            lower = _ZERO if ok(_ZERO) else _edge(ok, _ZERO, below, epsilon, hints)
        if above <= 1 and ok(above):
            exact = False
            upper = _ONE if ok(_ONE) else _edge(ok, _ONE, above, epsilon, hints)
        if not exact:
            logger.warning("Bracket for %s was not tight; refined by bisection", target.label)
    else:
        anchor = _anchor(ok, lower, upper, hints)
        if not ok(lower):
            lower = _edge(ok, lower, anchor, epsilon, hints)
        if not ok(upper):
            upper = _edge(ok, upper, anchor, epsilon, hints)

    return ExtensionResult(
        target=target,
        lower=lower,
        upper=upper,
        exact=exact,
        method="lp-bracket" if exact else "bisection",
        tolerance=_ZERO if exact else epsilon,
        probes=sorted(probes.items()),
    )


def _unit_values(candidates: Optional[Iterable[RationalLike]]) -> List[Fraction]:
    values = [to_fraction(c) for c in (candidates or ())]
    return [v for v in values if 0 <= v <= 1]


def _anchor(
    ok: Callable[[Fraction], bool],
    lower: Fraction,
    upper: Fraction,
    hints: List[Fraction],
) -> Fraction:
    """A coherent value, searched among the hints and a dyadic grid."""
    grid = [lower + (upper - lower) * Fraction(k, _GRID_DENOMINATOR) for k in range(_GRID_DENOMINATOR + 1)]
    full = [Fraction(k, _GRID_DENOMINATOR) for k in range(_GRID_DENOMINATOR + 1)]
    for value in [*hints, (lower + upper) / 2, *grid, *full]:
        if ok(value):
            return value
    raise StateError("No coherent value found for the extension; the base assessment may be degenerate")
