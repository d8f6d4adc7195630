"""
Closed-form coherence regions and extension bounds.

These predicates decide coherence for the families where the region is
known in closed form, with exact rational arithmetic and no tolerance:

- two logically independent conditionals ``{A|H, B|K, (A|H)&(B|K)}``
- the same consequent ``{A|H, A|K, (A|H)&(A|K)}``, with or without ``HK``
  impossible
- three conditionals with all pairwise and (optionally) the triple conjunction,
  under logical independence or with a common antecedent

They double as the oracle the LP engine is tested against.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .crq import ConjunctionTerm, TermLike, as_term
from .errors import HypothesisError, StateError
from .logic.models import EventExpr, logically_independent, realized_patterns
from .rationals import ONE, ZERO, RationalLike, format_rational, to_fraction
from .tnorm import FitKind, FrankParam, find_lambda, frank, frank_n, t_lukasiewicz, t_min

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bounds:
    """Closed interval ``[lower, upper]``; empty when ``lower > upper``."""

    lower: Fraction
    upper: Fraction

    @property
    def is_empty(self) -> bool:
        return self.lower > self.upper

    def contains(self, value: RationalLike) -> bool:
        return self.lower <= to_fraction(value) <= self.upper

    def to_dict(self) -> Dict[str, Any]:
        return {
            "lower": format_rational(self.lower),
            "upper": format_rational(self.upper),
            "empty": self.is_empty,
        }


def _fractions(*values: RationalLike) -> List[Fraction]:
    return [to_fraction(v) for v in values]


def _in_unit(*values: Fraction) -> bool:
    return all(ZERO <= v <= ONE for v in values)


# ---------------------------------------------------------------------------
# Two conditionals
# ---------------------------------------------------------------------------

def frechet_bounds(x: RationalLike, y: RationalLike) -> Bounds:
    """``[T_L(x, y), T_M(x, y)] = [max(x + y - 1, 0), min(x, y)]``."""
    x, y = _fractions(x, y)
    return Bounds(t_lukasiewicz(x, y), t_min(x, y))


def in_pi_two(x: RationalLike, y: RationalLike, z: RationalLike) -> bool:
    x, y, z = _fractions(x, y, z)
    return _in_unit(x, y) and frechet_bounds(x, y).contains(z)


def same_consequent_region(x: RationalLike, y: RationalLike, z: RationalLike) -> bool:
    """``xy <= z <= min(x, y)``: the region for ``{A|H, A|K, (A|H)&(A|K)}``."""
    x, y, z = _fractions(x, y, z)
    return _in_unit(x, y) and x * y <= z <= min(x, y)


def same_consequent_disjoint(x: RationalLike, y: RationalLike, z: RationalLike) -> bool:
    """``z = xy``: the region when the antecedents are incompatible."""
    x, y, z = _fractions(x, y, z)
    return _in_unit(x, y) and z == x * y


def lambda_range_same_consequent(
    x: RationalLike, y: RationalLike, z: RationalLike
) -> Optional[Tuple[float, float]]:
    """Range of ``t = lambda / (1 + lambda)`` with ``z = T_lambda(x, y)``.

    Returns ``None`` outside the same-consequent region. Inside it the
    parameter always satisfies ``lambda <= 1``, i.e. ``t <= 1/2``.
    """
    if not same_consequent_region(x, y, z):
        return None
    fit = find_lambda(x, y, z)
    if fit.kind is FitKind.UNDERDETERMINED:
        return (0.0, 0.5)
    t = fit.t
    if t is None or t > 0.5 + 1e-12:
        raise StateError(f"Frank parameter {fit.lam} above 1 inside the same-consequent region")
    return (t, t)


# ---------------------------------------------------------------------------
# Three conditionals
# ---------------------------------------------------------------------------

def _pair_conditions(x1, x2, x3, x12, x13, x23) -> List[Tuple[str, bool]]:
    return [
        ("0<=x1<=1", ZERO <= x1 <= ONE),
        ("0<=x2<=1", ZERO <= x2 <= ONE),
        ("0<=x3<=1", ZERO <= x3 <= ONE),
        ("x12>=x1+x2-1", x12 >= x1 + x2 - 1),
        ("x12>=x13+x23-x3", x12 >= x13 + x23 - x3),
        ("x12>=0", x12 >= 0),
        ("x12<=min(x1,x2)", x12 <= min(x1, x2)),
        ("x13>=x1+x3-1", x13 >= x1 + x3 - 1),
        ("x13>=x12+x23-x2", x13 >= x12 + x23 - x2),
        ("x13>=0", x13 >= 0),
        ("x13<=min(x1,x3)", x13 <= min(x1, x3)),
        ("x23>=x2+x3-1", x23 >= x2 + x3 - 1),
        ("x23>=x12+x13-x1", x23 >= x12 + x13 - x1),
        ("x23>=0", x23 >= 0),
        ("x23<=min(x2,x3)", x23 <= min(x2, x3)),
        ("1-x1-x2-x3+x12+x13+x23>=0", 1 - x1 - x2 - x3 + x12 + x13 + x23 >= 0),
    ]


def extension_bounds_three(
    x1: RationalLike,
    x2: RationalLike,
    x3: RationalLike,
    x12: RationalLike,
    x13: RationalLike,
    x23: RationalLike,
) -> Bounds:
    """Coherent range of ``x123`` given a coherent six-value prefix."""
    x1, x2, x3, x12, x13, x23 = _fractions(x1, x2, x3, x12, x13, x23)
    lower = max(ZERO, x12 + x13 - x1, x12 + x23 - x2, x13 + x23 - x3)
    upper = min(x12, x13, x23, 1 - x1 - x2 - x3 + x12 + x13 + x23)
    return Bounds(lower, upper)


def pi_three_violations(
    x1: RationalLike,
    x2: RationalLike,
    x3: RationalLike,
    x12: RationalLike,
    x13: RationalLike,
    x23: RationalLike,
    x123: Optional[RationalLike] = None,
) -> List[str]:
    """Names of the violated inequalities; empty iff the point is coherent.

    With ``x123`` omitted the six-value prefix is tested: it is coherent iff
    the pairwise conditions hold and some ``x123`` extends it.
    """
    x1, x2, x3, x12, x13, x23 = _fractions(x1, x2, x3, x12, x13, x23)
    violated = [name for name, ok in _pair_conditions(x1, x2, x3, x12, x13, x23) if not ok]
    bounds = extension_bounds_three(x1, x2, x3, x12, x13, x23)
    if x123 is None:
        if bounds.is_empty:
            violated.append("x123 range nonempty")
        return violated
    value = to_fraction(x123)
    if value < bounds.lower:
        violated.append("x123>=max(0,x12+x13-x1,x12+x23-x2,x13+x23-x3)")
    if value > bounds.upper:
        violated.append("x123<=min(x12,x13,x23,1-x1-x2-x3+x12+x13+x23)")
    return violated


def in_pi_three(
    x1: RationalLike,
    x2: RationalLike,
    x3: RationalLike,
    x12: RationalLike,
    x13: RationalLike,
    x23: RationalLike,
    x123: RationalLike,
) -> bool:
    return not pi_three_violations(x1, x2, x3, x12, x13, x23, x123)


def in_pi_three_prefix(
    x1: RationalLike,
    x2: RationalLike,
    x3: RationalLike,
    x12: RationalLike,
    x13: RationalLike,
    x23: RationalLike,
) -> bool:
    """Coherence of the six-value prefix on ``{C1, C2, C3, C12, C13, C23}``."""
    return not pi_three_violations(x1, x2, x3, x12, x13, x23)


def tnorm_prefix(
    param: FrankParam,
    x1: RationalLike,
    x2: RationalLike,
    x3: RationalLike,
    include_triple: bool = True,
) -> Tuple[Fraction, ...]:
    """``(x1, x2, x3, T(x1,x2), T(x1,x3), T(x2,x3)[, T(x1,x2,x3)])``."""
    x1, x2, x3 = _fractions(x1, x2, x3)
    values = (x1, x2, x3, frank(param, x1, x2), frank(param, x1, x3), frank(param, x2, x3))
    if include_triple:
        values += (frank_n(param, (x1, x2, x3)),)
    return values


def luk_coherent_six(x1: RationalLike, x2: RationalLike, x3: RationalLike) -> bool:
    """Coherence of the Lukasiewicz six-value prefix.

    Only valid when every pairwise ``T_L(x_i, x_j)`` is positive; then the
    prefix is coherent iff ``x1 + x2 + x3 >= 2``.

    Raises:
        HypothesisError: if some pairwise ``T_L(x_i, x_j)`` is zero.
    """
    x1, x2, x3 = _fractions(x1, x2, x3)
    for (i, a), (j, b) in (((1, x1), (2, x2)), ((1, x1), (3, x3)), ((2, x2), (3, x3))):
        if t_lukasiewicz(a, b) <= 0:
            raise HypothesisError(
                f"T_L(x{i}, x{j}) = 0; the Lukasiewicz prefix rule needs every pairwise T_L positive"
            )
    return x1 + x2 + x3 >= 2


def luk_coherent_seven(x1: RationalLike, x2: RationalLike, x3: RationalLike) -> Optional[bool]:
    """``True`` when ``T_L(x1, x2, x3) > 0``; ``None`` when that rule does not decide.

    Use :func:`in_pi_three` on :func:`tnorm_prefix` for a full decision.
    """
    x1, x2, x3 = _fractions(x1, x2, x3)
    if x1 + x2 + x3 - 2 > 0:
        return True
    return None


# ---------------------------------------------------------------------------
# Family recognition
# ---------------------------------------------------------------------------

class FamilyKind(str, enum.Enum):
    TWO = "two-conditionals"
    SAME_CONSEQUENT = "same-consequent"
    SAME_CONSEQUENT_DISJOINT = "same-consequent-disjoint"
    THREE = "three-conditionals"
    THREE_COMMON_ANTECEDENT = "three-common-antecedent"


_TWO_ROLES = {"x": (1,), "y": (2,), "z": (1, 2)}
_THREE_ROLES = {
    "x1": (1,), "x2": (2,), "x3": (3,),
    "x12": (1, 2), "x13": (1, 3), "x23": (2, 3),
    "x123": (1, 2, 3),
}


@dataclass(frozen=True)
class FamilyMatch:
    """A recognised closed-form family and the term playing each role."""

    kind: FamilyKind
    roles: Dict[str, ConjunctionTerm]

    def values(self, previsions) -> Dict[str, Fraction]:
        return {role: previsions[term] for role, term in self.roles.items() if term in previsions}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "roles": {role: list(term.sorted_members) for role, term in self.roles.items()},
        }


def _roles(layout: Dict[str, Tuple[int, ...]], terms: set) -> Optional[Dict[str, ConjunctionTerm]]:
    roles = {role: ConjunctionTerm.of(*members) for role, members in layout.items()}
    if set(roles.values()) == terms:
        return roles
    return None


def _equivalent(a: EventExpr, b: EventExpr, atoms, cap) -> bool:
    return realized_patterns([a, b], atoms, cap) <= {(False, False), (True, True)}


def identify_family(problem, terms: Optional[Sequence[TermLike]] = None) -> Optional[FamilyMatch]:
    """Recognise a closed-form family by truth-table checks.

    Args:
        problem: An :class:`~conjunction_coherence.coherence.AssessmentProblem`.
        terms: Term set to match instead of ``problem.terms``.
    """
    term_set = {as_term(t) for t in (problem.terms if terms is None else terms)}
    conditionals = problem.conditionals
    atoms, cap = problem.atoms, problem.max_atoms
    E = [c.consequent for c in conditionals]
    H = [c.antecedent for c in conditionals]

    if len(conditionals) == 2:
        roles = _roles(_TWO_ROLES, term_set)
        if roles is None:
            return None
        if logically_independent([E[0], H[0], E[1], H[1]], atoms, cap):
            return FamilyMatch(FamilyKind.TWO, roles)
        if _equivalent(E[0], E[1], atoms, cap):
            if logically_independent([E[0], H[0], H[1]], atoms, cap):
                return FamilyMatch(FamilyKind.SAME_CONSEQUENT, roles)
            expected = {p for p in product((False, True), repeat=3) if not (p[1] and p[2])}
            if realized_patterns([E[0], H[0], H[1]], atoms, cap) == expected:
                return FamilyMatch(FamilyKind.SAME_CONSEQUENT_DISJOINT, roles)
        return None

    if len(conditionals) == 3:
        layout = dict(_THREE_ROLES)
        roles = _roles(layout, term_set)
        if roles is None:
            layout.pop("x123")
            roles = _roles(layout, term_set)
        if roles is None:
            return None
        if logically_independent([*E, *H], atoms, cap):
            return FamilyMatch(FamilyKind.THREE, roles)
        if _equivalent(H[0], H[1], atoms, cap) and _equivalent(H[0], H[2], atoms, cap):
            sure = realized_patterns([H[0]], atoms, cap) == {(True,)}
            events = list(E) if sure else [*E, H[0]]
            if logically_independent(events, atoms, cap):
                return FamilyMatch(FamilyKind.THREE_COMMON_ANTECEDENT, roles)
        return None
    return None


def _two_violations(kind: FamilyKind, x: Fraction, y: Fraction, z: Fraction) -> List[str]:
    checks = [("0<=x<=1", ZERO <= x <= ONE), ("0<=y<=1", ZERO <= y <= ONE)]
    if kind is FamilyKind.TWO:
        checks += [("z>=max(0,x+y-1)", z >= t_lukasiewicz(x, y)), ("z<=min(x,y)", z <= min(x, y))]
    elif kind is FamilyKind.SAME_CONSEQUENT:
        checks += [("z>=x*y", z >= x * y), ("z<=min(x,y)", z <= min(x, y))]
    else:
        checks.append(("z==x*y", z == x * y))
    return [name for name, ok in checks if not ok]


def closed_form_violations(problem) -> Optional[List[str]]:
    """Names of the region inequalities *problem* violates.

    Empty when the assessment is coherent; ``None`` when no family matches.
    """
    match = identify_family(problem)
    if match is None:
        return None
    v = match.values(problem.previsions)
    logger.debug("Closed-form family %s", match.kind.value)
    if match.kind in (FamilyKind.TWO, FamilyKind.SAME_CONSEQUENT, FamilyKind.SAME_CONSEQUENT_DISJOINT):
        return _two_violations(match.kind, v["x"], v["y"], v["z"])
    prefix = [v[r] for r in ("x1", "x2", "x3", "x12", "x13", "x23")]
    return pi_three_violations(*prefix, v.get("x123"))


def closed_form_verdict(problem) -> Optional[bool]:
    """Coherence of *problem* by closed form, or ``None`` when no family matches."""
    violations = closed_form_violations(problem)
    if violations is None:
        return None
    return not violations


def closed_form_extension(problem, target: TermLike) -> Optional[Bounds]:
    """Closed-form extension bounds for *target*, or ``None`` when no family matches.

    The family is matched on the assessed terms plus *target*; the target's own
    prevision, if assessed, is ignored.
    """
    target = as_term(target)
    terms = set(problem.terms) | {target}
    match = identify_family(problem, terms)
    if match is None:
        return None
    v = {role: problem.previsions[term] for role, term in match.roles.items() if term != target}
    role = next(r for r, term in match.roles.items() if term == target)
    if match.kind in (FamilyKind.TWO, FamilyKind.SAME_CONSEQUENT, FamilyKind.SAME_CONSEQUENT_DISJOINT):
        if role != "z":
            return None
        x, y = v["x"], v["y"]
        if match.kind is FamilyKind.TWO:
            return frechet_bounds(x, y)
        if match.kind is FamilyKind.SAME_CONSEQUENT:
            return Bounds(x * y, min(x, y))
        return Bounds(x * y, x * y)
    if role != "x123":
        return None
    return extension_bounds_three(*(v[r] for r in ("x1", "x2", "x3", "x12", "x13", "x23")))
