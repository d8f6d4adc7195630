"""Problem builders shared by the test modules."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from conjunction_coherence.coherence import AssessmentProblem
from conjunction_coherence.rationals import RationalLike


def make_two(x: RationalLike, y: RationalLike, z: Optional[RationalLike] = None) -> AssessmentProblem:
    """``{A|H, B|K[, (A|H)&(B|K)]}`` with logically independent A, H, B, K."""
    assessment = {1: x, 2: y}
    if z is not None:
        assessment[(1, 2)] = z
    return AssessmentProblem.build(["A", "H", "B", "K"], [("A", "H"), ("B", "K")], assessment)


def make_same_consequent(
    x: RationalLike, y: RationalLike, z: Optional[RationalLike] = None, disjoint: bool = False
) -> AssessmentProblem:
    """``{A|H, A|K[, (A|H)&(A|K)]}``; with *disjoint* the second antecedent is ``K & !H``."""
    antecedent = "K & !H" if disjoint else "K"
    assessment = {1: x, 2: y}
    if z is not None:
        assessment[(1, 2)] = z
    return AssessmentProblem.build(["A", "H", "K"], [("A", "H"), ("A", antecedent)], assessment)


THREE_ATOMS = ["E1", "H1", "E2", "H2", "E3", "H3"]
THREE_CONDITIONALS = [("E1", "H1"), ("E2", "H2"), ("E3", "H3")]
THREE_TERMS = [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def make_three(values: Sequence[RationalLike], common_antecedent: bool = False) -> AssessmentProblem:
    """Three conditionals with the 6- or 7-term family; values in ``x1..x123`` order."""
    if len(values) not in (6, 7):
        raise ValueError("expected 6 or 7 values")
    assessment = dict(zip(THREE_TERMS, values))
    if common_antecedent:
        return AssessmentProblem.build(
            ["E1", "E2", "E3", "H"], [("E1", "H"), ("E2", "H"), ("E3", "H")], assessment
        )
    return AssessmentProblem.build(THREE_ATOMS, THREE_CONDITIONALS, assessment)


def random_unit(rng: random.Random, max_denominator: int = 100) -> Fraction:
    """Random rational in ``[0, 1]`` with denominator at most *max_denominator*."""
    q = rng.randint(1, max_denominator)
    return Fraction(rng.randint(0, q), q)


EXAMPLE_ONE = ("0.5", "0.6", "0.7", "0.1", "0.2", "0.3", "0")
