"""Tests for the exact rational simplex."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conjunction_coherence.coherence.simplex import RationalSimplex, find_feasible, maximize
from conjunction_coherence.errors import InputError, SimplexError

F = Fraction


def _dot(a, b):
    return sum((F(x) * F(y) for x, y in zip(a, b)), F(0))


def _assert_solves(A, b, x):
    assert all(v >= 0 for v in x)
    for row, rhs in zip(A, b):
        assert _dot(row, x) == rhs


def _assert_farkas(A, b, y):
    for j in range(len(A[0])):
        assert sum((y[i] * A[i][j] for i in range(len(A))), F(0)) <= 0
    assert _dot(y, b) > 0


class TestFeasibility:
    def test_unique_solution(self):
        A = [[1, 1], [1, -1]]
        b = [1, 0]
        result = find_feasible(A, b)
        assert result.feasible
        assert result.x == [F(1, 2), F(1, 2)]

    def test_negative_right_hand_side(self):
        A = [[-1, 0, 1], [1, 1, 0]]
        b = [F(-1, 2), 1]
        result = find_feasible(A, b)
        assert result.feasible
        _assert_solves(A, b, result.x)

    def test_infeasible_has_farkas_certificate(self):
        A = [[1, 1], [1, 1]]
        b = [1, 2]
        result = find_feasible(A, b)
        assert not result.feasible
        _assert_farkas(A, b, result.farkas)

    def test_nonnegativity_makes_infeasible(self):
        A = [[1, 1]]
        b = [-1]
        result = find_feasible(A, b)
        assert not result.feasible
        _assert_farkas(A, b, result.farkas)

    def test_redundant_rows(self):
        A = [[1, 1, 1], [2, 2, 2], [1, 0, 0]]
        b = [1, 2, F(1, 3)]
        lp = RationalSimplex(A, b)
        result = lp.find_feasible()
        assert result.feasible
        _assert_solves(A, b, result.x)
        assert lp.maximize([0, 1, 0]).value == F(2, 3)

    def test_random_systems_are_decided_with_certificates(self):
        rng = random.Random(3)
        for _ in range(60):
            m, n = rng.randint(1, 4), rng.randint(1, 6)
            A = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
            b = [F(rng.randint(-3, 3)) for _ in range(m)]
            result = find_feasible(A, b)
            if result.feasible:
                _assert_solves(A, b, result.x)
            else:
                _assert_farkas(A, b, result.farkas)

    def test_shape_errors(self):
        with pytest.raises(InputError):
            RationalSimplex([[1, 2]], [1, 2])
        with pytest.raises(InputError):
            RationalSimplex([[1, 2], [1]], [1, 2])


class TestMaximize:
    def test_simplex_vertex(self):
        A = [[1, 1, 1]]
        b = [1]
        result = maximize([F(1, 2), 2, 1], A, b)
        assert result.value == 2
        assert result.x == [0, 1, 0]

    def test_minimize_by_negation(self):
        A = [[1, 1, 1], [0, 1, -1]]
        b = [1, 0]
        result = maximize([-1, 0, 0], A, b)
        assert result.value == 0
        _assert_solves(A, b, result.x)

    def test_reuses_phase_one(self):
        A = [[1, 1, 1], [1, 0, 0]]
        b = [1, F(1, 4)]
        lp = RationalSimplex(A, b)
        assert lp.maximize([0, 1, 0]).value == F(3, 4)
        assert lp.maximize([0, 0, 1]).value == F(3, 4)
        assert lp.maximize([1, 0, 0]).value == F(1, 4)

    def test_unbounded(self):
        with pytest.raises(SimplexError, match="unbounded"):
            maximize([1, 0], [[1, -1]], [0])

    def test_infeasible(self):
        with pytest.raises(SimplexError, match="infeasible"):
            maximize([1, 0], [[1, 1]], [-1])

    def test_objective_length(self):
        with pytest.raises(InputError):
            maximize([1], [[1, 1]], [1])
