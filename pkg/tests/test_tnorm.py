"""Tests for Frank t-norms and parameter recovery."""
from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from conjunction_coherence.crq import PrevisionMap, conjunction_value_table
from conjunction_coherence.errors import InputError
from conjunction_coherence.tnorm import (
    LUKASIEWICZ,
    MINIMUM,
    PRODUCT,
    FitKind,
    FrankKind,
    FrankParam,
    find_lambda,
    frank,
    frank_n,
    frank_value_table,
    lambda_to_t,
    t_lukasiewicz,
    t_min,
    t_to_lambda,
)

from .builders import make_three, make_two

F = Fraction


class TestFrankParam:
    @pytest.mark.parametrize(
        "lam,expected",
        [(0, MINIMUM), (1, PRODUCT), (math.inf, LUKASIEWICZ)],
    )
    def test_limits_map_to_kinds(self, lam, expected):
        assert FrankParam.of(lam) == expected

    def test_generic(self):
        param = FrankParam.of(2)
        assert param.kind is FrankKind.GENERIC
        assert param.lam == 2.0
        assert str(param) == "GENERIC(2)"

    @pytest.mark.parametrize("lam", [-1, float("nan")])
    def test_invalid_values(self, lam):
        with pytest.raises(InputError):
            FrankParam.of(lam)

    def test_generic_one_rejected(self):
        with pytest.raises(InputError):
            FrankParam(FrankKind.GENERIC, 1.0)

    def test_limit_kind_takes_no_value(self):
        with pytest.raises(InputError):
            FrankParam(FrankKind.MIN, 0.5)

    @pytest.mark.parametrize("lam", [0.0, 0.1, 1.0, 2.0, 100.0])
    def test_t_round_trip(self, lam):
        assert t_to_lambda(lambda_to_t(lam)) == pytest.approx(lam)

    def test_t_endpoints(self):
        assert lambda_to_t(math.inf) == 1.0
        assert t_to_lambda(1.0) == math.inf
        assert lambda_to_t(1.0) == 0.5
        with pytest.raises(InputError):
            t_to_lambda(1.5)


class TestFrank:
    def test_product(self):
        assert frank(PRODUCT, "0.35", "0.45") == F(63, 400)

    def test_minimum(self):
        assert frank(MINIMUM, "0.35", "0.45") == F(7, 20)

    def test_lukasiewicz(self):
        assert frank(LUKASIEWICZ, "0.5", "0.6") == F(1, 10)

    def test_generic_two(self):
        value = frank(FrankParam.of(2), "0.5", "0.5")
        assert float(value) == pytest.approx(math.log2(4 - 2 * math.sqrt(2)), abs=1e-14)
        assert float(value) == pytest.approx(0.228447, abs=1e-6)

    def test_near_one_is_product(self):
        assert frank(FrankParam.of(1 + 1e-12), "0.3", "0.4") == F(3, 25)

    def test_domain(self):
        with pytest.raises(InputError):
            frank(PRODUCT, "1.2", "0.5")

    @pytest.mark.parametrize("param", [MINIMUM, PRODUCT, LUKASIEWICZ, FrankParam.of(0.5), FrankParam.of(2)])
    def test_grid_bounds_and_identities(self, param):
        grid = [F(k, 100) for k in range(101)]
        for u in grid:
            assert frank(param, u, 0) == 0
            assert frank(param, 0, u) == 0
            assert frank(param, u, 1) == u
            assert frank(param, 1, u) == u
            for v in grid:
                value = frank(param, u, v)
                assert t_lukasiewicz(u, v) <= value <= t_min(u, v)

    def test_symmetric(self):
        rng = random.Random(7)
        for param in (FrankParam.of(0.1), FrankParam.of(10), PRODUCT):
            for _ in range(50):
                u, v = F(rng.randint(0, 100), 100), F(rng.randint(0, 100), 100)
                assert frank(param, u, v) == frank(param, v, u)

    def test_non_increasing_in_lambda(self):
        params = [MINIMUM, FrankParam.of(0.1), FrankParam.of(0.5), PRODUCT, FrankParam.of(2),
                  FrankParam.of(10), FrankParam.of(100), LUKASIEWICZ]
        for u in (F(1, 10), F(1, 2), F(17, 20)):
            for v in (F(1, 5), F(3, 5), F(9, 10)):
                values = [frank(p, u, v) for p in params]
                for a, b in zip(values, values[1:]):
                    assert b <= a + F(1, 10**15)


class TestFrankN:
    def test_lukasiewicz(self):
        assert frank_n(LUKASIEWICZ, ["0.5", "0.6", "0.7"]) == 0

    def test_product(self):
        assert frank_n(PRODUCT, ["0.5", "0.5", "0.5"]) == F(1, 8)

    def test_minimum(self):
        assert frank_n(MINIMUM, ["0.2", "0.9", "0.4"]) == F(1, 5)

    def test_single_value(self):
        assert frank_n(PRODUCT, ["0.3"]) == F(3, 10)

    def test_empty(self):
        with pytest.raises(InputError):
            frank_n(PRODUCT, [])

    @pytest.mark.parametrize("lam", [0.5, 2.0, 10.0])
    def test_order_independent(self, lam):
        param = FrankParam.of(lam)
        values = [F(3, 10), F(7, 10), F(9, 10)]
        forward = frank_n(param, values)
        backward = frank_n(param, reversed(values))
        assert abs(forward - backward) < F(1, 10**15)


class TestFindLambda:
    def test_product(self):
        fit = find_lambda("0.35", "0.45", "0.1575")
        assert fit.kind is FitKind.PRODUCT
        assert fit.lam == 1.0
        assert fit.residual == 0.0

    def test_minimum(self):
        assert find_lambda("0.35", "0.45", "0.35").kind is FitKind.MIN

    def test_lukasiewicz(self):
        fit = find_lambda("0.7", "0.6", "0.3")
        assert fit.kind is FitKind.LUKASIEWICZ
        assert fit.lam == math.inf

    def test_generic(self):
        fit = find_lambda("0.5", "0.5", "0.1")
        assert fit.kind is FitKind.GENERIC
        assert fit.lam > 1
        assert fit.residual <= 1e-12
        assert float(frank(fit.param, "0.5", "0.5")) == pytest.approx(0.1, abs=1e-12)

    def test_below_product_needs_lambda_above_one(self):
        assert find_lambda("0.5", "0.5", "0.2").lam > 1
        assert find_lambda("0.5", "0.5", "0.3").lam < 1

    @pytest.mark.parametrize("triple", [("0.5", "0.5", "0.6"), ("0.7", "0.6", "0.2")])
    def test_not_representable(self, triple):
        fit = find_lambda(*triple)
        assert fit.kind is FitKind.NOT_REPRESENTABLE
        assert fit.param is None

    @pytest.mark.parametrize("triple", [("0", "0.7", "0"), ("1", "0.3", "0.3"), ("0.4", "1", "0.4")])
    def test_underdetermined(self, triple):
        fit = find_lambda(*triple)
        assert fit.kind is FitKind.UNDERDETERMINED
        assert fit.lambda_range == (0.0, math.inf)
        assert fit.to_dict() == {"kind": "UNDERDETERMINED", "lambda_range": [0.0, "inf"]}

    @pytest.mark.parametrize("lam", [0.1, 0.5, 2.0, 10.0, 100.0])
    def test_round_trip(self, lam):
        rng = random.Random(int(lam * 1000))
        param = FrankParam.of(lam)
        for _ in range(100):
            x, y = F(rng.randint(1, 99), 100), F(rng.randint(1, 99), 100)
            fit = find_lambda(x, y, frank(param, x, y))
            assert fit.kind is FitKind.GENERIC
            assert abs(fit.lam - lam) / lam <= 1e-6
            assert fit.residual <= 1e-12

    def test_to_dict(self):
        data = find_lambda("0.35", "0.45", "0.35").to_dict()
        assert data == {"kind": "MIN", "lambda": 0.0, "residual": 0.0, "lambda_range": [0.0, 0.0]}


class TestFrankValueTable:
    @pytest.mark.parametrize("param", [MINIMUM, PRODUCT, LUKASIEWICZ, FrankParam.of(3)])
    def test_matches_conjunction_table(self, param):
        x, y = F(2, 5), F(3, 4)
        problem = make_two(x, y)
        previsions = PrevisionMap({1: x, 2: y, (1, 2): frank(param, x, y)})
        expected = conjunction_value_table((1, 2), problem.constituent_table, previsions)
        assert frank_value_table(param, problem.constituent_table, x, y) == expected

    def test_needs_two_conditionals(self):
        problem = make_three(["0.5"] * 3 + ["0.25"] * 3)
        with pytest.raises(InputError):
            frank_value_table(PRODUCT, problem.constituent_table, "0.5", "0.5")
