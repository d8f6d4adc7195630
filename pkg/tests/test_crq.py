"""Tests for conjunction terms, previsions and value tables."""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conjunction_coherence.crq import (
    ConjunctionTerm,
    PrevisionMap,
    as_term,
    conjunction_value_table,
    q_vectors,
)
from conjunction_coherence.errors import InputError
from conjunction_coherence.logic import ConditionalEvent, enumerate_constituents, make_atoms, parse_formula
from conjunction_coherence.rationals import format_rational, parse_rational, to_fraction, to_unit

from .builders import THREE_ATOMS, THREE_CONDITIONALS, make_two, random_unit


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _make_table(atom_names, pairs):
    atoms = make_atoms(atom_names)
    family = [ConditionalEvent(parse_formula(c, atoms), parse_formula(a, atoms)) for c, a in pairs]
    return enumerate_constituents(family, atoms)


def _two_conditional_value(a, h, b, k, x, y, z):
    """Value of (A|H) & (B|K), case by case."""
    if a and h and b and k:
        return 1
    if (not a and h) or (not b and k):
        return 0
    if not h and b and k:
        return x
    if a and h and not k:
        return y
    if not h and not k:
        return z
    raise AssertionError("cases are exhaustive")


def _three_conditional_value(e, h, x):
    """Value of C1 & C2 & C3, case by case; ``x`` keyed by role name."""
    t = [e[i] and h[i] for i in range(3)]
    f = [h[i] and not e[i] for i in range(3)]
    v = [not h[i] for i in range(3)]
    if t[0] and t[1] and t[2]:
        return 1
    if f[0] or f[1] or f[2]:
        return 0
    if v[0] and t[1] and t[2]:
        return x["x1"]
    if t[0] and v[1] and t[2]:
        return x["x2"]
    if t[0] and t[1] and v[2]:
        return x["x3"]
    if v[0] and v[1] and t[2]:
        return x["x12"]
    if v[0] and t[1] and v[2]:
        return x["x13"]
    if t[0] and v[1] and v[2]:
        return x["x23"]
    if v[0] and v[1] and v[2]:
        return x["x123"]
    raise AssertionError("cases are exhaustive")


# ---------------------------------------------------------------------------
# Rationals
# ---------------------------------------------------------------------------

class TestRationals:
    @pytest.mark.parametrize(
        "text,expected",
        [("7/20", Fraction(7, 20)), ("0.1575", Fraction(63, 400)), ("1", Fraction(1)), (" 3 / 4 ", Fraction(3, 4)), ("1e-2", Fraction(1, 100))],
    )
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("text", ["1.2.3", "abc", "1/0", "", "1//2"])
    def test_malformed(self, text):
        with pytest.raises(InputError):
            parse_rational(text)

    def test_float_goes_through_repr(self):
        assert to_fraction(0.35) == Fraction(7, 20)

    def test_bool_rejected(self):
        with pytest.raises(InputError):
            to_fraction(True)

    def test_unit_interval(self):
        assert to_unit("1/2") == Fraction(1, 2)
        with pytest.raises(InputError, match=r"\[0, 1\]"):
            to_unit("3/2")

    def test_format(self):
        assert format_rational(Fraction(63, 400)) == "63/400"
        assert format_rational(Fraction(2, 2)) == "1"


# ---------------------------------------------------------------------------
# Terms and previsions
# ---------------------------------------------------------------------------

class TestConjunctionTerm:
    def test_labels(self):
        assert ConjunctionTerm.of(2, 1).label == "C12"
        assert ConjunctionTerm.of(1, 10).label == "C{1,10}"

    def test_positions(self):
        assert ConjunctionTerm.of(3, 1).positions == (0, 2)

    def test_as_term(self):
        assert as_term(2) == ConjunctionTerm.of(2)
        assert as_term([1, 2]) == as_term((2, 1))

    @pytest.mark.parametrize("members", [(), (0,), (-1,), ("1",), (True,)])
    def test_invalid(self, members):
        with pytest.raises(InputError):
            ConjunctionTerm(frozenset(members))

    def test_unhashable_members(self):
        with pytest.raises(InputError, match="positive integers"):
            ConjunctionTerm([[1]])


class TestPrevisionMap:
    def test_lookup_by_any_term_like(self):
        previsions = PrevisionMap({1: "0.5", (1, 2): "1/10"})
        assert previsions[(2, 1)] == Fraction(1, 10)
        assert (1, 2) in previsions
        assert 3 not in previsions

    def test_out_of_range(self):
        with pytest.raises(InputError):
            PrevisionMap({1: "1.5"})

    def test_require_names_missing_members(self):
        previsions = PrevisionMap({1: "0.5"})
        with pytest.raises(InputError, match=r"C23 \(members \[2, 3\]\)"):
            previsions.require((2, 3))

    def test_with_value_is_a_copy(self):
        previsions = PrevisionMap({1: "0.5"})
        updated = previsions.with_value(2, "0.25")
        assert 2 not in previsions
        assert updated[2] == Fraction(1, 4)


# ---------------------------------------------------------------------------
# Value tables
# ---------------------------------------------------------------------------

class TestValueTables:
    def test_single_conditional_has_three_rows(self):
        table = _make_table(["A", "H"], [("A", "H")])
        values = conjunction_value_table(1, table, PrevisionMap({1: "0.3"}))
        assert len(values.rows) == 3
        assert sorted(r.value for r in values.rows) == [0, Fraction(3, 10), 1]

    def test_zero_row_is_own_prevision(self):
        problem = make_two("0.35", "0.45", "0.1575")
        values = problem.value_tables[2]
        assert values.value(0) == Fraction(63, 400)
        assert values.rows[0].void == (1, 2)

    def test_missing_sub_prevision(self):
        table = _make_table(["A", "H", "B", "K"], [("A", "H"), ("B", "K")])
        with pytest.raises(InputError, match="C2"):
            conjunction_value_table((1, 2), table, PrevisionMap({1: "0.5", (1, 2): "0.2"}))

    def test_member_out_of_range(self):
        table = _make_table(["A", "H"], [("A", "H")])
        with pytest.raises(InputError, match="references"):
            conjunction_value_table((1, 2), table, PrevisionMap({1: "0.5"}))

    def test_q_vectors_start_with_assessment(self):
        problem = make_two("0.35", "0.45", "0.1575")
        q = q_vectors(problem)
        assert q[0].constituent == 0
        assert q[0].values == problem.assessment
        assert len(q) == 9

    def test_two_conditionals_match_case_list(self):
        rng = random.Random(7)
        table = _make_table(["A", "H", "B", "K"], [("A", "H"), ("B", "K")])
        for _ in range(25):
            x, y, z = (random_unit(rng) for _ in range(3))
            previsions = PrevisionMap({1: x, 2: y, (1, 2): z})
            values = conjunction_value_table((1, 2), table, previsions)
            for constituent, row in zip(table.constituents, values.rows):
                for a, h, b, k in constituent.assignments:
                    assert row.value == _two_conditional_value(a, h, b, k, x, y, z)

    def test_three_conditionals_match_case_list(self):
        rng = random.Random(11)
        table = _make_table(THREE_ATOMS, THREE_CONDITIONALS)
        roles = {"x1": (1,), "x2": (2,), "x3": (3,), "x12": (1, 2), "x13": (1, 3), "x23": (2, 3), "x123": (1, 2, 3)}
        for _ in range(10):
            x = {role: random_unit(rng) for role in roles}
            previsions = PrevisionMap({members: x[role] for role, members in roles.items()})
            values = conjunction_value_table((1, 2, 3), table, previsions)
            assert len(values.rows) == 27
            for constituent, row in zip(table.constituents, values.rows):
                for e1, h1, e2, h2, e3, h3 in constituent.assignments:
                    expected = _three_conditional_value((e1, e2, e3), (h1, h2, h3), x)
                    assert row.value == expected
