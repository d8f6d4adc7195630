"""Exact rational helpers.

Previsions are kept as :class:`fractions.Fraction` throughout. Decimal input
is converted exactly, so ``0.35`` becomes ``7/20`` rather than the nearest
binary float.
"""

from __future__ import annotations

import re
from decimal import Decimal
from fractions import Fraction
from typing import Union

from .errors import InputError

RationalLike = Union[Fraction, int, float, Decimal, str]

_RATIONAL_RE = re.compile(
    r"""
    \s*
    (?:
        (?P<num>[+-]?\d+)\s*/\s*(?P<den>\d+)       # p/q
      | (?P<dec>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)  # exact decimal
    )
    \s*
    """,
    re.VERBOSE,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an exact decimal string such as ``"0.1575"``."""
    match = _RATIONAL_RE.fullmatch(text)
    if not match:
        raise InputError(f"Malformed rational: {text!r} (expected 'p/q' or a decimal)")
    if match.group("dec") is not None:
        return Fraction(Decimal(match.group("dec")))
    den = int(match.group("den"))
    if den == 0:
        raise InputError(f"Malformed rational: {text!r} (zero denominator)")
    return Fraction(int(match.group("num")), den)


def to_fraction(value: RationalLike) -> Fraction:
    """Convert *value* to an exact :class:`Fraction`.

    Floats go through their shortest ``repr`` so ``0.35`` maps to ``7/20``;
    :class:`Decimal` values are converted digit for digit.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"Expected a number, got bool {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InputError(f"Expected a finite number, got {value!r}")
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise InputError(f"Expected a finite number, got {value!r}")
        return Fraction(Decimal(repr(value)))
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"Cannot interpret {value!r} as a rational number")


def to_unit(value: RationalLike, name: str = "value") -> Fraction:
    """Convert to :class:`Fraction` and check it lies in ``[0, 1]``."""
    result = to_fraction(value)
    if not ZERO <= result <= ONE:
        raise InputError(f"{name} must lie in [0, 1], got {format_rational(result)}")
    return result


def format_rational(value: Fraction) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
