"""
Frank t-norms and recovery of the Frank parameter.

``T_lambda(u, v) = log_lambda(1 + (lambda^u - 1)(lambda^v - 1) / (lambda - 1))``
for ``lambda`` in ``(0, 1) U (1, inf)``, with the limits

- ``lambda = 0``: minimum ``T_M(u, v) = min(u, v)``
- ``lambda = 1``: product ``T_P(u, v) = u v``
- ``lambda = inf``: Lukasiewicz ``T_L(u, v) = max(u + v - 1, 0)``

The limit cases are evaluated exactly over :class:`~fractions.Fraction`;
generic parameters use :mod:`decimal` at ``FRANK_PRECISION`` significant
digits and the result is returned as the exact rational of that decimal.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, Dict, Iterable, Optional, Tuple

from .config import (
    FRANK_PRECISION,
    LAMBDA_MAX_BISECTIONS,
    LAMBDA_RESIDUAL_TOLERANCE,
    PRODUCT_LIMIT_TOLERANCE,
)
from .crq import ConjunctionTerm, ValueRow, ValueTable
from .errors import InputError
from .logic.constituents import CaseTag, ConstituentTable
from .rationals import ONE, ZERO, RationalLike, format_rational, to_unit

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------

class FrankKind(str, enum.Enum):
    MIN = "MIN"
    PRODUCT = "PRODUCT"
    LUKASIEWICZ = "LUKASIEWICZ"
    GENERIC = "GENERIC"


@dataclass(frozen=True)
class FrankParam:
    """A Frank parameter ``lambda`` in ``[0, +inf]``.

    Use :meth:`of` to build one from a number; ``0``, ``1`` and ``inf`` map to
    the limit kinds so a GENERIC value is always in ``(0, 1) U (1, inf)``.
    """

    kind: FrankKind
    value: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind is FrankKind.GENERIC:
            if self.value is None or not (0 < self.value < math.inf) or self.value == 1:
                raise InputError(f"Generic Frank parameter must be positive, finite and != 1, got {self.value!r}")
        elif self.value is not None:
            raise InputError(f"{self.kind.value} takes no explicit value")

    @classmethod
    def of(cls, lam: float) -> "FrankParam":
        lam = float(lam)
        if lam != lam or lam < 0:
            raise InputError(f"Frank parameter must be in [0, +inf], got {lam!r}")
        if lam == 0:
            return MINIMUM
        if lam == 1:
            return PRODUCT
        if lam == math.inf:
            return LUKASIEWICZ
        return cls(FrankKind.GENERIC, lam)

    @property
    def lam(self) -> float:
        if self.kind is FrankKind.MIN:
            return 0.0
        if self.kind is FrankKind.PRODUCT:
            return 1.0
        if self.kind is FrankKind.LUKASIEWICZ:
            return math.inf
        assert self.value is not None
        return self.value

    def __str__(self) -> str:
        if self.kind is FrankKind.GENERIC:
            return f"GENERIC({self.value:g})"
        return self.kind.value


MINIMUM = FrankParam(FrankKind.MIN)
PRODUCT = FrankParam(FrankKind.PRODUCT)
LUKASIEWICZ = FrankParam(FrankKind.LUKASIEWICZ)


def lambda_to_t(lam: float) -> float:
    """Map ``lambda`` in ``[0, inf]`` to ``t = lambda / (1 + lambda)`` in ``[0, 1]``."""
    if lam < 0 or lam != lam:
        raise InputError(f"Frank parameter must be in [0, +inf], got {lam!r}")
    if lam == math.inf:
        return 1.0
    return lam / (1.0 + lam)


def t_to_lambda(t: float) -> float:
    """Inverse of :func:`lambda_to_t`; ``t = 1`` gives ``inf``."""
    if not 0 <= t <= 1:
        raise InputError(f"t must lie in [0, 1], got {t!r}")
    if t == 1:
        return math.inf
    return t / (1.0 - t)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def t_min(u: Fraction, v: Fraction) -> Fraction:
    return min(u, v)


def t_product(u: Fraction, v: Fraction) -> Fraction:
    return u * v


def t_lukasiewicz(u: Fraction, v: Fraction) -> Fraction:
    return max(u + v - ONE, ZERO)


def _to_decimal(value: Fraction) -> Decimal:
    return Decimal(value.numerator) / Decimal(value.denominator)


def _generic(lam: Decimal, u: Fraction, v: Fraction) -> Fraction:
    """``T_lambda(u, v)`` for interior ``u, v``; call inside a precision context."""
    ln_lam = lam.ln()
    du, dv = _to_decimal(u), _to_decimal(v)
    pu = (du * ln_lam).exp() - 1
    pv = (dv * ln_lam).exp() - 1
    arg = 1 + pu * pv / (lam - 1)
    return Fraction(arg.ln() / ln_lam)


def frank(param: FrankParam, u: RationalLike, v: RationalLike) -> Fraction:
    """Evaluate ``T_lambda(u, v)``.

    Exact for the limit kinds and for the boundary identities
    ``T(u, 0) = T(0, v) = 0``, ``T(u, 1) = u``, ``T(1, v) = v``; generic values
    are clamped to ``[T_L(u, v), T_M(u, v)]``.
    """
    u = to_unit(u, "u")
    v = to_unit(v, "v")
    if param.kind is FrankKind.MIN:
        return t_min(u, v)
    if param.kind is FrankKind.PRODUCT:
        return t_product(u, v)
    if param.kind is FrankKind.LUKASIEWICZ:
        return t_lukasiewicz(u, v)
    if u == 0 or v == 0:
        return ZERO
    if u == 1:
        return v
    if v == 1:
        return u
    assert param.value is not None
    if abs(param.value - 1.0) < PRODUCT_LIMIT_TOLERANCE:
        return t_product(u, v)
    with localcontext() as ctx:
        ctx.prec = FRANK_PRECISION
        value = _generic(Decimal(repr(param.value)), u, v)
    return min(max(value, t_lukasiewicz(u, v)), t_min(u, v))


def frank_n(param: FrankParam, values: Iterable[RationalLike]) -> Fraction:
    """Left fold ``T(...T(T(x1, x2), x3)..., xn)``."""
    items = list(values)
    if not items:
        raise InputError("frank_n needs at least one value")
    result = to_unit(items[0], "x1")
    for i, value in enumerate(items[1:], start=2):
        result = frank(param, result, to_unit(value, f"x{i}"))
    return result


def _frank_at_t(t: Decimal, u: Fraction, v: Fraction) -> Decimal:
    """``T_lambda(u, v)`` with ``lambda = t / (1 - t)``, for interior ``t, u, v``."""
    lam = t / (1 - t)
    ln_lam = lam.ln()
    if ln_lam.is_zero():
        return _to_decimal(u * v)
    du, dv = _to_decimal(u), _to_decimal(v)
    arg = 1 + ((du * ln_lam).exp() - 1) * ((dv * ln_lam).exp() - 1) / (lam - 1)
    return arg.ln() / ln_lam


# ---------------------------------------------------------------------------
# Parameter recovery
# ---------------------------------------------------------------------------

class FitKind(str, enum.Enum):
    MIN = "MIN"
    PRODUCT = "PRODUCT"
    LUKASIEWICZ = "LUKASIEWICZ"
    GENERIC = "GENERIC"
    NOT_REPRESENTABLE = "NOT_REPRESENTABLE"
    UNDERDETERMINED = "UNDERDETERMINED"


@dataclass(frozen=True)
class LambdaFit:
    """Outcome of :func:`find_lambda`.

    ``lambda_range`` is ``(0, inf)`` for UNDERDETERMINED triples and the
    single recovered value otherwise; ``residual`` is ``|T_lambda(x, y) - z|``.
    """

    kind: FitKind
    param: Optional[FrankParam] = None
    residual: Optional[float] = None
    lambda_range: Optional[Tuple[float, float]] = None

    @property
    def lam(self) -> Optional[float]:
        return self.param.lam if self.param is not None else None

    @property
    def t(self) -> Optional[float]:
        return lambda_to_t(self.param.lam) if self.param is not None else None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.param is not None:
            data["lambda"] = _float_text(self.param.lam)
        if self.residual is not None:
            data["residual"] = self.residual
        if self.lambda_range is not None:
            data["lambda_range"] = [_float_text(v) for v in self.lambda_range]
        return data


def _float_text(value: float) -> Any:
    return "inf" if value == math.inf else value


def _exact_fit(kind: FitKind, param: FrankParam) -> LambdaFit:
    return LambdaFit(kind, param, 0.0, (param.lam, param.lam))


def find_lambda(x: RationalLike, y: RationalLike, z: RationalLike) -> LambdaFit:
    """Find ``lambda`` in ``[0, +inf]`` with ``T_lambda(x, y) = z``.

    ``T_lambda(x, y)`` is continuous and non-increasing in ``lambda``, so the
    generic case is a bisection over ``t = lambda / (1 + lambda)`` in
    ``(0, 1)``; ``t = 0`` gives ``T_M`` and ``t = 1`` gives ``T_L``.
    """
    x = to_unit(x, "x")
    y = to_unit(y, "y")
    z = to_unit(z, "z")
    lower, upper = t_lukasiewicz(x, y), t_min(x, y)
    if not lower <= z <= upper:
        return LambdaFit(FitKind.NOT_REPRESENTABLE)
    if lower == upper:
        return LambdaFit(FitKind.UNDERDETERMINED, lambda_range=(0.0, math.inf))
    if z == upper:
        return _exact_fit(FitKind.MIN, MINIMUM)
    if z == lower:
        return _exact_fit(FitKind.LUKASIEWICZ, LUKASIEWICZ)
    if z == x * y:
        return _exact_fit(FitKind.PRODUCT, PRODUCT)

    with localcontext() as ctx:
        ctx.prec = FRANK_PRECISION
        target = _to_decimal(z)
        lo, hi = Decimal(0), Decimal(1)
        width = Decimal(10) ** -(FRANK_PRECISION // 2 + 10)
        mid = (lo + hi) / 2
        value = _frank_at_t(mid, x, y)
        for step in range(LAMBDA_MAX_BISECTIONS):
            if value > target:
                lo = mid
            else:
                hi = mid
            if hi - lo < width:
                break
            mid = (lo + hi) / 2
            value = _frank_at_t(mid, x, y)
        lam = mid / (1 - mid)
        residual = float(abs(value - target))
    logger.debug("find_lambda(%s, %s, %s): lambda=%s after %d steps", x, y, z, lam, step + 1)
    if residual > LAMBDA_RESIDUAL_TOLERANCE:
        logger.warning("Frank parameter residual %.3g exceeds %.0e", residual, LAMBDA_RESIDUAL_TOLERANCE)
    param = FrankParam.of(float(lam))
    kind = FitKind.PRODUCT if param.kind is FrankKind.PRODUCT else FitKind.GENERIC
    return LambdaFit(kind, param, residual, (param.lam, param.lam))


# ---------------------------------------------------------------------------
# Value tables
# ---------------------------------------------------------------------------

def frank_value_table(param: FrankParam, table: ConstituentTable, x: RationalLike, y: RationalLike) -> ValueTable:
    """Value table of ``T_lambda(A|H, B|K)`` over a two-conditional constituent table.

    The value is ``1`` when both are true, ``0`` when one is false, the
    other's prevision when exactly one is void and ``T_lambda(x, y)`` on ``C0``.
    """
    if len(table.family) != 2:
        raise InputError(f"frank_value_table needs two conditional events, got {len(table.family)}")
    x = to_unit(x, "x")
    y = to_unit(y, "y")
    previsions = {(1,): x, (2,): y, (1, 2): frank(param, x, y)}
    rows = []
    for constituent in table.constituents:
        tags = constituent.tags
        if CaseTag.FALSE in tags:
            rows.append(ValueRow(constituent.index, ZERO))
            continue
        void = tuple(i + 1 for i, tag in enumerate(tags) if tag is CaseTag.VOID)
        value = previsions[void] if void else ONE
        rows.append(ValueRow(constituent.index, value, void))
    logger.debug("Frank %s table on x=%s, y=%s", param, format_rational(x), format_rational(y))
    return ValueTable(ConjunctionTerm.of(1, 2), tuple(rows))
