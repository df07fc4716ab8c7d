"""Extended-real scalars.

Values in [-inf, +inf] are represented as plain Python floats, with
``math.inf`` / ``-math.inf`` as the two infinite tokens.  NaN is never a
legal value and is rejected at every construction boundary.

The only arithmetic rule that needs guarding is addition: the sum
``(+inf) + (-inf)`` is undefined and raises instead of silently producing
NaN.  Integration routines are written so that this combination is never
formed (a positive infinity short-circuits the sum first).
"""

from __future__ import annotations

import math
from typing import Iterable

PLUS_INF = math.inf
MINUS_INF = -math.inf


class UndefinedSumError(ArithmeticError):
    """Raised when (+inf) + (-inf) would be formed."""


def is_finite(v: float) -> bool:
    return math.isfinite(v)


def validate_extreal(v: float, *, name: str = "value") -> float:
    """Reject NaN and non-numeric input; pass finite and infinite floats."""
    v = float(v)
    if math.isnan(v):
        raise ValueError(f"{name} must not be NaN")
    return v


def ext_add(a: float, b: float) -> float:
    """Extended-real addition; raises on (+inf) + (-inf)."""
    if math.isinf(a) and math.isinf(b) and (a > 0) != (b > 0):
        raise UndefinedSumError("(+inf) + (-inf) is undefined")
    return a + b


def ext_gap(lhs: float, rhs: float) -> float:
    """Discrepancy |lhs - rhs| with matching infinities counted as 0.

    Mismatched infinities (or an infinity against a finite value) give
    +inf, so a tolerance test on the result fails as it should.
    """
    if math.isinf(lhs) or math.isinf(rhs):
        return 0.0 if lhs == rhs else PLUS_INF
    return abs(lhs - rhs)


def fmt(v: float) -> str:
    """Serialize one extended real: 17 significant digits, 'inf'/'-inf' tokens."""
    if v == PLUS_INF:
        return "inf"
    if v == MINUS_INF:
        return "-inf"
    return format(v, ".17g")


def parse(token: object, *, name: str = "value") -> float:
    """Inverse of :func:`fmt`; accepts floats and the two infinity strings."""
    if isinstance(token, str):
        t = token.strip().lower()
        if t in ("inf", "+inf", "infinity"):
            return PLUS_INF
        if t in ("-inf", "-infinity"):
            return MINUS_INF
        raise ValueError(f"{name}: unrecognized extended-real token {token!r}")
    return validate_extreal(float(token), name=name)  # type: ignore[arg-type]


def validate_vector(values: Iterable[float], *, name: str = "values") -> tuple[float, ...]:
    out = tuple(validate_extreal(v, name=name) for v in values)
    return out
