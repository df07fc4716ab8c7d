"""One-dimensional search over convex extended-real functions.

Shared by the constants-subspace minimizer and the numeric conjugate
oracle.  Uses value evaluations only, so callers can treat it as a route
independent of any closed form.
"""

from __future__ import annotations

import math
from typing import Callable, Optional

from .extreal import MINUS_INF, PLUS_INF

_VALUE_DIVERGENCE = -1e10
_FAR = 2.0**40
_POSITION_CAP = 1e300


def minimize_convex_1d(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    lo_open: bool = True,
    hi_open: bool = True,
) -> tuple[float, Optional[float]]:
    """Infimum of a convex g over an interval, and a minimizer when attained.

    The doubling expansion pins the minimum between the point before the
    last improvement and the first rejected candidate (a bracketing
    triple), then golden-section reduces the bracket.  Divergence is
    decided on values: dropping below -1e10 means -inf, while vanishing
    improvements at astronomic arguments mean a finite limit approached at
    infinity (value returned, minimizer None).  Open finite endpoints are
    approached a hair inside.
    """
    inner_lo = lo if not (lo_open and math.isfinite(lo)) else lo + 1e-12
    inner_hi = hi if not (hi_open and math.isfinite(hi)) else hi - 1e-12
    if inner_lo > inner_hi:
        return PLUS_INF, None

    def clamped(c: float) -> float:
        return min(max(c, inner_lo), inner_hi)

    c0 = clamped(0.0)
    if g(c0) == PLUS_INF:
        c0 = clamped(
            0.5 * (max(inner_lo, -_VALUE_DIVERGENCE) + min(inner_hi, _VALUE_DIVERGENCE))
        )
    if g(c0) == PLUS_INF:
        return PLUS_INF, None

    def expand(direction: float):
        """('bracket', a, b) or ('diverged',) or ('limit', value)."""
        prev, best = c0, c0
        gbest = g(best)
        improvement = PLUS_INF
        step = 1.0
        while True:
            pos = best + direction * step
            if abs(pos) > _POSITION_CAP:
                # still descending at the edge of representable numbers:
                # vanishing gains mean a finite limit, anything else is
                # treated as unbounded below (log-slow descent included)
                if improvement <= 1e-13 * max(1.0, abs(gbest)):
                    return ("limit", gbest)
                return ("diverged",)
            cand = clamped(pos)
            if cand == best:  # domain wall
                return ("bracket", min(prev, best), max(prev, best))
            gc = g(cand)
            if gc < gbest:
                improvement = gbest - gc
                prev, best, gbest = best, cand, gc
                step *= 2.0
                if gbest < _VALUE_DIVERGENCE:
                    return ("diverged",)
                if abs(best) > _FAR and improvement <= 1e-13 * max(1.0, abs(gbest)):
                    return ("limit", gbest)
            else:
                return ("bracket", min(prev, cand), max(prev, cand))

    if g(clamped(c0 + 1.0)) < g(c0):
        outcome = expand(+1.0)
    elif g(clamped(c0 - 1.0)) < g(c0):
        outcome = expand(-1.0)
    else:
        outcome = ("bracket", clamped(c0 - 1.0), clamped(c0 + 1.0))
    if outcome[0] == "diverged":
        return MINUS_INF, None
    if outcome[0] == "limit":
        return outcome[1], None
    _, a, b = outcome
    bracket_a, bracket_b = a, b
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(200):
        if b - a <= 1e-13 * max(1.0, abs(a), abs(b)):
            break
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - inv_phi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + inv_phi * (b - a)
            gd = g(d)
    best = min((a, c, d, b), key=g)
    gbest = g(best)
    # a bracket that is flat end to end pins the value but not a minimizer
    # (e.g. a decreasing function that bottoms out in the floats)
    span = bracket_b - bracket_a
    if span > 4.0 and max(g(bracket_a), g(bracket_b)) - gbest <= 1e-12 * max(
        1.0, abs(gbest)
    ):
        return gbest, None
    return gbest, best


def maximize_concave_1d(
    h: Callable[[float], float],
    lo: float,
    hi: float,
    lo_open: bool = True,
    hi_open: bool = True,
) -> float:
    """Supremum of a concave h (with -inf off-domain) over an interval."""

    def g(x: float) -> float:
        v = h(x)
        return PLUS_INF if v == MINUS_INF else -v

    value, _ = minimize_convex_1d(g, lo, hi, lo_open, hi_open)
    if value == PLUS_INF:
        raise ValueError("concave maximization over an empty domain")
    return -value
