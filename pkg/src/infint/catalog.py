"""Closed-form scalar convex functions.

Every entry is a proper, lower semicontinuous, convex function on the real
line with exact formulas for its value, Legendre conjugate, proximal point,
subdifferential interval, recession slope, and infimum.  This module is the
oracle layer: numerical routines elsewhere are checked against it, so the
conjugate table is closed by dedicated entries (support functions of
intervals, the entropy y*ln(y) - y, the conjugate of -ln) rather than by
grid approximation.

Conjugate pairs:

    quadratic          <-> quadratic
    w*|x|              <-> indicator of [-w, w]
    indicator + const  <-> interval support function - const
    affine             <-> point indicator
    exp                <-> entropy
    -ln                <-> -1 - ln(-y)
    w*|x|^p / p        <-> w^(1/(1-p)) * |y|^q / q,  1/p + 1/q = 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .extreal import MINUS_INF, PLUS_INF


class ProxSolveError(RuntimeError):
    """The iterative prox solver failed to reach tolerance."""


@dataclass(frozen=True)
class SubdiffInterval:
    """Closed interval of subgradients; ``empty`` marks the empty set."""

    lower: float
    upper: float
    empty: bool = False

    def __post_init__(self):
        if not self.empty and not self.lower <= self.upper:
            raise ValueError("nonempty subgradient interval needs lower <= upper")

    def contains(self, y: float, tol: float = 0.0) -> bool:
        if self.empty:
            return False
        return self.lower - tol <= y <= self.upper + tol

    @staticmethod
    def point(g: float) -> "SubdiffInterval":
        return SubdiffInterval(g, g)

    @staticmethod
    def nothing() -> "SubdiffInterval":
        return SubdiffInterval(0.0, 0.0, empty=True)


@dataclass(frozen=True)
class DomainBounds:
    """Effective domain as an interval, with open/closed endpoint flags."""

    lo: float
    hi: float
    lo_open: bool
    hi_open: bool

    def clip(self, x: float) -> Optional[float]:
        """Nearest domain point to ``x``, or None for an empty clip."""
        lo, hi = self.lo, self.hi
        p = min(max(x, lo), hi)
        if self.lo_open and p <= lo:
            p = lo + max(1e-9, abs(lo) * 1e-9) if math.isfinite(lo) else p
        if self.hi_open and p >= hi and math.isfinite(hi):
            p = hi - max(1e-9, abs(hi) * 1e-9)
        return p

    def admits(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if self.lo_open and x == self.lo:
            return False
        if self.hi_open and x == self.hi:
            return False
        return True


def _solve_increasing(
    g: Callable[[float], float],
    dg: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-12,
    max_iter: int = 100,
) -> float:
    """Root of an increasing function on [lo, hi] with g(lo)<=0<=g(hi).

    Newton steps safeguarded by bisection; converges to absolute
    tolerance ``tol`` on the root or raises :class:`ProxSolveError`.
    """
    glo, ghi = g(lo), g(hi)
    if glo > 0.0 or ghi < 0.0:
        raise ProxSolveError(f"root not bracketed: g({lo})={glo}, g({hi})={ghi}")
    if glo == 0.0:
        return lo
    if ghi == 0.0:
        return hi
    p = 0.5 * (lo + hi)
    for _ in range(max_iter):
        gp = g(p)
        if gp == 0.0:
            return p
        if gp > 0.0:
            hi = p
        else:
            lo = p
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        d = dg(p)
        step_ok = False
        if d > 0.0 and math.isfinite(d):
            q = p - gp / d
            if lo < q < hi:
                p = q
                step_ok = True
        if not step_ok:
            p = 0.5 * (lo + hi)
    raise ProxSolveError(f"no convergence to {tol} within {max_iter} iterations")


class ScalarConvexFunction:
    """Base for the catalog; subclasses fill in the closed forms."""

    kind: str = ""

    # -- contract -----------------------------------------------------
    def value(self, x: float) -> float:
        raise NotImplementedError

    def conjugate(self) -> "ScalarConvexFunction":
        raise NotImplementedError

    def prox(self, gamma: float, x: float) -> float:
        raise NotImplementedError

    def subdifferential(self, x: float) -> SubdiffInterval:
        raise NotImplementedError

    def recession(self, d: float) -> float:
        raise NotImplementedError

    def infimum(self) -> tuple[float, Optional[float]]:
        """(inf value, attaining point or None when unattained)."""
        raise NotImplementedError

    def domain(self) -> DomainBounds:
        raise NotImplementedError

    def finite_everywhere(self) -> bool:
        return False

    def params(self) -> list[float]:
        return []

    # -- shared -------------------------------------------------------
    def __call__(self, x: float) -> float:
        return self.value(x)

    def envelope(self, gamma: float, x: float) -> float:
        """Moreau envelope: objective value at the proximal point."""
        _check_gamma(gamma)
        p = self.prox(gamma, x)
        return self.value(p) + (x - p) ** 2 / (2.0 * gamma)

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params()}

    def __repr__(self) -> str:
        ps = ", ".join(format(p, "g") for p in self.params())
        return f"{type(self).__name__}({ps})"


def _check_gamma(gamma: float) -> None:
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ValueError(f"prox parameter must be finite and > 0, got {gamma}")


_FULL_LINE = DomainBounds(MINUS_INF, PLUS_INF, True, True)


@dataclass(frozen=True, repr=False)
class Quadratic(ScalarConvexFunction):
    """a/2 * x^2 + b*x + c with a > 0."""

    a: float
    b: float
    c: float = 0.0
    kind = "quadratic"

    def __post_init__(self):
        if not self.a > 0.0:
            raise ValueError("quadratic needs a > 0")

    def value(self, x):
        return 0.5 * self.a * x * x + self.b * x + self.c

    def conjugate(self):
        return Quadratic(1.0 / self.a, -self.b / self.a, self.b**2 / (2.0 * self.a) - self.c)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return (x - gamma * self.b) / (1.0 + gamma * self.a)

    def subdifferential(self, x):
        return SubdiffInterval.point(self.a * x + self.b)

    def recession(self, d):
        return 0.0 if d == 0.0 else PLUS_INF

    def infimum(self):
        return self.c - self.b**2 / (2.0 * self.a), -self.b / self.a

    def domain(self):
        return _FULL_LINE

    def finite_everywhere(self):
        return True

    def params(self):
        return [self.a, self.b, self.c]


@dataclass(frozen=True, repr=False)
class AbsoluteValue(ScalarConvexFunction):
    """w * |x - center| with w > 0."""

    w: float = 1.0
    center: float = 0.0
    kind = "abs"

    def __post_init__(self):
        if not self.w > 0.0:
            raise ValueError("weighted absolute value needs w > 0")

    def value(self, x):
        return self.w * abs(x - self.center)

    def conjugate(self):
        # sup_x (x*y - w|x - c|) = c*y on [-w, w], +inf outside
        return IndicatorInterval(-self.w, self.w, 0.0, slope=self.center)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        u = x - self.center
        t = gamma * self.w
        return self.center + math.copysign(max(abs(u) - t, 0.0), u)

    def subdifferential(self, x):
        if x > self.center:
            return SubdiffInterval.point(self.w)
        if x < self.center:
            return SubdiffInterval.point(-self.w)
        return SubdiffInterval(-self.w, self.w)

    def recession(self, d):
        return self.w * abs(d)

    def infimum(self):
        return 0.0, self.center

    def domain(self):
        return _FULL_LINE

    def finite_everywhere(self):
        return True

    def params(self):
        return [self.w, self.center]


@dataclass(frozen=True, repr=False)
class IndicatorInterval(ScalarConvexFunction):
    """offset + slope*x on [lo, hi], +inf outside.

    The affine part keeps the conjugate table closed: conjugates of affine
    functions are point indicators with a constant shift, and conjugates
    of shifted absolute values are interval indicators with a linear term.
    """

    lo: float
    hi: float
    offset: float = 0.0
    slope: float = 0.0
    kind = "indicator"

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi):
            raise ValueError("indicator needs finite lo <= hi")

    def value(self, x):
        return self.offset + self.slope * x if self.lo <= x <= self.hi else PLUS_INF

    def conjugate(self):
        return PiecewiseAffine(self.lo, self.hi, -self.offset, center=self.slope)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return min(max(x - gamma * self.slope, self.lo), self.hi)

    def subdifferential(self, x):
        if x < self.lo or x > self.hi:
            return SubdiffInterval.nothing()
        lower = MINUS_INF if x == self.lo else self.slope
        upper = PLUS_INF if x == self.hi else self.slope
        return SubdiffInterval(lower, upper)

    def recession(self, d):
        return 0.0 if d == 0.0 else PLUS_INF

    def infimum(self):
        if self.slope > 0.0:
            arg = self.lo
        elif self.slope < 0.0:
            arg = self.hi
        else:
            arg = min(max(0.0, self.lo), self.hi)
        return self.offset + self.slope * arg, arg

    def domain(self):
        return DomainBounds(self.lo, self.hi, False, False)

    def params(self):
        return [self.lo, self.hi, self.offset, self.slope]


@dataclass(frozen=True, repr=False)
class Affine(ScalarConvexFunction):
    """s*x + b."""

    s: float
    b: float = 0.0
    kind = "affine"

    def value(self, x):
        return self.s * x + self.b

    def conjugate(self):
        return IndicatorInterval(self.s, self.s, -self.b)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return x - gamma * self.s

    def subdifferential(self, x):
        return SubdiffInterval.point(self.s)

    def recession(self, d):
        return self.s * d

    def infimum(self):
        if self.s == 0.0:
            return self.b, 0.0
        return MINUS_INF, None

    def domain(self):
        return _FULL_LINE

    def finite_everywhere(self):
        return True

    def params(self):
        return [self.s, self.b]


@dataclass(frozen=True, repr=False)
class Exponential(ScalarConvexFunction):
    """exp(x)."""

    kind = "exp"

    def value(self, x):
        try:
            return math.exp(x)
        except OverflowError:
            return PLUS_INF

    def conjugate(self):
        return EntropyLike()

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return _exp_prox(gamma, x)

    def subdifferential(self, x):
        return SubdiffInterval.point(self.value(x))

    def recession(self, d):
        return 0.0 if d <= 0.0 else PLUS_INF

    def infimum(self):
        return 0.0, None

    def domain(self):
        return _FULL_LINE

    def finite_everywhere(self):
        return True

    def params(self):
        return []


def _exp_prox(gamma: float, x: float) -> float:
    """Solve p + gamma*exp(p) = x by safeguarded Newton.

    The lower bracket end starts at min(x, 0) - 1 and is pushed left until
    the residual changes sign; the residual tends to -inf as p -> -inf, so
    the expansion always terminates.
    """

    def g(p):
        return p + gamma * math.exp(p) - x

    def dg(p):
        return 1.0 + gamma * math.exp(p)

    hi = max(x, 0.0)
    lo = min(x, 0.0) - 1.0
    width = 1.0
    while g(lo) > 0.0:
        lo -= width
        width *= 2.0
        if width > 1e300:  # pragma: no cover - unreachable for finite x
            raise ProxSolveError("exp prox bracket expansion diverged")
    return _solve_increasing(g, dg, lo, hi)


@dataclass(frozen=True, repr=False)
class NegLog(ScalarConvexFunction):
    """-ln(x) on (0, inf), +inf elsewhere."""

    kind = "neglog"

    def value(self, x):
        return -math.log(x) if x > 0.0 else PLUS_INF

    def conjugate(self):
        return NegLogConjugate()

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return 0.5 * (x + math.sqrt(x * x + 4.0 * gamma))

    def subdifferential(self, x):
        if x <= 0.0:
            return SubdiffInterval.nothing()
        return SubdiffInterval.point(-1.0 / x)

    def recession(self, d):
        return 0.0 if d >= 0.0 else PLUS_INF

    def infimum(self):
        return MINUS_INF, None

    def domain(self):
        return DomainBounds(0.0, PLUS_INF, True, True)

    def params(self):
        return []


@dataclass(frozen=True, repr=False)
class Power(ScalarConvexFunction):
    """w * |x|^p / p with p > 1, w > 0.

    Even integer exponents are the usual primal entries; conjugation maps
    exponent p to q = p/(p-1), so fractional exponents in (1, 2] appear as
    conjugates and are supported uniformly.
    """

    p: float
    w: float = 1.0
    kind = "power"

    def __post_init__(self):
        if not (self.p > 1.0 and math.isfinite(self.p)):
            raise ValueError("power exponent must satisfy p > 1")
        if not self.w > 0.0:
            raise ValueError("power coefficient needs w > 0")

    def value(self, x):
        return self.w * abs(x) ** self.p / self.p

    def conjugate(self):
        q = self.p / (self.p - 1.0)
        return Power(q, self.w ** (-1.0 / (self.p - 1.0)))

    def prox(self, gamma, x):
        _check_gamma(gamma)
        if x == 0.0:
            return 0.0
        mag = _power_prox_nonneg(self.p, self.w, gamma, abs(x))
        return math.copysign(mag, x)

    def subdifferential(self, x):
        if x == 0.0:
            return SubdiffInterval.point(0.0)
        return SubdiffInterval.point(math.copysign(self.w * abs(x) ** (self.p - 1.0), x))

    def recession(self, d):
        return 0.0 if d == 0.0 else PLUS_INF

    def infimum(self):
        return 0.0, 0.0

    def domain(self):
        return _FULL_LINE

    def finite_everywhere(self):
        return True

    def params(self):
        return [self.p, self.w]


def _power_prox_nonneg(p: float, w: float, gamma: float, x: float) -> float:
    """Root of t + gamma*w*t^(p-1) = x on [0, x], for x > 0."""

    def g(t):
        return t + gamma * w * t ** (p - 1.0) - x

    def dg(t):
        if t == 0.0:
            return 1.0 if p >= 2.0 else PLUS_INF
        return 1.0 + gamma * w * (p - 1.0) * t ** (p - 2.0)

    return _solve_increasing(g, dg, 0.0, x)


@dataclass(frozen=True, repr=False)
class PiecewiseAffine(ScalarConvexFunction):
    """max(lo*(y - center), hi*(y - center)) + offset.

    With center = 0 this is the interval support function plus a constant;
    the center makes the class closed under conjugation against the
    linear-on-interval indicators.
    """

    lo: float
    hi: float
    offset: float = 0.0
    center: float = 0.0
    kind = "piecewise_affine"

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi) and self.lo <= self.hi):
            raise ValueError("piecewise affine needs finite lo <= hi")

    def value(self, x):
        u = x - self.center
        return max(self.lo * u, self.hi * u) + self.offset

    def conjugate(self):
        return IndicatorInterval(self.lo, self.hi, -self.offset, slope=self.center)

    def prox(self, gamma, x):
        _check_gamma(gamma)
        u = x - self.center
        return self.center + u - gamma * min(max(u / gamma, self.lo), self.hi)

    def subdifferential(self, x):
        if x > self.center:
            return SubdiffInterval.point(self.hi)
        if x < self.center:
            return SubdiffInterval.point(self.lo)
        return SubdiffInterval(self.lo, self.hi)

    def recession(self, d):
        return max(self.lo * d, self.hi * d)

    def infimum(self):
        if self.lo <= 0.0 <= self.hi:
            return self.offset, self.center
        return MINUS_INF, None

    def domain(self):
        return _FULL_LINE

    def finite_everywhere(self):
        return True

    def params(self):
        return [self.lo, self.hi, self.offset, self.center]


@dataclass(frozen=True, repr=False)
class EntropyLike(ScalarConvexFunction):
    """y*ln(y) - y on (0, inf), 0 at 0, +inf for y < 0: the conjugate of exp."""

    kind = "entropy"

    def value(self, x):
        if x < 0.0:
            return PLUS_INF
        if x == 0.0:
            return 0.0
        return x * math.log(x) - x

    def conjugate(self):
        return Exponential()

    def prox(self, gamma, x):
        # Moreau route through exp: the proximal point solves
        # p + gamma*ln(p) = x and equals exp(prox of exp at x/gamma with
        # parameter 1/gamma), which is strictly positive by construction.
        _check_gamma(gamma)
        return math.exp(_exp_prox(1.0 / gamma, x / gamma))

    def subdifferential(self, x):
        if x <= 0.0:
            # at 0 the one-sided slope is -inf, so no finite subgradient
            return SubdiffInterval.nothing()
        return SubdiffInterval.point(math.log(x))

    def recession(self, d):
        return 0.0 if d == 0.0 else PLUS_INF

    def infimum(self):
        return -1.0, 1.0

    def domain(self):
        return DomainBounds(0.0, PLUS_INF, False, True)

    def params(self):
        return []


@dataclass(frozen=True, repr=False)
class NegLogConjugate(ScalarConvexFunction):
    """-1 - ln(-y) on (-inf, 0), +inf elsewhere: the conjugate of -ln."""

    kind = "neglog_conjugate"

    def value(self, x):
        return -1.0 - math.log(-x) if x < 0.0 else PLUS_INF

    def conjugate(self):
        return NegLog()

    def prox(self, gamma, x):
        _check_gamma(gamma)
        return 0.5 * (x - math.sqrt(x * x + 4.0 * gamma))

    def subdifferential(self, x):
        if x >= 0.0:
            return SubdiffInterval.nothing()
        return SubdiffInterval.point(-1.0 / x)

    def recession(self, d):
        return 0.0 if d <= 0.0 else PLUS_INF

    def infimum(self):
        return MINUS_INF, None

    def domain(self):
        return DomainBounds(MINUS_INF, 0.0, True, True)

    def params(self):
        return []


_KINDS = {
    cls.kind: cls
    for cls in (
        Quadratic,
        AbsoluteValue,
        IndicatorInterval,
        Affine,
        Exponential,
        NegLog,
        Power,
        PiecewiseAffine,
        EntropyLike,
        NegLogConjugate,
    )
}


def from_json(doc: dict) -> ScalarConvexFunction:
    """Build a catalog entry from {"kind": ..., "params": [...]}."""
    try:
        kind = doc["kind"]
    except (TypeError, KeyError):
        raise ValueError("catalog entry needs a 'kind' field") from None
    cls = _KINDS.get(kind)
    if cls is None:
        raise ValueError(f"unknown catalog kind {kind!r}")
    params = [float(p) for p in doc.get("params", [])]
    try:
        return cls(*params)
    except TypeError as exc:
        raise ValueError(f"bad parameter count for {kind!r}: {params}") from exc
