"""Numerical transforms on sampled extended-real functions.

A :class:`GridFunction` stores finitely many samples (x_i, v_i) with
strictly increasing abscissae; +inf entries mark points outside the
effective domain, and the function is +inf everywhere off the sample set
(indicator extension).  Consequences of that representation:

* the largest convex minorant is the lower convex hull of the finite
  samples, so the double transform f** is simply hull evaluation;
* the conjugate max_i (y*x_i - v_i) is finite at every slope;
* the recession slope is 0 in direction 0 and +inf in every other
  direction, since the effective domain is bounded.

The conjugate comes in two routes on purpose: ``legendre_transform`` runs
on hull kernels in near-linear time, ``legendre_brute_force`` is the
quadratic oracle it is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .extreal import MINUS_INF, PLUS_INF, parse

_EPS = 1e-12


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GridFunction:
    """Sampled function: +inf off the sample set, no -inf samples."""

    xs: np.ndarray
    vs: np.ndarray

    def __init__(self, xs: Sequence[float], vs: Sequence[float]):
        xs = _readonly(xs)
        vs = _readonly(vs)
        if xs.ndim != 1 or xs.shape != vs.shape:
            raise ValueError("xs and vs must be 1-d arrays of equal length")
        if xs.size < 2:
            raise ValueError("a grid function needs at least two samples")
        if not np.all(np.isfinite(xs)):
            raise ValueError("abscissae must be finite")
        if not np.all(np.diff(xs) > 0.0):
            raise ValueError("abscissae must be strictly increasing")
        if np.any(np.isnan(vs)) or np.any(vs == MINUS_INF):
            raise ValueError("values must be in (-inf, +inf]")
        if not np.any(np.isfinite(vs)):
            raise ValueError("at least one sample value must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "vs", vs)

    @property
    def size(self) -> int:
        return int(self.xs.size)

    def finite_indices(self) -> np.ndarray:
        return np.flatnonzero(np.isfinite(self.vs))

    def value_at(self, x: float) -> float:
        """Sample value at x; +inf when x is not a sample point."""
        i = np.searchsorted(self.xs, x)
        if i < self.size and self.xs[i] == x:
            return float(self.vs[i])
        return PLUS_INF

    def is_convex_positioned(self, tol: float = 0.0) -> bool:
        """True when the finite samples already lie on their lower hull."""
        idx = self.finite_indices()
        hull = kernels.lower_hull_indices(self.xs, self.vs)
        if idx.size == hull.size and np.array_equal(idx, hull):
            return True
        hullform = lower_convex_hull(self)
        return all(
            self.vs[i] <= hullform.evaluate(self.xs[i]) + tol for i in idx
        )

    @staticmethod
    def sample(fn, lo: float, hi: float, n: int) -> "GridFunction":
        """Sample a callable on n equispaced points of [lo, hi]."""
        xs = np.linspace(lo, hi, n)
        return GridFunction(xs, [fn(float(x)) for x in xs])

    def to_json(self) -> dict:
        return {
            "xs": [float(x) for x in self.xs],
            "vs": ["inf" if v == PLUS_INF else float(v) for v in self.vs],
        }

    @staticmethod
    def from_json(doc: dict) -> "GridFunction":
        return GridFunction(doc["xs"], [parse(v, name="grid value") for v in doc["vs"]])


@dataclass(frozen=True)
class HullForm:
    """Lower convex hull of a grid function's finite samples."""

    indices: np.ndarray  # positions of the vertices in the source grid
    hx: np.ndarray
    hv: np.ndarray
    slopes: np.ndarray  # edge slopes, strictly increasing

    def evaluate(self, x: float) -> float:
        """Largest convex minorant at x: +inf outside the vertex span."""
        hx, hv = self.hx, self.hv
        if x < hx[0] or x > hx[-1]:
            return PLUS_INF
        if hx.size == 1:
            return float(hv[0])
        return float(np.interp(x, hx, hv))


def lower_convex_hull(f: GridFunction) -> HullForm:
    idx = kernels.lower_hull_indices(f.xs, f.vs)
    hx = f.xs[idx]
    hv = f.vs[idx]
    slopes = np.diff(hv) / np.diff(hx) if idx.size > 1 else np.empty(0)
    return HullForm(indices=idx, hx=hx, hv=hv, slopes=_readonly(slopes))


def legendre_transform(f: GridFunction, ys: Sequence[float]) -> np.ndarray:
    """Discrete conjugate max_i (y*x_i - v_i) via the hull kernels.

    Near-linear: O(n) hull construction plus a single merge walk over the
    sorted query slopes.  Agrees with :func:`legendre_brute_force` to
    within accumulation error (checked at 1e-9 in the suite).
    """
    ys = np.asarray(ys, dtype=np.float64)
    hull = lower_convex_hull(f)
    order = np.argsort(ys, kind="stable")
    sorted_vals = kernels.conjugate_on_hull(hull.hx, hull.hv, ys[order])
    out = np.empty_like(sorted_vals)
    out[order] = sorted_vals
    return out


def legendre_brute_force(f: GridFunction, ys: Sequence[float]) -> np.ndarray:
    """Oracle conjugate: direct max over all finite samples per query."""
    ys = np.asarray(ys, dtype=np.float64)
    idx = f.finite_indices()
    xs = f.xs[idx]
    vs = f.vs[idx]
    out = np.empty(ys.size, dtype=np.float64)
    step = max(1, int(2e7) // max(1, xs.size))
    for start in range(0, ys.size, step):
        chunk = ys[start : start + step]
        out[start : start + step] = np.max(
            chunk[:, None] * xs[None, :] - vs[None, :], axis=1
        )
    return out


def biconjugate(f: GridFunction) -> GridFunction:
    """Double transform f** evaluated back on f's own grid.

    Equals the lower-hull evaluation at every sample point: +inf outside
    the span of the finite samples, chordal values inside.
    """
    hull = lower_convex_hull(f)
    return GridFunction(f.xs, [hull.evaluate(float(x)) for x in f.xs])


def prox_on_grid(f: GridFunction, gamma: float, x: float) -> tuple[float, float]:
    """Grid point minimizing v_i + (x - x_i)^2 / (2*gamma), and the value.

    Exact for the sampled function; ties break to the earliest index.
    """
    if not gamma > 0.0:
        raise ValueError("gamma must be > 0")
    obj = f.vs + (x - f.xs) ** 2 / (2.0 * gamma)
    j = int(np.argmin(obj))
    return float(f.xs[j]), float(obj[j])


def moreau_envelope(
    f: GridFunction, gamma: float, query_xs: Sequence[float]
) -> np.ndarray:
    """Envelope values min_i (v_i + (x - x_i)^2 / (2*gamma)) per query."""
    return np.array([prox_on_grid(f, gamma, float(x))[1] for x in query_xs])


def recession(f: GridFunction, d: float) -> float:
    """Asymptotic slope in direction d.

    The sampled function has a bounded effective domain, so the slope is 0
    at d = 0 and +inf otherwise; :func:`recession_quotients` realizes the
    defining limit and confirms this.
    """
    return 0.0 if d == 0.0 else PLUS_INF


def recession_quotients(f: GridFunction, d: float) -> list[float]:
    """Difference quotients (f(z + a*d) - f(z)) / a along a = 1, 2, 4, ...

    z is the first finite sample; the doubling stops once a*|d| exceeds
    the grid span (every later quotient is +inf as well).
    """
    z_idx = int(f.finite_indices()[0])
    z = float(f.xs[z_idx])
    fz = float(f.vs[z_idx])
    span = float(f.xs[-1] - f.xs[0])
    quotients = []
    alpha = 1.0
    while True:
        val = f.value_at(z + alpha * d)
        quotients.append(PLUS_INF if val == PLUS_INF else (val - fz) / alpha)
        if d == 0.0 or alpha * abs(d) > span:
            break
        alpha *= 2.0
    return quotients
