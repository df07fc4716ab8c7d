"""Integral functionals over finite atom spaces and their calculus.

For an integrand with sections f_i and weights mu_i, the functional is

    I(x) = sum_i mu_i * f_i(x_i),

and every convex-analytic operation on I reduces to per-atom operations:

* infimum over the whole product space  = weighted sum of per-atom infima;
* conjugate                      I*(y)  = sum_i mu_i * f_i*(y_i)
  (the weighted pairing <x, y> = sum_i mu_i x_i y_i makes the per-atom
  conjugate problem weight-free: mu_i multiplies both the linear term and
  the function term, so it cancels inside the per-atom supremum);
* subgradients, proximal points, Moreau envelopes, recession slopes:
  likewise per atom, with the same weight cancellation for the prox since
  the squared norm carries the same weights as the integral.

Every reduction here is cross-checked against an independent route: the
conjugate against a numeric supremum, the prox against a product-grid
scan, the envelope against its defining objective at the proximal point,
the recession slope against the difference-quotient limit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence, Union

import numpy as np

from .catalog import ScalarConvexFunction, SubdiffInterval
from .errors import CapabilityError, ConsistencyError
from .extreal import MINUS_INF, PLUS_INF, ext_gap
from .grid import GridFunction, prox_on_grid
from .integrand import (
    Integrand,
    NegatedSection,
    Section,
    SeparableProduct,
    pointwise_inf,
    section_value,
)
from .measure import DiscreteMeasureSpace, integrate, integrate_sup
from .scan import maximize_concave_1d
from .subspace import SubspaceSpec, restricted_infimum

CROSS_CHECK_TOL = 1e-9

Point = Union[float, tuple[float, ...]]


@dataclass(frozen=True)
class FunctionOnOmega:
    """A point of the product space: one value (scalar or vector) per atom."""

    values: tuple[Point, ...]

    def __init__(self, values: Sequence):
        vals = []
        for v in values:
            if isinstance(v, (tuple, list, np.ndarray)):
                entry = tuple(float(c) for c in v)
                if not all(math.isfinite(c) for c in entry):
                    raise ValueError("coordinates must be finite")
                vals.append(entry)
            else:
                v = float(v)
                if not math.isfinite(v):
                    raise ValueError("coordinates must be finite")
                vals.append(v)
        object.__setattr__(self, "values", tuple(vals))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Point:
        return self.values[i]

    def combine(self, other: "FunctionOnOmega", alpha: float) -> "FunctionOnOmega":
        """self + alpha * other, entrywise."""
        out = []
        for a, b in zip(self.values, other.values):
            if isinstance(a, tuple):
                out.append(tuple(ai + alpha * bi for ai, bi in zip(a, b)))
            else:
                out.append(a + alpha * b)
        return FunctionOnOmega(out)


def pairing(space: DiscreteMeasureSpace, x: FunctionOnOmega, y: FunctionOnOmega) -> float:
    """Weighted bilinear form sum_i mu_i * <x_i, y_i>."""
    total = 0.0
    for w, a, b in zip(space.weights, x.values, y.values):
        if isinstance(a, tuple):
            total += w * math.fsum(ai * bi for ai, bi in zip(a, b))
        else:
            total += w * a * b
    return total


def weighted_sq_distance(
    space: DiscreteMeasureSpace, x: FunctionOnOmega, y: FunctionOnOmega
) -> float:
    total = 0.0
    for w, a, b in zip(space.weights, x.values, y.values):
        if isinstance(a, tuple):
            total += w * math.fsum((ai - bi) ** 2 for ai, bi in zip(a, b))
        else:
            total += w * (a - b) ** 2
    return total


@dataclass(frozen=True)
class IntegralFunctional:
    """I(x) = integral of the per-atom sections, under one sign convention.

    Conjugate/prox/envelope/recession operations require certified
    nonempty domains: attach a primal witness (a point with integrable
    positive part) and, for the prox family, a dual witness for the
    conjugate sections.
    """

    phi: Integrand
    convention: str = "inf"
    witness: Optional[FunctionOnOmega] = field(default=None)
    dual_witness: Optional[FunctionOnOmega] = field(default=None)

    def __post_init__(self):
        if self.convention not in ("inf", "sup"):
            raise ValueError("convention must be 'inf' or 'sup'")

    @property
    def space(self) -> DiscreteMeasureSpace:
        return self.phi.space

    def section_values(self, x: FunctionOnOmega) -> list[float]:
        self.space.check_length(x.values, name="point")
        return [section_value(s, v) for s, v in zip(self.phi.sections, x.values)]

    def evaluate(self, x: FunctionOnOmega) -> float:
        vals = self.section_values(x)
        if self.convention == "sup":
            return integrate_sup(self.space, vals)
        return integrate(self.space, vals)

    def certify(self, xbar: FunctionOnOmega) -> "IntegralFunctional":
        """Attach a primal witness: integrable positive part at xbar."""
        vals = self.section_values(xbar)
        pos = [max(v, 0.0) for v in vals]
        if integrate(self.space, pos) == PLUS_INF:
            raise ValueError("witness rejected: positive part integrates to +inf")
        return replace(self, witness=xbar)

    def certify_dual(self, ybar: FunctionOnOmega) -> "IntegralFunctional":
        """Attach a dual witness: finite conjugate values at ybar."""
        sections = _require_convex_sections(self.phi)
        for i, (s, y) in enumerate(zip(sections, ybar.values)):
            if _conjugate_value(s, y) == PLUS_INF:
                raise ValueError(f"dual witness rejected at atom {i}")
        return replace(self, dual_witness=ybar)

    def _need_witness(self, dual: bool = False) -> None:
        if self.witness is None:
            raise ValueError(
                "this operation needs a certified domain point; call certify()"
            )
        if dual and self.dual_witness is None:
            raise ValueError(
                "this operation needs a certified dual point; call certify_dual()"
            )


def _require_convex_sections(phi: Integrand) -> tuple[Section, ...]:
    if not phi.convex:
        raise CapabilityError(
            "conjugate calculus requires sections with exact convex closed forms"
        )
    return phi.sections


def _conjugate_value(section: Section, y: Point) -> float:
    if isinstance(section, ScalarConvexFunction):
        return section.conjugate().value(float(y))
    if isinstance(section, SeparableProduct):
        total = 0.0
        for f, yi in zip(section.factors, y):  # type: ignore[arg-type]
            v = f.conjugate().value(float(yi))
            if v == PLUS_INF:
                return PLUS_INF
            total += v
        return total
    raise CapabilityError("no closed-form conjugate for this section class")


# ---------------------------------------------------------------------------
# numeric one-dimensional supremum: the independent route for conjugates
# ---------------------------------------------------------------------------


def numeric_conjugate(section, y: float) -> float:
    """sup_x (x*y - f(x)) using value evaluations only.

    The objective is concave on the section's domain, so the shared 1-d
    search brackets the maximum or detects divergence; grid sections take
    the exact finite maximum over their samples.
    """
    if isinstance(section, GridFunction):
        idx = section.finite_indices()
        return float(np.max(y * section.xs[idx] - section.vs[idx]))
    dom = section.domain()

    def h(x: float) -> float:
        v = section.value(x)
        return MINUS_INF if v == PLUS_INF else x * y - v

    return maximize_concave_1d(h, dom.lo, dom.hi, dom.lo_open, dom.hi_open)


def _numeric_conjugate_entry(section: Section, y: Point) -> float:
    if isinstance(section, SeparableProduct):
        total = 0.0
        for f, yi in zip(section.factors, y):  # type: ignore[arg-type]
            v = numeric_conjugate(f, float(yi))
            if v == PLUS_INF:
                return PLUS_INF
            total += v
        return total
    return numeric_conjugate(section, float(y))


# ---------------------------------------------------------------------------
# interchange of infimization / maximization with integration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InterchangeResult:
    lhs: float  # optimum over the subspace, by its dedicated search
    rhs: float  # integral of the per-atom optima
    gap: float
    optimizer: Optional[tuple] = None

    def to_json(self) -> dict:
        from .extreal import fmt

        return {"lhs": fmt(self.lhs), "rhs": fmt(self.rhs), "gap": fmt(self.gap)}


def interchange_inf(I: IntegralFunctional, spec: SubspaceSpec) -> InterchangeResult:
    """Compare inf over the subspace with the integral of per-atom infima.

    The right side integrates exact per-atom infima; the left side runs
    the subspace's dedicated minimizer.  The gap is nonnegative up to
    rounding for any subspace, and zero for truncation-closed ones.
    """
    values, _ = pointwise_inf(I.phi)
    rhs = integrate(I.space, values)
    lhs, minimizer = restricted_infimum(I.phi, spec)
    if math.isinf(lhs) or math.isinf(rhs):
        gap = 0.0 if lhs == rhs else math.copysign(PLUS_INF, 1 if lhs > rhs else -1)
    else:
        gap = lhs - rhs
    return InterchangeResult(lhs=lhs, rhs=rhs, gap=gap, optimizer=minimizer)


def _negate_section(section: Section) -> Section:
    if isinstance(section, NegatedSection):
        return section.inner
    if isinstance(section, (ScalarConvexFunction, GridFunction)):
        return NegatedSection(section)
    raise CapabilityError("maximization mirror supports scalar sections only")


def interchange_sup(I: IntegralFunctional, spec: SubspaceSpec) -> InterchangeResult:
    """Maximization mirror: run the minimization on the negated sections.

    sup of the integral equals minus the inf of the negated problem, side
    by side; the gap (rhs - lhs >= 0 here) is preserved by the negation.
    """
    negated = Integrand(I.space, [_negate_section(s) for s in I.phi.sections])
    res = interchange_inf(IntegralFunctional(negated), spec)
    return InterchangeResult(
        lhs=-res.lhs, rhs=-res.rhs, gap=res.gap, optimizer=res.optimizer
    )


# ---------------------------------------------------------------------------
# conjugate and subdifferential
# ---------------------------------------------------------------------------


def conjugate_functional(
    I: IntegralFunctional, y: FunctionOnOmega, *, cross_check: bool = True
) -> float:
    """I*(y) = sum_i mu_i * f_i*(y_i), checked against the direct supremum.

    The direct route maximizes mu_i * (x_i*y_i - f_i(x_i)) per atom with a
    value-only numeric search; the weight cancels inside the per-atom
    problem, so the two routes must agree to 1e-9 (exact on +inf).
    """
    I._need_witness()
    sections = _require_convex_sections(I.phi)
    I.space.check_length(y.values, name="dual point")
    formula_terms = [_conjugate_value(s, yi) for s, yi in zip(sections, y.values)]
    formula = integrate(I.space, formula_terms)
    if cross_check:
        direct_terms = [
            _numeric_conjugate_entry(s, yi) for s, yi in zip(sections, y.values)
        ]
        direct = integrate(I.space, direct_terms)
        if ext_gap(formula, direct) > CROSS_CHECK_TOL:
            raise ConsistencyError(
                f"conjugate routes disagree: formula={formula}, direct={direct}"
            )
    return formula


def _subdiff_interval(section: Section, x: Point) -> list[SubdiffInterval]:
    if isinstance(section, ScalarConvexFunction):
        return [section.subdifferential(float(x))]
    if isinstance(section, SeparableProduct):
        return [f.subdifferential(float(xi)) for f, xi in zip(section.factors, x)]
    raise CapabilityError("no subdifferential intervals for this section class")


def _conjugate_value_slack(f: ScalarConvexFunction, y: float, tol: float) -> tuple[float, float]:
    """(f*(y'), y') with y' = y nudged into dom f* when within tol.

    A dual point one rounding error outside a conjugate's domain (a prox
    residual at an interval-indicator corner, say) is a subgradient to
    within tol; clipping keeps the pairing route's tolerance semantics
    aligned with the interval route's.
    """
    conj = f.conjugate()
    v = conj.value(y)
    if v != PLUS_INF:
        return v, y
    dom = conj.domain()
    yc = min(max(y, dom.lo), dom.hi)
    if abs(yc - y) <= tol:
        vc = conj.value(yc)
        if vc != PLUS_INF:
            return vc, yc
    return v, y


def subdiff_check(
    I: IntegralFunctional, x: FunctionOnOmega, y: FunctionOnOmega, tol: float = 1e-9
) -> dict:
    """Is y a subgradient of I at x?  Two per-atom routes, both reported.

    Route one: the pairing gap f_i(x_i) + f_i*(y_i) - <x_i, y_i> is <= tol
    (zero exactly on subgradient pairs).  Route two: y_i lies in the
    closed subgradient interval, within tol.  The routes must agree on
    every atom; a probe sitting on the knife edge between them raises
    instead of guessing.
    """
    I._need_witness()
    sections = _require_convex_sections(I.phi)
    per_atom = []
    member = True
    for i, (s, xi, yi) in enumerate(zip(sections, x.values, y.values)):
        fx = section_value(s, xi)
        if fx == PLUS_INF:
            per_atom.append(
                {"atom": i, "gap": PLUS_INF, "member": False, "note": "x outside domain"}
            )
            member = False
            continue
        if isinstance(s, SeparableProduct):
            parts = [
                _conjugate_value_slack(f, float(c), tol)
                for f, c in zip(s.factors, yi)  # type: ignore[arg-type]
            ]
            fstar = math.fsum(p[0] for p in parts) if all(
                p[0] != PLUS_INF for p in parts
            ) else PLUS_INF
            pair_xy = math.fsum(a * p[1] for a, p in zip(xi, parts))  # type: ignore[arg-type]
        else:
            fstar, y_eff = _conjugate_value_slack(s, float(yi), tol)
            pair_xy = float(xi) * y_eff
        gap = PLUS_INF if fstar == PLUS_INF else fx + fstar - pair_xy
        fy_member = gap <= tol
        intervals = _subdiff_interval(s, xi)
        ys = list(yi) if isinstance(yi, tuple) else [float(yi)]
        iv_member = all(iv.contains(v, tol) for iv, v in zip(intervals, ys))
        if fy_member != iv_member:
            raise ConsistencyError(
                f"subgradient routes disagree at atom {i}: "
                f"pairing gap {gap} vs interval membership {iv_member}"
            )
        per_atom.append({"atom": i, "gap": gap, "member": fy_member})
        member = member and fy_member
    return {"member": member, "per_atom": per_atom}


# ---------------------------------------------------------------------------
# proximal calculus
# ---------------------------------------------------------------------------


def _prox_entry(section: Section, gamma: float, x: Point) -> Point:
    if isinstance(section, ScalarConvexFunction):
        return section.prox(gamma, float(x))
    if isinstance(section, GridFunction):
        return prox_on_grid(section, gamma, float(x))[0]
    if isinstance(section, SeparableProduct):
        return tuple(f.prox(gamma, float(xi)) for f, xi in zip(section.factors, x))
    raise CapabilityError("no proximal point for this section class")


def _envelope_entry(section: Section, gamma: float, x: Point) -> float:
    if isinstance(section, ScalarConvexFunction):
        return section.envelope(gamma, float(x))
    if isinstance(section, GridFunction):
        return prox_on_grid(section, gamma, float(x))[1]
    if isinstance(section, SeparableProduct):
        return math.fsum(
            f.envelope(gamma, float(xi)) for f, xi in zip(section.factors, x)
        )
    raise CapabilityError("no envelope for this section class")


def prox_functional(
    I: IntegralFunctional, gamma: float, x: FunctionOnOmega
) -> FunctionOnOmega:
    """Minimizer of I(p) + ||x - p||^2 / (2*gamma) in the weighted norm.

    The weight mu_i multiplies both the section and the squared distance,
    so it cancels per atom and the proximal point is weight-independent.
    """
    if not gamma > 0.0:
        raise ValueError("gamma must be > 0")
    I._need_witness(dual=True)
    for s in I.phi.sections:
        if isinstance(s, NegatedSection):
            raise CapabilityError("proximal calculus requires convex sections")
    return FunctionOnOmega(
        [_prox_entry(s, gamma, xi) for s, xi in zip(I.phi.sections, x.values)]
    )


def prox_brute_force(
    I: IntegralFunctional,
    gamma: float,
    x: FunctionOnOmega,
    nodes: int = 41,
    max_joint_points: int = 3_000_000,
) -> tuple[FunctionOnOmega, float]:
    """Oracle: minimize the weighted prox objective on a product grid.

    Value-only route (no closed-form prox anywhere).  Each coordinate gets
    ``nodes`` equispaced candidates on a window around x_i clipped to the
    section domain.  The joint grid is evaluated outright when it fits in
    ``max_joint_points``; beyond that the separable structure of the
    objective justifies scanning coordinates independently, which yields
    the same grid minimizer.  Capped at 6 total coordinates.
    """
    if not gamma > 0.0:
        raise ValueError("gamma must be > 0")
    dim = I.phi.dim
    total_coords = I.space.size * dim
    if total_coords > 6:
        raise CapabilityError("product-grid oracle capped at 6 total coordinates")

    def scalar_axes(section, xi: float) -> np.ndarray:
        if isinstance(section, GridFunction):
            return np.asarray(section.xs, dtype=float)
        dom = section.domain()
        w = max(2.0, 2.0 * gamma, 2.0 * abs(xi))
        lo = max(dom.lo, xi - w)
        hi = min(dom.hi, xi + w)
        if dom.lo_open and math.isfinite(dom.lo):
            lo = max(lo, dom.lo + 1e-9)
        if dom.hi_open and math.isfinite(dom.hi):
            hi = min(hi, dom.hi - 1e-9)
        if lo > hi:
            lo = hi = dom.clip(xi)
        return np.linspace(lo, hi, nodes)

    axes: list[np.ndarray] = []
    flat_sections: list = []
    flat_x: list[float] = []
    for s, xi in zip(I.phi.sections, x.values):
        if isinstance(s, SeparableProduct):
            for f, c in zip(s.factors, xi):  # type: ignore[arg-type]
                axes.append(scalar_axes(f, float(c)))
                flat_sections.append(f)
                flat_x.append(float(c))
        else:
            axes.append(scalar_axes(s, float(xi)))
            flat_sections.append(s)
            flat_x.append(float(xi))

    weights_flat: list[float] = []
    for w, s in zip(I.space.weights, I.phi.sections):
        weights_flat.extend([w] * (dim if isinstance(s, SeparableProduct) else 1))

    def coord_objective(k: int, t: float) -> float:
        v = section_value(flat_sections[k], t)
        if v == PLUS_INF:
            return PLUS_INF
        return weights_flat[k] * (v + (flat_x[k] - t) ** 2 / (2.0 * gamma))

    joint_size = 1
    for ax in axes:
        joint_size *= ax.size
    if joint_size <= max_joint_points:
        per_axis = [
            np.array([coord_objective(k, float(t)) for t in ax])
            for k, ax in enumerate(axes)
        ]
        total = per_axis[0]
        for part in per_axis[1:]:
            total = total[..., None] + part[None, ...].reshape(
                (1,) * total.ndim + (part.size,)
            )
        flat_idx = int(np.argmin(total))
        multi = np.unravel_index(flat_idx, total.shape)
        best = [float(axes[k][multi[k]]) for k in range(len(axes))]
        best_val = float(total[multi])
    else:
        best = []
        best_val = 0.0
        for k, ax in enumerate(axes):
            vals = np.array([coord_objective(k, float(t)) for t in ax])
            j = int(np.argmin(vals))
            best.append(float(ax[j]))
            best_val += float(vals[j])

    out: list[Point] = []
    pos = 0
    for s in I.phi.sections:
        if isinstance(s, SeparableProduct):
            out.append(tuple(best[pos : pos + dim]))
            pos += dim
        else:
            out.append(best[pos])
            pos += 1
    return FunctionOnOmega(out), best_val


def envelope_functional(
    I: IntegralFunctional, gamma: float, x: FunctionOnOmega
) -> float:
    """Weighted sum of per-atom envelopes, checked on the prox objective.

    The independent route evaluates I at the proximal point and adds the
    weighted squared distance; both must agree to 1e-9.
    """
    if not gamma > 0.0:
        raise ValueError("gamma must be > 0")
    I._need_witness(dual=True)
    per_atom = [
        _envelope_entry(s, gamma, xi) for s, xi in zip(I.phi.sections, x.values)
    ]
    formula = integrate(I.space, per_atom)
    p = prox_functional(I, gamma, x)
    direct = integrate(I.space, I.section_values(p)) + weighted_sq_distance(
        I.space, x, p
    ) / (2.0 * gamma)
    if ext_gap(formula, direct) > CROSS_CHECK_TOL * max(1.0, abs(formula)):
        raise ConsistencyError(
            f"envelope routes disagree: per-atom={formula}, objective={direct}"
        )
    return formula


# ---------------------------------------------------------------------------
# recession slope
# ---------------------------------------------------------------------------


def _recession_entry(section: Section, d: Point) -> float:
    if isinstance(section, ScalarConvexFunction):
        return section.recession(float(d))
    if isinstance(section, GridFunction):
        from .grid import recession as grid_recession

        return grid_recession(section, float(d))
    if isinstance(section, SeparableProduct):
        total = 0.0
        for f, di in zip(section.factors, d):  # type: ignore[arg-type]
            r = f.recession(float(di))
            if r == PLUS_INF:
                return PLUS_INF
            total += r
        return total
    raise CapabilityError("no recession slope for this section class")


def recession_functional(
    I: IntegralFunctional,
    d: FunctionOnOmega,
    z_dom: FunctionOnOmega,
    *,
    max_alpha_exp: int = 16,
) -> dict:
    """Asymptotic slope of I in direction d, from a point of its domain.

    The formula route integrates per-atom recession slopes.  The quotient
    route evaluates (I(z + a*d) - I(z)) / a along a = 1, 2, 4, ..., 2^16;
    convexity makes that sequence nondecreasing, which is asserted
    exactly, and every finite quotient must stay below the formula value.
    """
    I._need_witness()
    z_val = I.evaluate(z_dom)
    if not math.isfinite(z_val):
        raise ValueError("z_dom must lie in the domain of the functional")
    per_atom = [_recession_entry(s, di) for s, di in zip(I.phi.sections, d.values)]
    formula = integrate(I.space, per_atom)
    quotients = []
    alpha = 1.0
    for _ in range(max_alpha_exp + 1):
        val = I.evaluate(z_dom.combine(d, alpha))
        quotients.append(PLUS_INF if val == PLUS_INF else (val - z_val) / alpha)
        alpha *= 2.0
    for a, b in zip(quotients, quotients[1:]):
        # slack of a few ulps: monotonicity is exact in real arithmetic but
        # the evaluations round; the acceptance suite asserts it exactly on
        # probes (base point 0, doubling steps) where rounding scales away
        ok = (b == PLUS_INF) if a == PLUS_INF else b >= a - 1e-14 * max(1.0, abs(a))
        if not ok:
            raise ConsistencyError(f"difference quotients not nondecreasing: {a} > {b}")
    finite_q = [q for q in quotients if q != PLUS_INF]
    if finite_q and formula != PLUS_INF:
        slack = 1e-12 * max(1.0, abs(formula))
        if finite_q[-1] > formula + slack:
            raise ConsistencyError(
                f"quotient {finite_q[-1]} exceeds recession formula {formula}"
            )
    return {"value": formula, "quotients": quotients}


# ---------------------------------------------------------------------------
# pointwise minimizer characterization
# ---------------------------------------------------------------------------


def minimizer_pointwise_check(
    I: IntegralFunctional, z: FunctionOnOmega, tol: float = 1e-9
) -> dict:
    """Does z minimize I over the whole product space?

    Equivalent formulations, both computed: per atom, f_i(z_i) is within
    tol of the atom's infimum; globally, I(z) is within sum_i mu_i * tol
    of the integral of the infima.  The global excess bounds the per-atom
    excesses through the weights, and that consistency is asserted.
    """
    values, _ = pointwise_inf(I.phi)
    rhs = integrate(I.space, values)
    if rhs == MINUS_INF:
        raise ValueError("the functional is it unbounded below; no minimizer exists")
    per_atom = []
    is_min = True
    for i, (s, zi, inf_i) in enumerate(zip(I.phi.sections, z.values, values)):
        fz = section_value(s, zi)
        viol = PLUS_INF if fz == PLUS_INF else fz - inf_i
        ok = viol <= tol
        per_atom.append({"atom": i, "value": fz, "infimum": inf_i, "excess": viol, "pass": ok})
        is_min = is_min and ok
    total = I.evaluate(z)
    mu = I.space.weights
    global_gap = PLUS_INF if total == PLUS_INF else total - rhs
    if is_min and not global_gap <= len(mu) * tol * max(mu):
        raise ConsistencyError("per-atom minimality without global minimality")
    if (not is_min) and global_gap <= tol * min(mu):
        raise ConsistencyError("global minimality without per-atom minimality")
    return {"is_min": is_min, "per_atom": per_atom, "global_excess": global_gap}
