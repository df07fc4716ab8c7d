"""Function subspaces over an atom space, and their closure properties.

A subspace spec is a symbolic description of a set of atom-indexed
vectors with a membership predicate.  Two closure properties drive the
interchange results:

* truncation closure ("compliance"): for every atom subset A and every
  bounded vector z, the truncation 1_A * z stays in the subspace;
* decomposability: gluing 1_A * z to a member x on the complement stays
  in the subspace.  Decomposability implies truncation closure because
  the zero vector is a member.

On a finite atom space with finitely many finite-valued probes, image
compactness/boundedness clauses degenerate: every probe qualifies, so the
two decomposability variants (bounded-image and compact-closure-image)
run the same evidence-based enumeration.  Checkers enumerate all 2^m atom
subsets exhaustively and a structured-plus-seeded probe family, so a
"compliant" verdict is evidence over that census, while a counterexample
is an exact certificate that replays through the predicate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .catalog import ScalarConvexFunction
from .errors import CapabilityError, ConsistencyError
from .extreal import MINUS_INF, PLUS_INF
from .grid import GridFunction
from .integrand import (
    Integrand,
    NegatedSection,
    SeparableProduct,
    pointwise_inf,
    section_infimum,
    section_value,
)
from .measure import DiscreteMeasureSpace, integrate
from .scan import minimize_convex_1d

MAX_ENUM_ATOMS = 20
_PROBE_SCALE = 8.0


@dataclass(frozen=True)
class SubspaceSpec:
    """Tagged subspace description with a membership predicate.

    kinds: "full", "constants", "piecewise_constant" (with a partition of
    atom indices into cells), "zero_outside" (with a support index set),
    and "bounded_by" (sup-norm ball of radius ``bound``) -- the last is
    not a vector subspace and serves as a negative control.
    """

    kind: str
    cells: tuple[frozenset[int], ...] = field(default=())
    support: frozenset[int] = field(default=frozenset())
    bound: float = 0.0

    def __post_init__(self):
        if self.kind not in (
            "full",
            "constants",
            "piecewise_constant",
            "zero_outside",
            "bounded_by",
        ):
            raise ValueError(f"unknown subspace kind {self.kind!r}")
        if self.kind == "piecewise_constant":
            seen: set[int] = set()
            for cell in self.cells:
                if not cell or (seen & cell):
                    raise ValueError("cells must be nonempty and disjoint")
                seen |= cell
        if self.kind == "bounded_by" and not self.bound > 0.0:
            raise ValueError("bounded_by needs a positive radius")

    # -- constructors ---------------------------------------------------
    @staticmethod
    def full() -> "SubspaceSpec":
        return SubspaceSpec("full")

    @staticmethod
    def constants() -> "SubspaceSpec":
        return SubspaceSpec("constants")

    @staticmethod
    def piecewise_constant(cells: Sequence[Sequence[int]]) -> "SubspaceSpec":
        return SubspaceSpec(
            "piecewise_constant", cells=tuple(frozenset(c) for c in cells)
        )

    @staticmethod
    def zero_outside(support: Sequence[int]) -> "SubspaceSpec":
        return SubspaceSpec("zero_outside", support=frozenset(support))

    @staticmethod
    def bounded_by(bound: float) -> "SubspaceSpec":
        return SubspaceSpec("bounded_by", bound=float(bound))

    def is_vector_subspace(self) -> bool:
        return self.kind != "bounded_by"

    def to_json(self) -> dict:
        doc: dict = {"kind": self.kind}
        if self.kind == "piecewise_constant":
            doc["cells"] = [sorted(c) for c in self.cells]
        if self.kind == "zero_outside":
            doc["support"] = sorted(self.support)
        if self.kind == "bounded_by":
            doc["bound"] = self.bound
        return doc

    @staticmethod
    def from_json(doc: dict) -> "SubspaceSpec":
        kind = doc.get("kind")
        if kind == "piecewise_constant":
            return SubspaceSpec.piecewise_constant(doc["cells"])
        if kind == "zero_outside":
            return SubspaceSpec.zero_outside(doc["support"])
        if kind == "bounded_by":
            return SubspaceSpec.bounded_by(doc["bound"])
        return SubspaceSpec(str(kind))


def _entries(x) -> tuple:
    values = getattr(x, "values", x)
    return tuple(values)


def is_member(spec: SubspaceSpec, x) -> bool:
    """Membership predicate; ``x`` is any atom-indexed sequence."""
    vals = _entries(x)
    if spec.kind == "full":
        return True
    if spec.kind == "constants":
        return all(v == vals[0] for v in vals)
    if spec.kind == "piecewise_constant":
        covered: set[int] = set()
        for cell in spec.cells:
            ref = None
            for i in sorted(cell):
                covered.add(i)
                if ref is None:
                    ref = vals[i]
                elif vals[i] != ref:
                    return False
        # atoms outside every cell behave as singleton cells
        return True
    if spec.kind == "zero_outside":
        def is_zero(v):
            return all(c == 0.0 for c in v) if isinstance(v, tuple) else v == 0.0

        return all(is_zero(vals[i]) for i in range(len(vals)) if i not in spec.support)
    if spec.kind == "bounded_by":
        def mag(v):
            return max(abs(c) for c in v) if isinstance(v, tuple) else abs(v)

        return all(mag(v) <= spec.bound for v in vals)
    raise CapabilityError(f"no membership predicate for {spec.kind}")


@dataclass(frozen=True)
class ComplianceReport:
    compliant: bool
    counterexample: Optional[dict]
    census: dict

    def replay(self, spec: SubspaceSpec) -> bool:
        """Re-run the recorded counterexample; True means it still fails."""
        if self.counterexample is None:
            return False
        A = set(self.counterexample["A"])
        z = self.counterexample["z"]
        truncated = tuple(z[i] if i in A else 0.0 for i in range(len(z)))
        return not is_member(spec, truncated)


def _probe_vectors(m: int, probes: int, seed: int) -> list[tuple[float, ...]]:
    """Structured probes (basis, ones, ramp) then seeded uniform draws."""
    out: list[tuple[float, ...]] = []
    for i in range(m):
        out.append(tuple(1.0 if j == i else 0.0 for j in range(m)))
    out.append(tuple(1.0 for _ in range(m)))
    out.append(tuple(float(j + 1) for j in range(m)))
    rng = np.random.default_rng(seed)
    for _ in range(probes):
        out.append(tuple(float(v) for v in rng.uniform(-_PROBE_SCALE, _PROBE_SCALE, m)))
    return out


def _check_enum_size(space: DiscreteMeasureSpace) -> None:
    if space.size > MAX_ENUM_ATOMS:
        raise CapabilityError(
            f"subset enumeration capped at {MAX_ENUM_ATOMS} atoms "
            f"(got {space.size}); sample subsets instead"
        )


def compliance_check(
    spec: SubspaceSpec,
    space: DiscreteMeasureSpace,
    probes: int = 32,
    seed: int = 0,
) -> ComplianceReport:
    """Search for a truncation 1_A * z that leaves the subspace.

    All 2^m subsets are enumerated (m <= 20); the first counterexample in
    (subset bitmask, probe index) order is reported, so the result is
    deterministic and parallel scans must reduce to the same witness.
    Every finite-valued z on finitely many atoms has bounded image, so no
    boundedness filter is applied to the probes.
    """
    _check_enum_size(space)
    m = space.size
    zs = _probe_vectors(m, probes, seed)
    for mask in range(2**m):
        A = [i for i in range(m) if mask >> i & 1]
        for p_idx, z in enumerate(zs):
            truncated = tuple(z[i] if i in A else 0.0 for i in range(m))
            if not is_member(spec, truncated):
                return ComplianceReport(
                    compliant=False,
                    counterexample={"A": A, "z": list(z), "probe_index": p_idx},
                    census={"subsets": mask + 1, "probes": len(zs)},
                )
    return ComplianceReport(
        compliant=True,
        counterexample=None,
        census={"subsets": 2**m, "probes": len(zs)},
    )


def decomposability_check(
    spec: SubspaceSpec,
    space: DiscreteMeasureSpace,
    variant: str = "rockafellar",
    probes: int = 32,
    seed: int = 0,
) -> ComplianceReport:
    """Search for a glued vector 1_A * z + 1_{A^c} * x outside the subspace.

    ``x`` ranges over membership-filtered probes with the zero vector
    first, so any counterexample found with x = 0 doubles as a truncation
    counterexample; the implication "decomposable => truncation-closed"
    is asserted against :func:`compliance_check` on every call.
    """
    if variant not in ("rockafellar", "valadier"):
        raise ValueError("variant must be 'rockafellar' or 'valadier'")
    _check_enum_size(space)
    m = space.size
    zs = _probe_vectors(m, probes, seed)
    xs = [tuple(0.0 for _ in range(m))]
    xs += [x for x in _probe_vectors(m, probes, seed + 1) if is_member(spec, x)]
    result = None
    for mask in range(2**m):
        A = [i for i in range(m) if mask >> i & 1]
        done = False
        for p_idx, z in enumerate(zs):
            for x_idx, x in enumerate(xs):
                glued = tuple(z[i] if i in A else x[i] for i in range(m))
                if not is_member(spec, glued):
                    result = ComplianceReport(
                        compliant=False,
                        counterexample={
                            "A": A,
                            "z": list(z),
                            "x": list(x),
                            "probe_index": p_idx,
                            "member_index": x_idx,
                            "variant": variant,
                        },
                        census={"subsets": mask + 1, "probes": len(zs), "members": len(xs)},
                    )
                    done = True
                    break
            if done:
                break
        if done:
            break
    if result is None:
        result = ComplianceReport(
            compliant=True,
            counterexample=None,
            census={"subsets": 2**m, "probes": len(zs), "members": len(xs)},
        )
    trunc = compliance_check(spec, space, probes, seed)
    if result.compliant and not trunc.compliant:
        raise ConsistencyError(
            "decomposability verdict contradicts truncation closure: "
            f"{trunc.counterexample} should refute both"
        )
    return result


# ---------------------------------------------------------------------------
# restricted infima
# ---------------------------------------------------------------------------


def _constants_objective(phi: Integrand, indices: Sequence[int]):
    weights = phi.space.weights

    def g(c: float) -> float:
        total = 0.0
        for i in indices:
            v = section_value(phi.sections[i], c)
            if v == PLUS_INF:
                return PLUS_INF
            total += weights[i] * v
        return total

    return g


def _constants_infimum(
    phi: Integrand, indices: Sequence[int]
) -> tuple[float, Optional[float]]:
    """inf over a common scalar value c of sum_i mu_i * f_i(c)."""
    sections = [phi.sections[i] for i in indices]
    for s in sections:
        if isinstance(s, (SeparableProduct, NegatedSection)):
            raise CapabilityError(
                "constants minimizer supports scalar convex/grid sections only"
            )
    g = _constants_objective(phi, indices)
    grids = [s for s in sections if isinstance(s, GridFunction)]
    if grids:
        candidates = grids[0].xs
        for other in grids[1:]:
            candidates = np.intersect1d(candidates, other.xs)
        candidates = [float(c) for c in candidates]
        if not candidates:
            return PLUS_INF, None
        best = min(candidates, key=g)
        return g(best), (best if g(best) < PLUS_INF else None)
    lo, hi = MINUS_INF, PLUS_INF
    lo_open = hi_open = True
    for s in sections:
        dom = s.domain()
        if dom.lo > lo:
            lo, lo_open = dom.lo, dom.lo_open
        elif dom.lo == lo:
            lo_open = lo_open or dom.lo_open
        if dom.hi < hi:
            hi, hi_open = dom.hi, dom.hi_open
        elif dom.hi == hi:
            hi_open = hi_open or dom.hi_open
    if lo > hi or (lo == hi and (lo_open or hi_open)):
        return PLUS_INF, None
    return minimize_convex_1d(g, lo, hi, lo_open, hi_open)


def _bounded_infimum_scalar(section, weight, bound) -> float:
    if isinstance(section, GridFunction):
        mask = np.abs(section.xs) <= bound
        if not np.any(mask):
            return PLUS_INF
        v = float(np.min(section.vs[mask]))
        return PLUS_INF if v == PLUS_INF else weight * v
    if isinstance(section, ScalarConvexFunction):
        dom = section.domain()
        val, _ = minimize_convex_1d(
            lambda c: section.value(c) if abs(c) <= bound else PLUS_INF,
            max(dom.lo, -bound),
            min(dom.hi, bound),
            dom.lo_open and dom.lo >= -bound,
            dom.hi_open and dom.hi <= bound,
        )
        return val if not math.isfinite(val) else weight * val
    raise CapabilityError("bounded-ball search supports scalar sections only")


def restricted_infimum(
    phi: Integrand, spec: SubspaceSpec
) -> tuple[float, Optional[tuple]]:
    """Infimum of x -> sum_i mu_i * f_i(x_i) over the subspace.

    Each kind has a dedicated minimizer: pointwise argmin assembly for the
    full space, a one-dimensional convex search for constants (per cell
    for piecewise constants), pinning for zero-outside, and per-atom
    interval minimization for the bounded ball.  Returns the value and an
    attaining point when one exists.
    """
    space = phi.space
    if spec.kind == "full":
        values, argmins = pointwise_inf(phi)
        if any(v == MINUS_INF for v in values):
            return MINUS_INF, None
        if all(a is not None for a in argmins):
            point = tuple(argmins)
            return integrate(space, [section_value(s, a) for s, a in zip(phi.sections, point)]), point
        return integrate(space, values), None
    if spec.kind == "constants":
        value, c = _constants_infimum(phi, range(space.size))
        point = tuple(c for _ in range(space.size)) if c is not None else None
        return value, point
    if spec.kind == "piecewise_constant":
        covered = set()
        for cell in spec.cells:
            covered |= cell
        cells = [sorted(c) for c in spec.cells]
        cells += [[i] for i in range(space.size) if i not in covered]
        total = 0.0
        assembled: list[Optional[float]] = [None] * space.size
        saw_minus = False
        for cell in cells:
            value, c = _constants_infimum(phi, cell)
            if value == PLUS_INF:
                return PLUS_INF, None
            if value == MINUS_INF:
                saw_minus = True
            for i in cell:
                assembled[i] = c
            total += value if math.isfinite(value) else 0.0
        if saw_minus:
            return MINUS_INF, None
        if all(a is not None for a in assembled):
            return total, tuple(assembled)
        return total, None
    if spec.kind == "zero_outside":
        values: list[float] = []
        assembled = []
        attained = True
        for i, section in enumerate(phi.sections):
            if i in spec.support:
                v, a = section_infimum(section)
                values.append(v)
                assembled.append(a)
                attained = attained and a is not None
            else:
                zero = tuple(0.0 for _ in range(phi.dim)) if phi.dim > 1 else 0.0
                values.append(section_value(section, zero))
                assembled.append(zero)
        value = integrate(space, values)
        return value, (tuple(assembled) if attained and math.isfinite(value) else None)
    if spec.kind == "bounded_by":
        if phi.dim != 1:
            raise CapabilityError("bounded-ball search supports scalar sections only")
        parts = [
            _bounded_infimum_scalar(s, w, spec.bound)
            for s, w in zip(phi.sections, space.weights)
        ]
        if any(p == PLUS_INF for p in parts):
            return PLUS_INF, None
        if any(p == MINUS_INF for p in parts):
            return MINUS_INF, None
        return math.fsum(parts), None
    raise CapabilityError(f"no dedicated minimizer for subspace kind {spec.kind!r}")
