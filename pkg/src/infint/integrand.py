"""Atom-indexed families of sections.

An :class:`Integrand` pairs a measure space with one section per atom.  A
section is a catalog function (exact closed forms), a grid function
(sampled), a separable product of catalog entries (vector-valued points),
or a negation wrapper (used by the maximization mirror of the interchange
machinery).

The module also houses the epigraph sampler: a deterministic dyadic
enumeration that realizes, per atom, a sequence of epigraph points whose
closure is the section's epigraph.  The infimum over the sampled sequence
then converges to the true infimum, which is checkable against the closed
forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

import numpy as np

from .catalog import ScalarConvexFunction, from_json as catalog_from_json
from .errors import CapabilityError
from .extreal import MINUS_INF, PLUS_INF
from .grid import GridFunction
from .measure import DiscreteMeasureSpace


@dataclass(frozen=True)
class SeparableProduct:
    """Sum of independent scalar catalog sections: f(x) = sum_j f_j(x_j)."""

    factors: tuple[ScalarConvexFunction, ...]

    def __init__(self, factors: Sequence[ScalarConvexFunction]):
        factors = tuple(factors)
        if not factors:
            raise ValueError("separable product needs at least one factor")
        for f in factors:
            if not isinstance(f, ScalarConvexFunction):
                raise TypeError("separable factors must be catalog functions")
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self) -> int:
        return len(self.factors)

    def value(self, x: Sequence[float]) -> float:
        if len(x) != self.dim:
            raise ValueError(f"expected a point of R^{self.dim}")
        total = 0.0
        for f, xi in zip(self.factors, x):
            v = f.value(float(xi))
            if v == PLUS_INF:
                return PLUS_INF
            total += v
        return total

    def to_json(self) -> dict:
        return {"separable": [f.to_json() for f in self.factors]}


@dataclass(frozen=True)
class NegatedSection:
    """-f for a scalar section f; carrier for maximization problems."""

    inner: Union[ScalarConvexFunction, GridFunction]

    @property
    def dim(self) -> int:
        return 1

    def value(self, x: float) -> float:
        v = section_value(self.inner, x)
        return MINUS_INF if v == PLUS_INF else -v

    def to_json(self) -> dict:
        return {"negated": section_to_json(self.inner)}


Section = Union[ScalarConvexFunction, GridFunction, SeparableProduct, NegatedSection]


def section_dim(section: Section) -> int:
    return section.dim if isinstance(section, (SeparableProduct, NegatedSection)) else 1


def section_value(section: Section, x) -> float:
    if isinstance(section, ScalarConvexFunction):
        return section.value(float(x))
    if isinstance(section, GridFunction):
        return section.value_at(float(x))
    return section.value(x)


def section_infimum(section: Section) -> tuple[float, Optional[object]]:
    """(infimum, attaining point or None); grids scan with earliest-index ties."""
    if isinstance(section, ScalarConvexFunction):
        return section.infimum()
    if isinstance(section, GridFunction):
        j = int(np.argmin(section.vs))
        return float(section.vs[j]), float(section.xs[j])
    if isinstance(section, SeparableProduct):
        parts = [f.infimum() for f in section.factors]
        value = math.fsum(p[0] for p in parts) if all(
            p[0] != MINUS_INF for p in parts
        ) else MINUS_INF
        if any(p[1] is None for p in parts):
            return value, None
        return value, tuple(p[1] for p in parts)
    raise CapabilityError("infimum of a negated section is a supremum problem")


def is_caratheodory_section(section: Section) -> bool:
    """Finite-valued everywhere (hence continuous for these classes)."""
    if isinstance(section, ScalarConvexFunction):
        return section.finite_everywhere()
    if isinstance(section, GridFunction):
        return bool(np.all(np.isfinite(section.vs)))
    if isinstance(section, SeparableProduct):
        return all(f.finite_everywhere() for f in section.factors)
    return False


def section_to_json(section: Section) -> dict:
    if isinstance(section, GridFunction):
        return section.to_json()
    return section.to_json()


def section_from_json(doc: dict) -> Section:
    if "xs" in doc:
        return GridFunction.from_json(doc)
    if "separable" in doc:
        return SeparableProduct([catalog_from_json(d) for d in doc["separable"]])
    if "negated" in doc:
        inner = section_from_json(doc["negated"])
        if isinstance(inner, (SeparableProduct, NegatedSection)):
            raise ValueError("negation wraps scalar catalog or grid sections only")
        return NegatedSection(inner)
    return catalog_from_json(doc)


@dataclass(frozen=True)
class Integrand:
    """One section per atom of a finite measure space."""

    space: DiscreteMeasureSpace
    sections: tuple[Section, ...]

    def __init__(self, space: DiscreteMeasureSpace, sections: Sequence[Section]):
        sections = tuple(sections)
        space.check_length(sections, name="sections")
        dims = {section_dim(s) for s in sections}
        if len(dims) > 1:
            raise ValueError("all sections must share one point dimension")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "sections", sections)

    @property
    def dim(self) -> int:
        return section_dim(self.sections[0])

    @property
    def convex(self) -> bool:
        """True when every section carries exact convex closed forms."""
        return all(
            isinstance(s, ScalarConvexFunction)
            or (isinstance(s, SeparableProduct))
            for s in self.sections
        )

    @property
    def caratheodory(self) -> bool:
        return all(is_caratheodory_section(s) for s in self.sections)

    def to_json(self) -> dict:
        return {
            "space": self.space.to_json(),
            "sections": [section_to_json(s) for s in self.sections],
        }

    @staticmethod
    def from_json(doc: dict) -> "Integrand":
        return Integrand(
            DiscreteMeasureSpace.from_json(doc["space"]),
            [section_from_json(d) for d in doc["sections"]],
        )


def build_caratheodory(
    space: DiscreteMeasureSpace, sections: Sequence[Section]
) -> Integrand:
    """Integrand whose sections are finite-valued everywhere.

    Sections with an interval (or half-line) effective domain are rejected
    here; they are still accepted by the plain :class:`Integrand`
    constructor.
    """
    phi = Integrand(space, sections)
    for i, s in enumerate(phi.sections):
        if not is_caratheodory_section(s):
            raise ValueError(
                f"section {i} is not finite-valued everywhere; "
                "not admissible for the continuous-section path"
            )
    return phi


@dataclass(frozen=True)
class NormalitySample:
    """Per-atom epigraph sequences: pair n gives one epigraph point per atom."""

    points: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]
    budget: int

    def pair(self, n: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
        return self.points[n]


@dataclass(frozen=True)
class IntegrabilityWitness:
    """A point of the function space with integrable positive part."""

    values: tuple


def _dyadic_offsets(level: int) -> list[float]:
    """Epigraph offsets used at one abscissa level.

    Lags behind the abscissa resolution so that graph points dominate the
    early budget; the lag schedule still refines to a dense set of offsets.
    """
    h = max(0, (level - 4) // 2)
    if h == 0:
        return [0.0]
    step = 0.5**h
    return [i * step for i in range(h * 2**h + 1)]


def _dyadic_abscissae(section: ScalarConvexFunction, level: int) -> list[float]:
    """Admissible points k / 2^level inside a window growing with the level.

    Levels above zero enumerate odd numerators only (even ones already
    appeared); ordering is increasing |k| with the positive sign first.
    """
    dom = section.domain()
    radius = float(level + 2)
    scale = 2.0**level
    out: list[float] = []
    ks: list[int] = []
    top = int(radius * scale)
    if level == 0:
        ks.append(0)
    for k in range(1, top + 1):
        if level > 0 and k % 2 == 0:
            continue
        ks.append(k)
    for k in ks:
        for signed in ((k, -k) if k > 0 else (k,)):
            x = signed / scale
            if dom.admits(x):
                out.append(x)
    return out


def _catalog_pair_stream(section: ScalarConvexFunction) -> Iterator[tuple[float, float]]:
    dom = section.domain()
    if math.isfinite(dom.lo) and dom.lo == dom.hi:
        # single-point domain: dyadics may never hit it, enumerate directly
        x = dom.lo
        fx = section.value(x)
        level = 0
        while True:
            for q in _dyadic_offsets(level):
                yield x, fx + q
            level += 1
        return
    level = 0
    while True:
        offsets = _dyadic_offsets(level)
        for x in _dyadic_abscissae(section, level):
            fx = section.value(x)
            for q in offsets:
                yield x, fx + q
        level += 1


def _grid_pair_stream(section: GridFunction) -> Iterator[tuple[float, float]]:
    """Sample points cycled against a dense dyadic offset sequence."""
    idx = section.finite_indices()
    round_no = 0
    while True:
        for q in _dyadic_offsets(round_no + 5):  # start refining immediately
            for i in idx:
                yield float(section.xs[i]), float(section.vs[i]) + q
        round_no += 1


def _pair_stream(section: Section) -> Iterator[tuple[float, float]]:
    if isinstance(section, ScalarConvexFunction):
        return _catalog_pair_stream(section)
    if isinstance(section, GridFunction):
        if not np.all(np.isfinite(section.vs)):
            raise CapabilityError(
                "epigraph sampling supports finite-valued grid sections only"
            )
        return _grid_pair_stream(section)
    raise CapabilityError(
        f"epigraph sampling not supported for {type(section).__name__}"
    )


def epigraph_dense_sample(phi: Integrand, budget: int) -> NormalitySample:
    """Deterministic per-atom epigraph sequences of the given length.

    Every emitted pair (x, r) satisfies r >= section(x) exactly, and the
    emitted set grows dense in the epigraph as the budget increases.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1: an epigraph sequence cannot be empty")
    streams = [_pair_stream(s) for s in phi.sections]
    points = []
    for _ in range(budget):
        xs, rs = [], []
        for stream in streams:
            x, r = next(stream)
            xs.append(x)
            rs.append(r)
        points.append((tuple(xs), tuple(rs)))
    return NormalitySample(points=tuple(points), budget=budget)


def verify_normality_inf(
    phi: Integrand, sample: NormalitySample, tol: float
) -> list[dict]:
    """Per atom: does the sampled sequence reach the section's infimum?

    Compares min_n section(x_n) with the exact infimum (closed form for
    catalog sections, a scan for grids) and reports the gap against the
    caller's tolerance.
    """
    report = []
    for i, section in enumerate(phi.sections):
        sampled = min(
            section_value(section, xs[i]) for xs, _ in sample.points
        )
        true_inf, _ = section_infimum(section)
        if true_inf == MINUS_INF:
            gap = PLUS_INF
        else:
            gap = sampled - true_inf
        report.append(
            {
                "atom": phi.space.atoms[i],
                "sampled_inf": sampled,
                "true_inf": true_inf,
                "gap": gap,
                "pass": gap <= tol,
            }
        )
    return report


def pointwise_inf(phi: Integrand) -> tuple[list[float], list[Optional[object]]]:
    """Per-atom infima and attaining points (None where unattained)."""
    values, argmins = [], []
    for section in phi.sections:
        v, x = section_infimum(section)
        values.append(v)
        argmins.append(x)
    return values, argmins
