"""Finite weighted atom spaces and integration conventions.

A :class:`DiscreteMeasureSpace` is a finite list of atoms with strictly
positive masses.  Because no atom is null, "almost everywhere" statements
collapse to "for every atom", and the essential infimum of a family of
atom-indexed vectors is the plain coordinatewise minimum.

Two integration conventions are provided:

* :func:`integrate` -- the sum, except that any +inf entry forces +inf
  (the positive part already integrates to +inf on an atom of positive
  mass); otherwise any -inf entry forces -inf.
* :func:`integrate_sup` -- the mirror convention used when maximizing:
  any -inf entry forces -inf.

Under these rules the undefined sum (+inf) + (-inf) is never formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .extreal import MINUS_INF, PLUS_INF, validate_extreal


class DimensionError(ValueError):
    """Vector length does not match the number of atoms."""


@dataclass(frozen=True)
class DiscreteMeasureSpace:
    """Finite measure space: ordered atom labels with positive weights.

    ``chain`` is an optional increasing sequence of index sets whose union
    covers all atoms (an exhaustion by finite-mass pieces; on a finite
    space the trivial chain with a single full set always works and is the
    default).
    """

    atoms: tuple[str, ...]
    weights: tuple[float, ...]
    chain: tuple[frozenset[int], ...] = field(default=())

    def __init__(
        self,
        atoms: Sequence[str] | int,
        weights: Sequence[float],
        chain: Sequence[Sequence[int]] | None = None,
    ):
        if isinstance(atoms, int):
            atoms = tuple(f"w{i}" for i in range(atoms))
        atoms = tuple(str(a) for a in atoms)
        if len(atoms) < 1:
            raise ValueError("a measure space needs at least one atom")
        w = tuple(float(x) for x in weights)
        if len(w) != len(atoms):
            raise DimensionError(f"{len(atoms)} atoms but {len(w)} weights")
        for x in w:
            if not (math.isfinite(x) and x > 0.0):
                raise ValueError(f"atom weights must be finite and > 0, got {x}")
        if chain is None:
            ch: tuple[frozenset[int], ...] = (frozenset(range(len(atoms))),)
        else:
            ch = tuple(frozenset(int(i) for i in part) for part in chain)
            if not ch:
                raise ValueError("chain, when given, must be nonempty")
            all_idx = set(range(len(atoms)))
            for part in ch:
                if not part <= all_idx:
                    raise ValueError("chain sets must contain valid atom indices")
            for a, b in zip(ch, ch[1:]):
                if not a <= b:
                    raise ValueError("chain must be increasing under inclusion")
            if set().union(*ch) != all_idx:
                raise ValueError("chain must cover every atom")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "chain", ch)

    @property
    def size(self) -> int:
        return len(self.atoms)

    def total_mass(self) -> float:
        return math.fsum(self.weights)

    def check_length(self, values: Sequence, *, name: str = "values") -> None:
        if len(values) != self.size:
            raise DimensionError(
                f"{name} has length {len(values)}, expected {self.size}"
            )

    def to_json(self) -> dict:
        return {
            "atoms": list(self.atoms),
            "weights": list(self.weights),
            "chain": [sorted(part) for part in self.chain],
        }

    @staticmethod
    def from_json(doc: dict) -> "DiscreteMeasureSpace":
        return DiscreteMeasureSpace(
            doc["atoms"], doc["weights"], doc.get("chain")
        )


def integrate(space: DiscreteMeasureSpace, values: Sequence[float]) -> float:
    """Weighted sum of extended reals; any +inf wins, then any -inf."""
    space.check_length(values)
    vals = [validate_extreal(v) for v in values]
    if any(v == PLUS_INF for v in vals):
        return PLUS_INF
    if any(v == MINUS_INF for v in vals):
        return MINUS_INF
    return math.fsum(w * v for w, v in zip(space.weights, vals))


def integrate_sup(space: DiscreteMeasureSpace, values: Sequence[float]) -> float:
    """Mirror convention for maximization: any -inf entry forces -inf."""
    space.check_length(values)
    vals = [validate_extreal(v) for v in values]
    if any(v == MINUS_INF for v in vals):
        return MINUS_INF
    if any(v == PLUS_INF for v in vals):
        return PLUS_INF
    return math.fsum(w * v for w, v in zip(space.weights, vals))


def essential_infimum(
    space: DiscreteMeasureSpace, family: Sequence[Sequence[float]]
) -> tuple[float, ...]:
    """Coordinatewise infimum of a nonempty family of atom-indexed vectors.

    With every atom of positive mass this is the unique representative of
    the essential infimum, and it is attained as the min of the finite
    subfamily formed by one per-coordinate minimizer each.
    """
    if len(family) == 0:
        raise ValueError("essential infimum of an empty family")
    for vec in family:
        space.check_length(vec, name="family member")
    return tuple(
        min(validate_extreal(vec[i]) for vec in family) for i in range(space.size)
    )


def partition_min(
    space: DiscreteMeasureSpace, family: Sequence[Sequence[float]]
) -> tuple[list[frozenset[int]], tuple[float, ...]]:
    """Disjoint index sets on which each member attains the running minimum.

    Returns ``(parts, minimum)`` where ``parts[i]`` collects the atoms
    assigned to ``family[i]``, the sets are pairwise disjoint, their union
    is all atoms, and ``sum_i 1_{parts[i]} * family[i]`` reconstructs the
    coordinatewise minimum bit-exactly.  Ties go to the earliest index:
    the inductive construction keeps the running min wherever it is <=
    the next member.
    """
    if len(family) == 0:
        raise ValueError("partition_min needs at least one vector")
    for vec in family:
        space.check_length(vec, name="family member")
        for v in vec:
            if not math.isfinite(v):
                raise ValueError("partition_min requires finite values")
    m = space.size
    owner = [0] * m
    current = [float(v) for v in family[0]]
    for idx in range(1, len(family)):
        nxt = family[idx]
        for j in range(m):
            if not current[j] <= nxt[j]:
                owner[j] = idx
                current[j] = float(nxt[j])
    parts = [frozenset(j for j in range(m) if owner[j] == i) for i in range(len(family))]
    return parts, tuple(current)
