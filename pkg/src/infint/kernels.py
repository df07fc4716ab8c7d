"""Kernel selection: compiled core when available, pure Python otherwise.

``infint.kernels.IMPLEMENTATION`` reports which one is active; both expose
``lower_hull_indices`` and ``conjugate_on_hull`` with identical contracts.
``benchmarks/bench_hull.py`` compares the two side by side.
"""

from __future__ import annotations

try:
    from . import _hullcore as _impl

    COMPILED = True
    IMPLEMENTATION = "compiled"
except ImportError:  # pragma: no cover - exercised only on fallback installs
    from . import _hullcore_py as _impl

    COMPILED = False
    IMPLEMENTATION = "python"

lower_hull_indices = _impl.lower_hull_indices
conjugate_on_hull = _impl.conjugate_on_hull
