"""Pure-Python hull kernels: fallback used when the compiled core is absent.

Same contracts as the Cython module ``_hullcore``; the monotone-chain scan
is a plain Python loop, the slope lookup is vectorized with searchsorted.
"""

from __future__ import annotations

import numpy as np


def lower_hull_indices(xs: np.ndarray, vs: np.ndarray) -> np.ndarray:
    """Indices of the extreme points of the lower convex hull.

    ``xs`` must be strictly increasing; entries with non-finite ``vs`` are
    skipped.  Collinear interior points are dropped, so consecutive hull
    slopes are strictly increasing.
    """
    xs = np.asarray(xs, dtype=np.float64)
    vs = np.asarray(vs, dtype=np.float64)
    finite = np.flatnonzero(np.isfinite(vs))
    hull: list[int] = []
    for i in finite:
        xi = xs[i]
        vi = vs[i]
        while len(hull) >= 2:
            a = hull[-2]
            b = hull[-1]
            cross = (xs[b] - xs[a]) * (vi - vs[a]) - (vs[b] - vs[a]) * (xi - xs[a])
            if cross <= 0.0:
                hull.pop()
            else:
                break
        hull.append(int(i))
    return np.asarray(hull, dtype=np.intp)


def conjugate_on_hull(
    hx: np.ndarray, hv: np.ndarray, ys_sorted: np.ndarray
) -> np.ndarray:
    """max_j (y*hx[j] - hv[j]) for each query slope, queries ascending.

    ``hx``/``hv`` are hull vertex coordinates with strictly increasing edge
    slopes, so the maximizing vertex index is nondecreasing in y and a
    binary search on the edge slopes finds it.
    """
    hx = np.asarray(hx, dtype=np.float64)
    hv = np.asarray(hv, dtype=np.float64)
    ys = np.asarray(ys_sorted, dtype=np.float64)
    if hx.size == 0:
        raise ValueError("conjugate_on_hull needs at least one vertex")
    if hx.size == 1:
        return ys * hx[0] - hv[0]
    slopes = np.diff(hv) / np.diff(hx)
    j = np.searchsorted(slopes, ys, side="right")
    return ys * hx[j] - hv[j]
