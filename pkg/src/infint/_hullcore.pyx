# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hull kernels: monotone-chain lower hull and the merge-walk
evaluation of max_j (y*hx[j] - hv[j]) over sorted query slopes.

Mirrors the fallback module ``_hullcore_py``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport isfinite

cnp.import_array()


def lower_hull_indices(object xs_in, object vs_in):
    """Indices of the extreme points of the lower convex hull."""
    cdef const double[::1] xs = np.ascontiguousarray(xs_in, dtype=np.float64)
    cdef const double[::1] vs = np.ascontiguousarray(vs_in, dtype=np.float64)
    cdef Py_ssize_t n = xs.shape[0]
    cdef cnp.ndarray[cnp.intp_t, ndim=1] hull = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t k = 0
    cdef Py_ssize_t i, a, b
    cdef double cross
    for i in range(n):
        if not isfinite(vs[i]):
            continue
        while k >= 2:
            a = hull[k - 2]
            b = hull[k - 1]
            cross = (xs[b] - xs[a]) * (vs[i] - vs[a]) - (vs[b] - vs[a]) * (xs[i] - xs[a])
            if cross <= 0.0:
                k -= 1
            else:
                break
        hull[k] = i
        k += 1
    return hull[:k].copy()


def conjugate_on_hull(object hx_in, object hv_in, object ys_in):
    """max_j (y*hx[j] - hv[j]) for each query slope, queries ascending."""
    cdef const double[::1] hx = np.ascontiguousarray(hx_in, dtype=np.float64)
    cdef const double[::1] hv = np.ascontiguousarray(hv_in, dtype=np.float64)
    cdef const double[::1] ys = np.ascontiguousarray(ys_in, dtype=np.float64)
    cdef Py_ssize_t k = hx.shape[0]
    cdef Py_ssize_t m = ys.shape[0]
    if k == 0:
        raise ValueError("conjugate_on_hull needs at least one vertex")
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m, dtype=np.float64)
    cdef Py_ssize_t j = 0
    cdef Py_ssize_t q
    cdef double y
    for q in range(m):
        y = ys[q]
        # advance while the next vertex is at least as good for this slope
        while j < k - 1 and y * (hx[j + 1] - hx[j]) >= hv[j + 1] - hv[j]:
            j += 1
        out[q] = y * hx[j] - hv[j]
    return out
