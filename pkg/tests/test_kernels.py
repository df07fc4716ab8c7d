"""Equivalence of the compiled hull kernels and the pure-Python fallback."""

import numpy as np
import pytest

from infint import _hullcore_py, kernels
from infint.extreal import PLUS_INF

compiled = pytest.importorskip("infint._hullcore", reason="compiled core not built")


def random_case(seed, n=200, with_inf=True):
    rng = np.random.default_rng(seed)
    xs = np.sort(rng.uniform(-20, 20, n))
    xs = xs + np.arange(n) * 1e-9  # enforce strict increase
    vs = rng.uniform(-5, 5, n)
    if with_inf:
        vs[rng.random(n) < 0.2] = PLUS_INF
        vs[0] = 0.0
    return xs, vs


@pytest.mark.parametrize("seed", range(25))
def test_hull_indices_identical(seed):
    xs, vs = random_case(seed)
    assert np.array_equal(
        compiled.lower_hull_indices(xs, vs), _hullcore_py.lower_hull_indices(xs, vs)
    )


@pytest.mark.parametrize("seed", range(25))
def test_conjugate_values_close(seed):
    xs, vs = random_case(seed, with_inf=False)
    idx = compiled.lower_hull_indices(xs, vs)
    hx, hv = xs[idx], vs[idx]
    ys = np.sort(np.random.default_rng(seed + 1000).uniform(-30, 30, 500))
    a = compiled.conjugate_on_hull(hx, hv, ys)
    b = _hullcore_py.conjugate_on_hull(hx, hv, ys)
    assert np.all(np.abs(a - b) <= 1e-9 * np.maximum(1.0, np.abs(a)))


def test_single_vertex():
    hx = np.array([2.0])
    hv = np.array([1.0])
    ys = np.array([-1.0, 0.0, 3.0])
    for impl in (compiled, _hullcore_py):
        assert np.allclose(impl.conjugate_on_hull(hx, hv, ys), ys * 2.0 - 1.0)


def test_selected_implementation_is_compiled():
    assert kernels.IMPLEMENTATION == "compiled"
    assert kernels.COMPILED
