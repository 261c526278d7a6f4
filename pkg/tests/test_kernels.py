"""The compiled kernels and the pure-Python fallback must agree bit for bit."""
import math

import numpy as np
import pytest

from powertower import _backend, _pykernels

compiled = pytest.mark.skipif("cython" not in _backend.available(), reason="extension not built")


@compiled
@pytest.mark.parametrize("double_step", [False, True])
def test_orbit_identical(double_step):
    ck = _backend.get("cython")
    for x in np.geomspace(0.005, 1.6, 97):
        a, ca = _pykernels.orbit(float(x), float(x), 1e-12, 1e-6, 5000, 1e15, double_step)
        b, cb = ck.orbit(float(x), float(x), 1e-12, 1e-6, 5000, 1e15, double_step)
        assert ca == cb
        assert np.array_equal(a, b)


@compiled
def test_scan_identical():
    ck = _backend.get("cython")
    xs = np.linspace(0.01, 1.6, 301)
    for a, b in zip(_pykernels.scan(xs, 1e-12, 1e-6, 10_000, 1e15), ck.scan(xs, 1e-12, 1e-6, 10_000, 1e15)):
        assert np.array_equal(a, b, equal_nan=True)


@compiled
def test_region_and_tower_identical():
    ck = _backend.get("cython")
    xs, ys = np.linspace(0.01, 1.6, 61), np.linspace(0.01, 2.5, 53)
    assert np.array_equal(_pykernels.region(xs, ys), ck.region(xs, ys))
    for x in (1e-6, 0.07, 0.9, 1.3, 1.5):
        for n in (1, 2, 3, 50, 201):
            assert _pykernels.tower(x, n) == ck.tower(x, n)
    for x, y in [(0.05, 0.3), (1.44, 2.0), (1.6, 700.0)]:
        assert _pykernels.double_step_derivative(x, y) == ck.double_step_derivative(x, y)


def test_scan_matches_orbit():
    k = _pykernels
    xs = np.array([0.01, 0.0625, 0.5, 1.0, 1.3, 1.5])
    codes, tails, counts = k.scan(xs, 1e-12, 1e-6, 10_000, 1e15)
    for i, x in enumerate(xs):
        values, code = k.orbit(float(x), float(x), 1e-12, 1e-6, 10_000, 1e15, False)
        assert code == codes[i]
        assert counts[i] == len(values)
        assert np.array_equal(tails[i][-min(3, len(values)):], values[-3:])


def test_overflow_is_infinite():
    values, code = _pykernels.orbit(10.0, 10.0, 1e-12, 1e-6, 100, math.inf, False)
    assert code == _pykernels.DIVERGED and values[-1] == math.inf


def test_backend_switch():
    previous = _backend.name()
    _backend.set_backend("python")
    assert _backend.name() == "python"
    _backend.set_backend(previous)
    with pytest.raises(ValueError):
        _backend.get("fortran")
