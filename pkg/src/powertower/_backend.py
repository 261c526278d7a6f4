"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``POWERTOWER_PURE_PYTHON=1`` to force the fallback, or call
:func:`set_backend` at runtime.
"""
import os

from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

UNDECIDED = _pykernels.UNDECIDED
CONVERGED = _pykernels.CONVERGED
TWO_CYCLE = _pykernels.TWO_CYCLE
DIVERGED = _pykernels.DIVERGED

_impl = _pykernels
if _compiled is not None and not os.environ.get("POWERTOWER_PURE_PYTHON"):
    _impl = _compiled


def available() -> list[str]:
    return ["python"] + (["cython"] if _compiled is not None else [])


def name() -> str:
    return "cython" if _impl is _compiled else "python"


def get(backend: str):
    """Return the kernel module for ``backend`` ('python' or 'cython')."""
    if backend == "python":
        return _pykernels
    if backend == "cython" and _compiled is not None:
        return _compiled
    raise ValueError(f"backend {backend!r} not available; have {available()}")


def set_backend(backend: str) -> None:
    global _impl
    _impl = get(backend)


def tower(x, n):
    return _impl.tower(x, n)


def orbit(x, y0, tol, cycle_gap, max_iter, div_threshold, double_step):
    return _impl.orbit(x, y0, tol, cycle_gap, max_iter, div_threshold, double_step)


def scan(xs, tol, cycle_gap, max_iter, div_threshold):
    return _impl.scan(xs, tol, cycle_gap, max_iter, div_threshold)


def double_step_derivative(x, y):
    return _impl.double_step_derivative(x, y)


def region(xs, ys):
    return _impl.region(xs, ys)
