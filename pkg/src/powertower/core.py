"""Scalar building blocks: the exponentiation step, finite towers, the
curve ``g(y) = y**(1/y)`` with its calculus, and the hyperoperation ladder.

Powers ``x**y`` are always evaluated as ``exp(y * ln x)``; an overflowing
result is returned as ``+inf`` rather than raised, because running off to
infinity is an ordinary outcome for the tower sequence.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple

from . import _backend
from .errors import DomainError

E = math.e
INV_E = 1.0 / math.e
#: Upper end of the convergence interval, ``e**(1/e)``.
E_TO_INV_E = math.exp(1.0 / math.e)
#: Lower end of the convergence interval, ``e**(-e)``.
E_TO_MINUS_E = math.exp(-math.e)

U64_MAX = 2**64 - 1


class CurvePoint(NamedTuple):
    """A point ``(y, x)`` on the curve ``x = g(y)``."""

    y: float
    x: float


def _check_base(x: float) -> None:
    if not x > 0:  # also rejects NaN
        raise DomainError(f"base must be positive, got {x!r}")


def _exp(t: float) -> float:
    try:
        return math.exp(t)
    except OverflowError:
        return math.inf


def tower_step(x: float, y: float) -> float:
    """Return ``x**y`` computed as ``exp(y * ln x)``.

    Overflow gives ``+inf``.
    """
    _check_base(x)
    if math.isnan(y):
        raise DomainError("exponent is NaN")
    return _exp(y * math.log(x))


def finite_tower(x: float, n: int) -> float:
    """Evaluate the right-associative tower of ``n`` copies of ``x``.

    ``f_1(x) = x`` and ``f_{k+1}(x) = x**f_k(x)``, evaluated from the top
    exponent downwards. Intermediate overflow propagates as ``+inf``.

    >>> finite_tower(3.0, 3)
    7625597484987.0
    """
    _check_base(x)
    if int(n) != n or n < 1:
        raise DomainError(f"height must be an integer >= 1, got {n!r}")
    return _backend.tower(float(x), int(n))


def g(y: float) -> float:
    """The inverse relation of the tower fixed point, ``g(y) = y**(1/y)``."""
    if not y > 0:
        raise DomainError(f"g is defined for y > 0, got {y!r}")
    return math.exp(math.log(y) / y)


def g_prime(y: float) -> float:
    """Derivative ``g'(y) = y**(1/y) * (1 - ln y) / y**2``."""
    if not y > 0:
        raise DomainError(f"g' is defined for y > 0, got {y!r}")
    return g(y) * (1.0 - math.log(y)) / (y * y)


def inflection_residual(y: float) -> float:
    # sign-carrying factor of g''(y); g''(y) = y**(1/y - 4) * residual
    ly = math.log(y)
    return 1.0 - 3.0 * y + (2.0 * y + ly - 2.0) * ly


def bisect(f: Callable[[float], float], lo: float, hi: float, width: float = 1e-14,
           max_iter: int = 200) -> float:
    """Bisection on a sign-changing bracket ``[lo, hi]``.

    Stops when the bracket is narrower than ``width`` (absolute) or after
    ``max_iter`` halvings, and returns the midpoint.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"bracket [{lo}, {hi}] does not change sign")
    for _ in range(max_iter):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (flo > 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def g_inflections() -> tuple[CurvePoint, CurvePoint]:
    """The two inflection points of ``g``, found by bisection.

    Roots of ``1 - 3y + (2y + ln y - 2) ln y`` in ``[0.1, 1]`` and ``[3, 6]``.
    """
    points = []
    for lo, hi in ((0.1, 1.0), (3.0, 6.0)):
        try:
            y = bisect(inflection_residual, lo, hi)
        except ValueError as exc:  # fixed brackets; cannot happen
            raise RuntimeError("inflection bracket failed") from exc
        points.append(CurvePoint(y, g(y)))
    return points[0], points[1]


def _add(a: int, b: int) -> int:
    r = a + b
    if r > U64_MAX:
        raise OverflowError("hyperoperation exceeds 64-bit range")
    return r


def _mul(a: int, b: int) -> int:
    r = a * b
    if r > U64_MAX:
        raise OverflowError("hyperoperation exceeds 64-bit range")
    return r


def _pow(n: int, m: int) -> int:
    if n in (0, 1):
        return 1 if m == 0 else n
    r = 1
    # at most 64 multiplications before the check trips
    for _ in range(m):
        r = _mul(r, n)
    return r


def hyperop(grade: int, n: int, m: int = 0) -> int:
    """The hyperoperation ladder on unsigned 64-bit naturals.

    ===== ===================
    grade result
    ===== ===================
    0     successor ``n + 1``
    1     ``n + m``
    2     ``n * m``
    3     ``n ** m``
    4     tower of ``m`` copies of ``n``
    ===== ===================

    Raises :class:`OverflowError` when the exact result does not fit in an
    unsigned 64-bit integer.
    """
    if grade not in (0, 1, 2, 3, 4):
        raise DomainError(f"grade must be in 0..4, got {grade!r}")
    if n < 0 or m < 0 or n > U64_MAX or m > U64_MAX:
        raise DomainError("operands must be 64-bit naturals")
    if grade == 0:
        return _add(n, 1)
    if grade == 1:
        return _add(n, m)
    if grade == 2:
        return _mul(n, m)
    if grade == 3:
        return _pow(n, m)
    if m == 0:
        return 1
    if n in (0, 1):
        # 0^0 = 1, so a tower of zeros alternates 0, 1, 0, ...
        return (m + 1) % 2 if n == 0 else 1
    r = n
    for _ in range(m - 1):
        r = _pow(n, r)
    return r
