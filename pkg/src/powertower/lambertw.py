"""Real Lambert W on both branches and the closed form of the tower's fixed
points, ``y = W(-ln x) / (-ln x)``.
"""
from __future__ import annotations

import enum
import math

from .core import E, E_TO_INV_E, INV_E
from .errors import DomainError

_EPS = 2.0**-52
# z slack below -1/e tolerated as rounding of the branch point
BRANCH_SLACK = 1e-15
# relative window around e**(1/e) treated as the tangent base
TANGENT_SLACK = 1e-15

W_SERIES_COEFFICIENTS = (1.0, -1.0, 3.0 / 2.0, -8.0 / 3.0)


class Branch(enum.Enum):
    """Real branches of W. ``PRINCIPAL`` has ``W >= -1``, ``SECONDARY`` ``W <= -1``."""

    PRINCIPAL = 0
    SECONDARY = -1


def _horner(coefficients, z: float, order: int) -> float:
    acc = 0.0
    for c in reversed(coefficients[:order]):
        acc = c + z * acc
    return z * acc


def w_series(z: float, order: int = 4) -> float:
    """Truncated Maclaurin series ``z - z**2 + 3/2 z**3 - 8/3 z**4``.

    ``order`` (1 to 4) is the number of terms kept.
    """
    if order not in (1, 2, 3, 4):
        raise DomainError(f"order must be in 1..4, got {order!r}")
    return _horner(W_SERIES_COEFFICIENTS, z, order)


def _branch_point_guess(z: float, branch: Branch) -> float:
    # expansion in p = sqrt(2 (e z + 1)) about (-1/e, -1); sign of p picks the branch
    p = math.sqrt(max(2.0 * (E * z + 1.0), 0.0))
    if branch is Branch.SECONDARY:
        p = -p
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 + p * (-43.0 / 540.0))))


def _initial_guess(z: float, branch: Branch) -> float:
    if branch is Branch.PRINCIPAL:
        if z < -0.25:
            return _branch_point_guess(z, branch)
        if abs(z) <= 0.1:
            return w_series(z, 4)
        if z < 3.0:
            lz = math.log1p(z)
            return lz * (1.0 - math.log1p(lz) / (2.0 + lz))
        lz = math.log(z)
        return lz - math.log(lz)
    if z < -0.25:
        return _branch_point_guess(z, branch)
    lz = math.log(-z)
    return lz - math.log(-lz)


def _halley(z: float, w: float) -> float:
    for _ in range(64):
        ew = math.exp(w)
        f = w * ew - z
        wp1 = w + 1.0
        if wp1 == 0.0 or f == 0.0:
            return w
        dw = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1))
        w_new = w - dw
        if abs(dw) <= 4.0 * _EPS * (1.0 + abs(w_new)):
            return w_new
        w = w_new
    return w


def lambert_w(z: float, branch: Branch = Branch.PRINCIPAL) -> float:
    """Real Lambert W: the ``w`` solving ``w * exp(w) = z``.

    Parameters
    ----------
    z : float
        Argument, ``z >= -1/e``. The secondary branch needs ``z < 0``.
    branch : Branch
        ``PRINCIPAL`` (``w >= -1``) or ``SECONDARY`` (``w <= -1``).

    Returns
    -------
    float

    Notes
    -----
    Starts from a branch-point expansion near ``-1/e``, the Maclaurin series
    for small ``|z|``, or ``ln z - ln ln z`` asymptotics, then polishes with
    Halley's iteration. Arguments up to ``1e-15`` below ``-1/e`` are taken
    as the branch point itself and return ``-1``.
    """
    if math.isnan(z):
        raise DomainError("z is NaN")
    if z < -INV_E - BRANCH_SLACK:
        raise DomainError(f"lambert_w undefined below -1/e, got {z!r}")
    if branch is Branch.SECONDARY and z >= 0.0:
        raise DomainError(f"secondary branch needs z < 0, got {z!r}")
    if z <= -INV_E:
        return -1.0
    if z == 0.0:
        return 0.0
    if math.isinf(z):
        return math.inf
    if E * z + 1.0 < 1e-8:
        # sqrt singularity: Halley stalls, the expansion is already exact to rounding
        return _branch_point_guess(z, branch)
    return _halley(z, _initial_guess(z, branch))


def _check_fixed_point_base(x: float) -> None:
    if not x > 0:
        raise DomainError(f"base must be positive, got {x!r}")
    if x > E_TO_INV_E * (1.0 + TANGENT_SLACK):
        raise DomainError(f"no real fixed point for x > e**(1/e), got {x!r}")


def tower_fixed_point(x: float) -> float:
    """The attractive fixed point of the infinite tower, ``W(-ln x) / (-ln x)``.

    Uses the principal branch. ``x = 1`` returns the limit value 1; the
    double nearest ``e**(1/e)``, and bases up to a relative ``1e-15`` above
    it, return the tangent point ``e``.
    For ``x < e**-e`` this is the (then unstable) single fixed point.

    >>> round(tower_fixed_point(2 ** 0.5), 12)
    2.0
    """
    _check_fixed_point_base(x)
    if x >= E_TO_INV_E:
        # the double nearest e**(1/e) and rounding slack above it: tangent point
        return E
    z = -math.log(x)
    if abs(z) < 1e-300:
        return 1.0
    return lambert_w(z, Branch.PRINCIPAL) / z


def tower_fixed_point_repulsive(x: float) -> float:
    """The second, repulsive fixed point for ``1 < x < e**(1/e)``, via the secondary branch."""
    if not 1.0 < x < E_TO_INV_E:
        raise DomainError(f"repulsive fixed point exists only for 1 < x < e**(1/e), got {x!r}")
    z = -math.log(x)
    return lambert_w(z, Branch.SECONDARY) / z
