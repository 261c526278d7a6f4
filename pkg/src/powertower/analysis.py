"""Regime classification, tangency, 2-cycle algebra, parity limits and the
grid scans behind the bifurcation and region plots.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _backend
from .core import E, E_TO_INV_E, E_TO_MINUS_E, INV_E, finite_tower, tower_step
from .dynamics import (
    DEFAULT_CONFIG,
    IterationConfig,
    Outcome,
    iterate_double_step,
    outcome_from_tail,
)
from .errors import ConvergenceError, DomainError
from .lambertw import tower_fixed_point


class ConvergenceClass(enum.Enum):
    """Asymptotic regime of the tower sequence for a base ``x > 0``.

    ``fixed_point_range`` gives the interval where the attractor values lie
    (``None`` for divergence).
    """

    DivergesToInfinity = "DivergesToInfinity"
    TangentConvergence = "TangentConvergence"
    TwoFixedPoints = "TwoFixedPoints"
    Unity = "Unity"
    OscillatingConvergence = "OscillatingConvergence"
    TwoCycleRegime = "TwoCycleRegime"

    @property
    def fixed_point_range(self) -> tuple[float, float] | None:
        return _RANGES[self]

    @property
    def converges(self) -> bool:
        return self not in (ConvergenceClass.DivergesToInfinity, ConvergenceClass.TwoCycleRegime)


_RANGES = {
    ConvergenceClass.DivergesToInfinity: None,
    ConvergenceClass.TangentConvergence: (E, E),
    ConvergenceClass.TwoFixedPoints: (1.0, E),
    ConvergenceClass.Unity: (1.0, 1.0),
    ConvergenceClass.OscillatingConvergence: (INV_E, 1.0),
    ConvergenceClass.TwoCycleRegime: (0.0, 1.0),
}

_UPPER_ULP = math.ulp(E_TO_INV_E)
_LOWER_ULP = math.ulp(E_TO_MINUS_E)


def classify(x: float) -> ConvergenceClass:
    """Regime of the infinite tower at base ``x``, decided from the interval
    boundaries ``e**(-e)``, ``1`` and ``e**(1/e)`` alone (no iteration).

    The two transcendental boundaries match within one ulp of their
    double-precision values; ``e**(1/e)`` itself is tangent convergence and
    ``e**(-e)`` itself still converges (to ``1/e``).
    """
    if not x > 0:
        raise DomainError(f"base must be positive, got {x!r}")
    if abs(x - E_TO_INV_E) <= _UPPER_ULP:
        return ConvergenceClass.TangentConvergence
    if x > E_TO_INV_E:
        return ConvergenceClass.DivergesToInfinity
    if x > 1.0:
        return ConvergenceClass.TwoFixedPoints
    if x == 1.0:
        return ConvergenceClass.Unity
    if x >= E_TO_MINUS_E - _LOWER_ULP:
        return ConvergenceClass.OscillatingConvergence
    return ConvergenceClass.TwoCycleRegime


class Tangency(NamedTuple):
    x: float
    y: float
    z: float


def tangency() -> Tangency:
    """Base ``e**(1/e)`` at which ``z = x**y`` touches ``z = y``, and the touching point ``(e, e)``.

    Cross-checks that the tangency abscissa ``-ln(ln x)/ln x`` and ordinate
    ``1/ln x`` coincide there.
    """
    x = E_TO_INV_E
    lx = math.log(x)
    y_t = -math.log(lx) / lx
    z_t = 1.0 / lx
    if not (abs(y_t - z_t) <= 1e-12 and abs(y_t - E) <= 1e-12):
        raise RuntimeError(f"tangency check failed: y_T={y_t!r}, z_T={z_t!r}")
    return Tangency(x, E, E)


@dataclass(frozen=True)
class TwoCycle:
    """A 2-cycle ``y_low <-> y_high`` of ``y -> x**y`` with ratio ``p = y_high / y_low``.

    The degenerate cycle at ``p -> 1`` has ``y_low == y_high == 1/e``.
    """

    y_low: float
    y_high: float
    p: float
    x: float


#: ``p`` this close to 1 returns the collapsed cycle at ``x = e**-e``.
DEGENERATE_P_WINDOW = 1e-9


def cycle_from_p(p: float) -> TwoCycle:
    """Parametrize the cycle by its ratio: ``y_low = p**(p/(1-p))``,
    ``y_high = p**(1/(1-p))`` and base ``x = y_low**(1/y_high)``.
    """
    if not p > 1.0:
        raise DomainError(f"cycle ratio must exceed 1, got {p!r}")
    if p - 1.0 <= DEGENERATE_P_WINDOW:
        return TwoCycle(INV_E, INV_E, 1.0, E_TO_MINUS_E)
    y_low = p ** (p / (1.0 - p))
    y_high = p ** (1.0 / (1.0 - p))
    return TwoCycle(y_low, y_high, p, y_low ** (1.0 / y_high))


def _odd_branch_by_bisection(x: float) -> float:
    # x**(x**y) - y is positive on (0, y_low) and negative on (y_low, y_mid); at
    # y_mid it vanishes, so that end is taken as the negative side by construction
    lo, hi = 0.0, tower_fixed_point(x)
    for _ in range(1100):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if tower_step(x, tower_step(x, mid)) - mid > 0.0:
            lo = mid
        else:
            hi = mid
    return lo


def cycle_for_x(x: float, config: IterationConfig = DEFAULT_CONFIG) -> TwoCycle:
    """The stable 2-cycle at a base ``0 < x < e**-e``.

    The lower value is the odd-height branch: the limit of the double step
    started at ``y0 = x``. If the iteration is undecided (critical slowing
    near ``e**-e``) the branch is located by bisecting ``x**(x**y) - y``
    between 0 and the unstable fixed point instead.
    """
    if not 0.0 < x < E_TO_MINUS_E - _LOWER_ULP:
        raise DomainError(f"2-cycles exist only for 0 < x < e**-e, got {x!r}")
    trace = iterate_double_step(x, x, config)
    if trace.outcome.kind is Outcome.CONVERGED:
        y_low = trace.outcome.limit
    else:
        y_low = _odd_branch_by_bisection(x)
    y_high = tower_step(x, y_low)
    if not y_low < y_high:
        raise ConvergenceError(f"could not resolve the 2-cycle at x={x!r}")
    return TwoCycle(y_low, y_high, y_high / y_low, x)


def parity_limits(x: float, n_pairs: int) -> tuple[float, float]:
    """Even and odd tower heights ``(f_{2n}(x), f_{2n+1}(x))`` with ``n = n_pairs``."""
    if not 0.0 < x < E_TO_MINUS_E:
        raise DomainError(f"parity split needs 0 < x < e**-e, got {x!r}")
    if int(n_pairs) != n_pairs or n_pairs < 1:
        raise DomainError("n_pairs must be an integer >= 1")
    return finite_tower(x, 2 * n_pairs), finite_tower(x, 2 * n_pairs + 1)


@dataclass(frozen=True)
class ScanRow:
    """Attractor values at one base: one for convergent regimes, the pair
    ``(y_low, y_high)`` for the 2-cycle regime, none for divergence."""

    x: float
    values: tuple[float, ...]
    regime: ConvergenceClass


_EXPECTED = {
    ConvergenceClass.DivergesToInfinity: Outcome.DIVERGED,
    ConvergenceClass.TwoCycleRegime: Outcome.TWO_CYCLE,
}


def _row(x: float, code: int, tail, config: IterationConfig) -> ScanRow:
    regime = classify(x)
    outcome = outcome_from_tail(code, tail)
    expected = _EXPECTED.get(regime, Outcome.CONVERGED)
    if regime is ConvergenceClass.DivergesToInfinity:
        return ScanRow(x, (), regime)
    if outcome.kind is expected:
        return ScanRow(x, outcome.values, regime)
    # slow orbits near a regime boundary: use the closed forms instead
    if regime is ConvergenceClass.TwoCycleRegime:
        c = cycle_for_x(x, config)
        return ScanRow(x, (c.y_low, c.y_high), regime)
    return ScanRow(x, (tower_fixed_point(x),), regime)


def bifurcation_scan(x_min: float, x_max: float, samples: int,
                     config: IterationConfig = DEFAULT_CONFIG) -> list[ScanRow]:
    """Iterate the tower at ``samples`` evenly spaced bases in ``[x_min, x_max]``.

    Rows come back in ascending ``x``. Orbits that stay undecided (or land
    in the wrong regime from slow dynamics near a boundary) take their
    values from the closed forms.
    """
    if not 0.0 < x_min < x_max:
        raise DomainError(f"need 0 < x_min < x_max, got [{x_min!r}, {x_max!r}]")
    if int(samples) != samples or samples < 2:
        raise DomainError("samples must be an integer >= 2")
    xs = np.linspace(x_min, x_max, int(samples))
    codes, tails, _ = _backend.scan(
        xs, config.tolerance, config.effective_cycle_gap,
        int(config.max_iterations), config.divergence_threshold,
    )
    return [_row(float(xs[i]), codes[i], tails[i], config) for i in range(len(xs))]


def _axis(lo: float, hi: float, n: int, name: str) -> np.ndarray:
    if not 0.0 < lo < hi:
        raise DomainError(f"{name} range must satisfy 0 < lo < hi, got [{lo!r}, {hi!r}]")
    if int(n) != n or n < 2:
        raise DomainError(f"{name} grid size must be an integer >= 2")
    return np.linspace(lo, hi, int(n))


def region_axes(x_range, y_range, grid) -> tuple[np.ndarray, np.ndarray]:
    return _axis(*x_range, grid[0], "x"), _axis(*y_range, grid[1], "y")


def region_scan(x_range: tuple[float, float], y_range: tuple[float, float],
                grid: tuple[int, int]) -> np.ndarray:
    """Boolean matrix of where the double step contracts.

    Cell ``[i, j]`` is ``in_double_region(x_i, y_j)`` with both axes
    ascending and evenly spaced over their ranges.
    """
    xs, ys = region_axes(x_range, y_range, grid)
    return _backend.region(xs, ys)
