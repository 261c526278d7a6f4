"""Iteration engine for ``y -> x**y`` and the double step ``y -> x**(x**y)``.

Orbits are produced by the kernels in :mod:`powertower._backend` (compiled
when available) and diagnosed as converged, 2-cycle, diverged or undecided.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .core import E, tower_step
from .errors import DomainError, PreconditionError


@dataclass(frozen=True)
class IterationConfig:
    """Stopping rules for orbit iteration.

    Attributes
    ----------
    tolerance : float
        Orbit-difference threshold for declaring convergence.
    max_iterations : int
        Step budget; the orbit is *undecided* once it is spent.
    divergence_threshold : float
        Any orbit value beyond this is divergence. Must exceed ``e``, the
        largest convergent limit.
    cycle_gap : float or None
        Smallest single-step difference accepted as a genuine 2-cycle.
        ``None`` means ``max(10 * tolerance, sqrt(tolerance))``; the square
        root keeps slowly oscillating convergence (multiplier near -1) from
        passing as a cycle.
    """

    tolerance: float = 1e-12
    max_iterations: int = 10_000
    divergence_threshold: float = 1e15
    cycle_gap: float | None = None

    def __post_init__(self):
        if not self.tolerance > 0:
            raise DomainError("tolerance must be positive")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise DomainError("max_iterations must be an integer >= 1")
        if not self.divergence_threshold > E:
            raise DomainError("divergence_threshold must exceed e")

    @property
    def effective_cycle_gap(self) -> float:
        if self.cycle_gap is not None:
            return self.cycle_gap
        return max(10.0 * self.tolerance, math.sqrt(self.tolerance))


DEFAULT_CONFIG = IterationConfig()


class Outcome(enum.Enum):
    CONVERGED = "Converged"
    TWO_CYCLE = "TwoCycle"
    DIVERGED = "Diverged"
    UNDECIDED = "Undecided"


_CODES = {
    _backend.CONVERGED: Outcome.CONVERGED,
    _backend.TWO_CYCLE: Outcome.TWO_CYCLE,
    _backend.DIVERGED: Outcome.DIVERGED,
    _backend.UNDECIDED: Outcome.UNDECIDED,
}


@dataclass(frozen=True)
class IterationOutcome:
    """Fate of an orbit. ``values`` holds the limit, or ``(y_low, y_high)``."""

    kind: Outcome
    values: tuple[float, ...] = ()

    @property
    def limit(self) -> float:
        if self.kind is not Outcome.CONVERGED:
            raise AttributeError(f"{self.kind.value} outcome has no limit")
        return self.values[0]

    @property
    def y_low(self) -> float:
        if self.kind is not Outcome.TWO_CYCLE:
            raise AttributeError(f"{self.kind.value} outcome has no cycle")
        return self.values[0]

    @property
    def y_high(self) -> float:
        if self.kind is not Outcome.TWO_CYCLE:
            raise AttributeError(f"{self.kind.value} outcome has no cycle")
        return self.values[1]


@dataclass(frozen=True)
class IterationTrace:
    """An orbit ``values[0] = y0, values[k+1] = step(values[k])`` and its fate."""

    x: float
    values: np.ndarray = field(repr=False)
    outcome: IterationOutcome

    @property
    def steps(self) -> int:
        return len(self.values) - 1


def aitken_limit(y0: float, y1: float, y2: float) -> float:
    """Aitken delta-squared estimate of a linearly converging sequence's limit.

    Falls back to ``y2`` when the last three points do not contract.
    """
    d1 = y1 - y0
    d2 = y2 - y1
    denom = d2 - d1
    if d2 == 0.0 or not math.isfinite(denom) or denom == 0.0 or abs(d2) >= abs(d1):
        return y2
    return y2 - d2 * d2 / denom


def outcome_from_tail(code: int, tail) -> IterationOutcome:
    """Build the outcome from a kernel code and the orbit's last three values."""
    kind = _CODES[int(code)]
    y0, y1, y2 = (float(v) for v in tail)
    if kind is Outcome.CONVERGED:
        if math.isnan(y0):
            return IterationOutcome(kind, (y2,))
        return IterationOutcome(kind, (aitken_limit(y0, y1, y2),))
    if kind is Outcome.TWO_CYCLE:
        return IterationOutcome(kind, (min(y1, y2), max(y1, y2)))
    return IterationOutcome(kind)


def _check_positive(name: str, v: float) -> None:
    if not v > 0:
        raise DomainError(f"{name} must be positive, got {v!r}")


def _run(x: float, y0: float, config: IterationConfig, double_step: bool) -> IterationTrace:
    values, code = _backend.orbit(
        float(x), float(y0), config.tolerance, config.effective_cycle_gap,
        int(config.max_iterations), config.divergence_threshold, double_step,
    )
    values.setflags(write=False)
    tail = np.full(3, np.nan)
    k = min(3, len(values))
    tail[3 - k:] = values[-k:]
    return IterationTrace(float(x), values, outcome_from_tail(code, tail))


def iterate_tower(x: float, config: IterationConfig = DEFAULT_CONFIG) -> IterationTrace:
    """Run ``y_1 = x, y_{n+1} = x**y_n`` and diagnose the orbit.

    Converged when successive values differ by less than ``tolerance``
    (limit refined by Aitken extrapolation); 2-cycle when ``|y_{n+2} - y_n|``
    is below ``tolerance`` while the single-step difference is at least the
    configured cycle gap; diverged past ``divergence_threshold``; undecided
    when ``max_iterations`` runs out.
    """
    _check_positive("x", x)
    return _run(x, x, config, double_step=False)


def iterate_double_step(x: float, y0: float,
                        config: IterationConfig = DEFAULT_CONFIG) -> IterationTrace:
    """Iterate ``y -> x**(x**y)`` from ``y0``.

    Each parity branch of the tower is a fixed point of this map, so the
    outcome is never a 2-cycle; the branch value is reported as converged.
    """
    _check_positive("x", x)
    _check_positive("y0", y0)
    return _run(x, y0, config, double_step=True)


class StabilityClass(enum.Enum):
    ATTRACTIVE = "Attractive"
    REPULSIVE = "Repulsive"
    NEUTRAL = "Neutral"


def stability_of(x: float, y_star: float) -> StabilityClass:
    """Classify a fixed point by the map's slope there, which is ``ln y_star``."""
    _check_positive("y_star", y_star)
    residual = abs(tower_step(x, y_star) - y_star)
    if not residual <= 1e-6:
        raise PreconditionError(f"{y_star!r} is not a fixed point of x**y (residual {residual:.3g})")
    slope = abs(math.log(y_star))
    if slope < 1.0 - 1e-12:
        return StabilityClass.ATTRACTIVE
    if slope > 1.0 + 1e-12:
        return StabilityClass.REPULSIVE
    return StabilityClass.NEUTRAL


def double_step_derivative(x: float, y: float) -> float:
    """Slope of the double step, ``x**(x**y + y) * ln(x)**2``."""
    _check_positive("x", x)
    if not math.isfinite(y):
        raise DomainError(f"y must be finite, got {y!r}")
    return _backend.double_step_derivative(float(x), float(y))


def in_double_region(x: float, y: float) -> bool:
    """True where the double step contracts: ``|x**(x**y + y) ln(x)**2| < 1``."""
    return abs(double_step_derivative(x, y)) < 1.0


def cobweb_trace(x: float, y0: float, steps: int) -> list[tuple[float, float]]:
    """Cobweb polyline for ``y -> x**y``.

    Starts at ``(y0, 0)`` and alternates vertical moves to the curve
    ``z = x**y`` with horizontal moves to ``z = y``, giving ``2*steps + 1``
    points. Stops early if the orbit overflows.
    """
    _check_positive("x", x)
    _check_positive("y0", y0)
    if int(steps) != steps or steps < 1:
        raise DomainError("steps must be an integer >= 1")
    points = [(y0, 0.0)]
    y = y0
    for _ in range(steps):
        z = tower_step(x, y)
        if not math.isfinite(z):
            break
        points.append((y, z))
        points.append((z, z))
        y = z
    return points
