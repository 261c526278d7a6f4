"""Formal power series without constant term: composition and reversion by
coefficient matching, plus the series that solves ``t = v * exp(t)``.

Coefficients are stored from the linear term up, so ``coefficients[0]`` is
the coefficient of ``x**1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .lambertw import _horner


@dataclass(frozen=True)
class PowerSeries:
    """Truncated series ``a_1 x + a_2 x**2 + ... + a_m x**m``."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(float(c) for c in self.coefficients))

    @classmethod
    def identity(cls, order: int = 1) -> "PowerSeries":
        return cls((1.0,) + (0.0,) * (order - 1))

    @property
    def order(self) -> int:
        return len(self.coefficients)

    def coefficient(self, k: int) -> float:
        """Coefficient of ``x**k`` (zero past the stored order)."""
        if k < 1:
            raise IndexError("series have no constant term")
        return self.coefficients[k - 1] if k <= len(self.coefficients) else 0.0

    def padded(self, order: int) -> list[float]:
        return [self.coefficient(k) for k in range(1, order + 1)]

    def __call__(self, x: float) -> float:
        return _horner(self.coefficients, x, len(self.coefficients))


def _mul_truncated(a: list[float], b: list[float], order: int) -> list[float]:
    # a, b, result indexed by power (index 0 = x**0); truncated at x**order
    out = [0.0] * (order + 1)
    for i, ai in enumerate(a):
        if ai == 0.0:
            continue
        for j in range(0, order + 1 - i):
            if j < len(b):
                out[i + j] += ai * b[j]
    return out


def _powers(series: PowerSeries, order: int) -> list[list[float]]:
    # powers[k][n] = [x**n] series(x)**k for k = 1..order
    base = [0.0] + series.padded(order)
    powers = [[1.0] + [0.0] * order, base]
    for _ in range(2, order + 1):
        powers.append(_mul_truncated(powers[-1], base, order))
    return powers


def _check_order(order: int) -> None:
    if int(order) != order or order < 1:
        raise DomainError(f"order must be an integer >= 1, got {order!r}")


def compose(outer: PowerSeries, inner: PowerSeries, order: int) -> PowerSeries:
    """Coefficients of ``outer(inner(x))`` up to ``x**order``."""
    _check_order(order)
    powers = _powers(inner, order)
    out = [0.0] * (order + 1)
    for k in range(1, order + 1):
        c = outer.coefficient(k)
        if c == 0.0:
            continue
        for n in range(k, order + 1):
            out[n] += c * powers[k][n]
    return PowerSeries(out[1:])


def revert(series: PowerSeries, order: int) -> PowerSeries:
    """Series of the inverse function, ``A_1 .. A_order``.

    Substitutes ``y = a_1 x + a_2 x**2 + ...`` into ``x = A_1 y + A_2 y**2 + ...``
    and equates like powers of ``x``. The ``n``-th equation is
    ``sum_k A_k [x**n] y**k = delta_{n1}``, which is triangular because
    ``[x**n] y**n = a_1**n``; it is solved for ``A_1, A_2, ...`` in turn.
    """
    _check_order(order)
    a1 = series.coefficient(1)
    if a1 == 0.0:
        raise DomainError("leading coefficient is zero; series is not invertible at 0")
    powers = _powers(series, order)
    inverse = []
    for n in range(1, order + 1):
        acc = 1.0 if n == 1 else 0.0
        for k in range(1, n):
            acc -= inverse[k - 1] * powers[k][n]
        inverse.append(acc / powers[n][n])
    return PowerSeries(inverse)


def w_exp_w_series(order: int) -> PowerSeries:
    """Maclaurin coefficients of ``w * exp(w)``: ``1/(k-1)!`` for ``k = 1..order``."""
    _check_order(order)
    return PowerSeries([1.0 / math.factorial(k - 1) for k in range(1, order + 1)])


EULER_LN_COEFFICIENTS = (1.0, 1.0, 3.0 / 2.0, 8.0 / 3.0)


def euler_ln_series(v: float, order: int = 4) -> float:
    """Truncated solution of ``t = v * exp(t)``: ``v + v**2 + 3/2 v**3 + 8/3 v**4``.

    Term by term this is ``-w_series(-v)``. Four terms are good to about
    ``1e-7`` for ``|v| <= 0.05``.
    """
    if order not in (1, 2, 3, 4):
        raise DomainError(f"order must be in 1..4, got {order!r}")
    return _horner(EULER_LN_COEFFICIENTS, v, order)
