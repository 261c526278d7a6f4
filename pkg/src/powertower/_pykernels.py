"""Pure-Python kernels. Same signatures and bitwise-identical results as the
compiled ``_kernels`` module; used when the extension is unavailable."""
import math

import numpy as np

UNDECIDED = 0
CONVERGED = 1
TWO_CYCLE = 2
DIVERGED = 3


def _exp(t):
    try:
        return math.exp(t)
    except OverflowError:
        return math.inf


def tower(x, n):
    lx = math.log(x)
    y = x
    for _ in range(n - 1):
        y = _exp(y * lx)
    return y


def _step(lx, y, double_step):
    y = _exp(y * lx)
    if double_step:
        y = _exp(y * lx)
    return y


def _run(x, y0, tol, cycle_gap, max_iter, div_threshold, double_step, out):
    # Returns (code, count, tail) with the last three orbit values in ``tail``;
    # the whole orbit is appended to ``out`` when it is a list.
    lx = math.log(x)
    prev2 = math.nan
    prev = y0
    if out is not None:
        out.append(y0)
    tail = [math.nan, math.nan, y0]
    for k in range(max_iter):
        y = _step(lx, prev, double_step)
        if out is not None:
            out.append(y)
        tail[0], tail[1], tail[2] = tail[1], tail[2], y
        if y == math.inf or not (y <= div_threshold):
            return DIVERGED, k + 2, tail
        d1 = abs(y - prev)
        if d1 < tol:
            return CONVERGED, k + 2, tail
        if not double_step and k > 0 and abs(y - prev2) < tol and d1 >= cycle_gap:
            return TWO_CYCLE, k + 2, tail
        prev2, prev = prev, y
    return UNDECIDED, max_iter + 1, tail


def orbit(x, y0, tol, cycle_gap, max_iter, div_threshold, double_step):
    values = []
    code, _, _ = _run(x, y0, tol, cycle_gap, max_iter, div_threshold, double_step, values)
    return np.array(values, dtype=np.float64), code


def scan(xs, tol, cycle_gap, max_iter, div_threshold):
    n = len(xs)
    codes = np.empty(n, dtype=np.int8)
    tails = np.empty((n, 3), dtype=np.float64)
    counts = np.empty(n, dtype=np.int64)
    for i in range(n):
        x = float(xs[i])
        code, count, tail = _run(x, x, tol, cycle_gap, max_iter, div_threshold, False, None)
        codes[i] = code
        counts[i] = count
        tails[i, 0], tails[i, 1], tails[i, 2] = tail
    return codes, tails, counts


def double_step_derivative(x, y):
    lx = math.log(x)
    return _exp((_exp(y * lx) + y) * lx) * lx * lx


def region(xs, ys):
    out = np.zeros((len(xs), len(ys)), dtype=np.bool_)
    for i in range(len(xs)):
        x = float(xs[i])
        for j in range(len(ys)):
            out[i, j] = abs(double_step_derivative(x, float(ys[j]))) < 1.0
    return out
