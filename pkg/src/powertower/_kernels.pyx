# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for orbit iteration and grid scans.

Mirrors ``_pykernels`` operation for operation so both produce identical
floating-point results.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport exp, log, fabs, NAN, INFINITY

cnp.import_array()

cdef enum:
    C_UNDECIDED = 0
    C_CONVERGED = 1
    C_TWO_CYCLE = 2
    C_DIVERGED = 3

UNDECIDED = C_UNDECIDED
CONVERGED = C_CONVERGED
TWO_CYCLE = C_TWO_CYCLE
DIVERGED = C_DIVERGED


cdef inline double _step(double lx, double y, bint double_step) nogil:
    y = exp(y * lx)
    if double_step:
        y = exp(y * lx)
    return y


cdef int _run(double x, double y0, double tol, double cycle_gap, long max_iter,
              double div_threshold, bint double_step, double *out,
              long *count, double *tail) nogil:
    cdef double lx = log(x)
    cdef double prev2 = NAN
    cdef double prev = y0
    cdef double y, d1
    cdef long k
    if out != NULL:
        out[0] = y0
    tail[0] = NAN
    tail[1] = NAN
    tail[2] = y0
    for k in range(max_iter):
        y = _step(lx, prev, double_step)
        if out != NULL:
            out[k + 1] = y
        tail[0] = tail[1]
        tail[1] = tail[2]
        tail[2] = y
        count[0] = k + 2
        if y == INFINITY or not (y <= div_threshold):
            return C_DIVERGED
        d1 = fabs(y - prev)
        if d1 < tol:
            return C_CONVERGED
        if not double_step and k > 0 and fabs(y - prev2) < tol and d1 >= cycle_gap:
            return C_TWO_CYCLE
        prev2 = prev
        prev = y
    count[0] = max_iter + 1
    return C_UNDECIDED


def tower(double x, long n):
    cdef double lx = log(x)
    cdef double y = x
    cdef long k
    with nogil:
        for k in range(n - 1):
            y = exp(y * lx)
    return y


def orbit(double x, double y0, double tol, double cycle_gap, long max_iter,
          double div_threshold, bint double_step):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] buf = np.empty(max_iter + 1, dtype=np.float64)
    cdef long count = 1
    cdef double tail[3]
    cdef int code
    cdef double *p = <double *> buf.data
    with nogil:
        code = _run(x, y0, tol, cycle_gap, max_iter, div_threshold, double_step,
                    p, &count, tail)
    return buf[:count].copy(), code


def scan(const double[:] xs, double tol, double cycle_gap, long max_iter,
         double div_threshold):
    cdef Py_ssize_t n = xs.shape[0], i
    codes_arr = np.empty(n, dtype=np.int8)
    tails_arr = np.empty((n, 3), dtype=np.float64)
    counts_arr = np.empty(n, dtype=np.int64)
    cdef signed char[:] codes = codes_arr
    cdef double[:, ::1] tails = tails_arr
    cdef long long[:] counts = counts_arr
    cdef long count
    with nogil:
        for i in range(n):
            count = 1
            codes[i] = _run(xs[i], xs[i], tol, cycle_gap, max_iter, div_threshold,
                            False, NULL, &count, &tails[i, 0])
            counts[i] = count
    return codes_arr, tails_arr, counts_arr


cdef inline double _dsd(double x, double y) nogil:
    cdef double lx = log(x)
    return exp((exp(y * lx) + y) * lx) * lx * lx


def double_step_derivative(double x, double y):
    return _dsd(x, y)


def region(const double[:] xs, const double[:] ys):
    cdef Py_ssize_t nx = xs.shape[0], ny = ys.shape[0], i, j
    out_arr = np.zeros((nx, ny), dtype=np.uint8)
    cdef unsigned char[:, ::1] out = out_arr
    with nogil:
        for i in range(nx):
            for j in range(ny):
                out[i, j] = fabs(_dsd(xs[i], ys[j])) < 1.0
    return out_arr.view(np.bool_)
