# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: periodic filter-and-decimate step and adjoint."""

import numpy as np

name = "cython"


def dwt_step(x, lo, hi):
    x = np.ascontiguousarray(x, dtype=np.float64)
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)

    cdef const double[::1] xv = x
    cdef const double[::1] lov = lo
    cdef const double[::1] hiv = hi
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t half = n // 2
    cdef Py_ssize_t L = lov.shape[0]

    approx = np.zeros(half)
    detail = np.zeros(half)
    cdef double[::1] av = approx
    cdef double[::1] dv = detail
    cdef Py_ssize_t k, m, idx
    cdef double xm

    # Tap-major accumulation keeps the summation order identical to the
    # numpy fallback.
    for m in range(L):
        for k in range(half):
            idx = (2 * k + m) % n
            xm = xv[idx]
            av[k] += lov[m] * xm
            dv[k] += hiv[m] * xm
    return approx, detail


def idwt_step(approx, detail, lo, hi):
    approx = np.ascontiguousarray(approx, dtype=np.float64)
    detail = np.ascontiguousarray(detail, dtype=np.float64)
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)

    cdef const double[::1] av = approx
    cdef const double[::1] dv = detail
    cdef const double[::1] lov = lo
    cdef const double[::1] hiv = hi
    cdef Py_ssize_t half = av.shape[0]
    cdef Py_ssize_t n = 2 * half
    cdef Py_ssize_t L = lov.shape[0]

    out = np.zeros(n)
    cdef double[::1] ov = out
    cdef Py_ssize_t k, m, idx

    for m in range(L):
        for k in range(half):
            idx = (2 * k + m) % n
            ov[idx] += lov[m] * av[k] + hiv[m] * dv[k]
    return out
