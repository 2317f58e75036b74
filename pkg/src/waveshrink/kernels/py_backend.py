"""Pure-numpy kernel backend.

Index arithmetic is modular so the step stays correct when a level is
shorter than the filter (the wrap then visits the signal more than once).
The accumulation loops run over filter taps in the same order as the
compiled backend.
"""

import numpy as np

name = "python"


def dwt_step(x, lo, hi):
    """One periodic analysis step: filter with ``lo``/``hi``, keep even phases."""
    x = np.ascontiguousarray(x, dtype=np.float64)
    n = x.size
    half = n // 2
    k2 = 2 * np.arange(half)
    approx = np.zeros(half)
    detail = np.zeros(half)
    for m in range(lo.size):
        xm = x[(k2 + m) % n]
        approx += lo[m] * xm
        detail += hi[m] * xm
    return approx, detail


def idwt_step(approx, detail, lo, hi):
    """Adjoint of :func:`dwt_step`; exact inverse for an orthonormal pair."""
    approx = np.ascontiguousarray(approx, dtype=np.float64)
    detail = np.ascontiguousarray(detail, dtype=np.float64)
    half = approx.size
    n = 2 * half
    out = np.zeros(n)
    k2 = 2 * np.arange(half)
    for m in range(lo.size):
        # For fixed m the target indices are distinct, so fancy += is safe.
        out[(k2 + m) % n] += lo[m] * approx + hi[m] * detail
    return out
