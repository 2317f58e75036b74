"""Orthonormal wavelet filter pairs.

A :class:`FilterPair` holds the scaling (low-pass) filter ``h`` and the
wavelet (high-pass) filter derived from it by the alternating-flip
quadrature-mirror rule

    ``high[k] = (-1) ** (k + 1) * low[L - 1 - k]``,

the one orientation convention used throughout the package.  For Haar it
yields the high-pass ``(-1, 1)/sqrt(2)``, which fixes the sign of every
detail coefficient produced by the transform.

Built-ins: Haar and the extremal-phase Daubechies family ``db2`` .. ``db10``
(``dbN`` has ``N`` vanishing moments and ``2N`` taps), computed by spectral
factorization of the Daubechies polynomial rather than from hard-coded
tables.  Construction validates the orthonormality invariants, so a
factorization regression cannot go unnoticed.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

__all__ = ["FilterPair", "haar", "daubechies", "get_wavelet", "available_wavelets"]

_VALIDATION_TOL = 1e-11


def _quadrature_mirror(low):
    L = low.size
    k = np.arange(L)
    return (-1.0) ** (k + 1) * low[::-1]


@dataclass(frozen=True)
class FilterPair:
    """Quadrature-mirror low/high-pass pair defining an orthonormal basis.

    Parameters
    ----------
    name : str
        Identifier, e.g. ``"haar"`` or ``"db4"``.
    low_pass : ndarray
        Scaling filter ``h``; must sum to ``sqrt(2)`` and satisfy the
        even-shift orthonormality conditions.
    high_pass : ndarray
        Wavelet filter; derived from ``low_pass`` when omitted.
    n_vanishing_moments : int
        Number of vanishing moments of the wavelet.
    """

    name: str
    low_pass: np.ndarray
    high_pass: np.ndarray = field(default=None)
    n_vanishing_moments: int = 1

    def __post_init__(self):
        low = np.asarray(self.low_pass, dtype=np.float64).copy()
        if self.high_pass is None:
            high = _quadrature_mirror(low)
        else:
            high = np.asarray(self.high_pass, dtype=np.float64).copy()
        low.setflags(write=False)
        high.setflags(write=False)
        object.__setattr__(self, "low_pass", low)
        object.__setattr__(self, "high_pass", high)
        self._validate()

    def _validate(self):
        low, high = self.low_pass, self.high_pass
        if low.shape != high.shape or low.ndim != 1 or low.size < 2 or low.size % 2:
            raise ValueError("filters must be 1-D, even-length and equally long")
        if abs(low.sum() - np.sqrt(2.0)) > _VALIDATION_TOL:
            raise ValueError(f"{self.name}: low-pass sum differs from sqrt(2)")
        if abs(high.sum()) > _VALIDATION_TOL:
            raise ValueError(f"{self.name}: high-pass does not sum to zero")
        for m in range(low.size // 2):
            target = 1.0 if m == 0 else 0.0
            if abs(np.dot(low[: low.size - 2 * m], low[2 * m :]) - target) > _VALIDATION_TOL:
                raise ValueError(f"{self.name}: orthonormality fails at shift {m}")

    def __len__(self):
        return self.low_pass.size


def haar():
    """The Haar pair: low ``(1, 1)/sqrt(2)``, high ``(-1, 1)/sqrt(2)``."""
    s = 1.0 / np.sqrt(2.0)
    return FilterPair("haar", np.array([s, s]), n_vanishing_moments=1)


def _polish_roots(coeffs, roots, iterations=4):
    # A few Newton steps sharpen np.roots output to near machine precision.
    deriv = np.polyder(coeffs)
    for _ in range(iterations):
        step = np.polyval(coeffs, roots) / np.polyval(deriv, roots)
        roots = roots - step
    return roots


@lru_cache(maxsize=None)
def _daubechies_low(n_moments):
    if n_moments == 1:
        s = 1.0 / np.sqrt(2.0)
        return np.array([s, s])
    N = n_moments
    # Roots of P(y) = sum_{k<N} C(N-1+k, k) y^k, the half-band polynomial in
    # y = (2 - z - 1/z)/4.  Rooting this degree N-1 polynomial and mapping
    # each root through the exact quadratic z^2 - (2 - 4y)z + 1 = 0 is far
    # better conditioned than rooting the degree 2N-2 z-polynomial.
    p_y = np.array([comb(2 * N - 2 - k, N - 1 - k) for k in range(N)], dtype=np.float64)
    y_roots = _polish_roots(p_y, np.roots(p_y))
    b = 2.0 - 4.0 * y_roots.astype(complex)
    disc = np.sqrt(b * b - 4.0)
    z_candidates = np.stack([(b - disc) / 2.0, (b + disc) / 2.0])
    inside = np.where(np.abs(z_candidates[0]) < 1.0, z_candidates[0], z_candidates[1])
    if inside.size != N - 1 or np.any(np.abs(inside) >= 1.0):
        raise RuntimeError(f"spectral factorization failed for db{N}")
    q = np.real(np.poly(inside))  # monic, degree N-1, real by conjugate pairing
    h = q
    for _ in range(N):
        h = np.convolve(h, [0.5, 0.5])
    h = h * (np.sqrt(2.0) / h.sum())
    # Fix orientation: extremal phase puts the energy up front.
    if h[0] ** 2 + h[1] ** 2 < h[-1] ** 2 + h[-2] ** 2:
        h = h[::-1]
    return h


def daubechies(n_moments):
    """Extremal-phase Daubechies pair with ``n_moments`` vanishing moments."""
    if not 1 <= n_moments <= 10:
        raise ValueError("daubechies order must be between 1 and 10")
    if n_moments == 1:
        return haar()
    return FilterPair(
        f"db{n_moments}", _daubechies_low(n_moments), n_vanishing_moments=n_moments
    )


def available_wavelets():
    return ["haar"] + [f"db{n}" for n in range(2, 11)]


def get_wavelet(name):
    """Look up a built-in pair by name (``haar``, ``db1`` .. ``db10``)."""
    key = name.strip().lower()
    if key == "haar":
        return haar()
    if key.startswith("db"):
        try:
            order = int(key[2:])
        except ValueError:
            order = -1
        if 1 <= order <= 10:
            return daubechies(order)
    raise ValueError(f"unknown wavelet {name!r}; available: {available_wavelets()}")
