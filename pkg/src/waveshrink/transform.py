"""Orthogonal discrete wavelet transform with periodic boundaries.

The transform is the classical pyramid cascade: at each stage the current
approximation is filtered by the low/high-pass pair and decimated, with
wraparound indexing.  Because the filter pair is orthonormal the whole map
is an orthogonal matrix; the inverse runs the adjoint cascade.  The
translation-invariant estimator averages a denoise pass over every circular
shift of the input.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from . import rules as _rules

__all__ = [
    "WaveletDecomposition",
    "dwt",
    "idwt",
    "cycle_spin_denoise",
    "validate_signal",
]


def validate_signal(signal):
    """Coerce to a 1-D float array of power-of-two length (else ValueError)."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("signal must be one-dimensional")
    n = x.size
    if n < 2 or n & (n - 1):
        raise ValueError(f"signal length must be a power of two >= 2, got {n}")
    return x


@dataclass
class WaveletDecomposition:
    """Scaling coefficients at level ``coarse_level`` plus per-level details.

    ``details[i]`` holds level ``coarse_level + i`` with ``2**(coarse_level+i)``
    coefficients; levels run up to ``depth - 1`` so the total coefficient
    count is ``2**depth``.
    """

    coarse_level: int
    depth: int
    scaling: np.ndarray
    details: list

    def __post_init__(self):
        self.scaling = np.asarray(self.scaling, dtype=np.float64)
        self.details = [np.asarray(d, dtype=np.float64) for d in self.details]
        j0, J = self.coarse_level, self.depth
        if not 0 <= j0 < J:
            raise ValueError(f"need 0 <= coarse_level < depth, got {j0}, {J}")
        if self.scaling.shape != (2**j0,):
            raise ValueError(
                f"scaling must have 2**{j0} coefficients, got {self.scaling.shape}"
            )
        if len(self.details) != J - j0:
            raise ValueError(f"expected detail levels {j0}..{J - 1}")
        for i, d in enumerate(self.details):
            if d.shape != (2 ** (j0 + i),):
                raise ValueError(
                    f"detail level {j0 + i} must have {2 ** (j0 + i)} coefficients"
                )

    @property
    def n(self):
        return 2**self.depth

    def level(self, j):
        """Detail coefficients of level ``j``."""
        if not self.coarse_level <= j < self.depth:
            raise ValueError(f"level {j} outside {self.coarse_level}..{self.depth - 1}")
        return self.details[j - self.coarse_level]

    @property
    def finest_details(self):
        return self.details[-1]

    def flatten(self):
        """The length-``2**depth`` coefficient vector (scaling, then details)."""
        return np.concatenate([self.scaling] + self.details)

    @classmethod
    def from_flat(cls, vec, coarse_level):
        vec = np.asarray(vec, dtype=np.float64)
        n = vec.size
        if n < 2 or n & (n - 1):
            raise ValueError("flat coefficient vector length must be a power of two")
        J = n.bit_length() - 1
        j0 = coarse_level
        if not 0 <= j0 < J:
            raise ValueError(f"need 0 <= coarse_level < {J}")
        parts = [vec[: 2**j0]]
        pos = 2**j0
        for j in range(j0, J):
            parts.append(vec[pos : pos + 2**j])
            pos += 2**j
        return cls(j0, J, parts[0], parts[1:])

    def energy(self):
        return float(np.dot(self.scaling, self.scaling)) + sum(
            float(np.dot(d, d)) for d in self.details
        )

    def map_details(self, fn):
        """New decomposition with ``fn(level, coeffs)`` applied to each level."""
        return WaveletDecomposition(
            self.coarse_level,
            self.depth,
            self.scaling.copy(),
            [fn(self.coarse_level + i, d) for i, d in enumerate(self.details)],
        )

    def copy(self):
        return WaveletDecomposition(
            self.coarse_level,
            self.depth,
            self.scaling.copy(),
            [d.copy() for d in self.details],
        )


def dwt(signal, basis, coarse_level=0):
    """Pyramid analysis of ``signal`` down to ``coarse_level``.

    Parameters
    ----------
    signal : array_like
        ``2**J`` samples.
    basis : FilterPair
    coarse_level : int
        Level ``j0`` of the retained scaling coefficients, ``0 <= j0 < J``.
    """
    x = validate_signal(signal)
    J = x.size.bit_length() - 1
    if not 0 <= coarse_level < J:
        raise ValueError(f"coarse_level must satisfy 0 <= j0 < {J}, got {coarse_level}")
    step = kernels.active().dwt_step
    lo, hi = basis.low_pass, basis.high_pass
    approx = x
    details = []
    for _ in range(J - coarse_level):
        approx, detail = step(approx, lo, hi)
        details.append(detail)
    details.reverse()
    return WaveletDecomposition(coarse_level, J, approx, details)


def idwt(decomp, basis):
    """Inverse of :func:`dwt`; exact up to floating-point roundoff."""
    step = kernels.active().idwt_step
    lo, hi = basis.low_pass, basis.high_pass
    approx = decomp.scaling
    for detail in decomp.details:
        if detail.size != approx.size:
            raise ValueError("decomposition level sizes are inconsistent")
        approx = step(approx, detail, lo, hi)
    return approx


def _denoise_details(signal, basis, rule, coarse_level):
    decomp = dwt(signal, basis, coarse_level)
    shrunk = decomp.map_details(lambda j, d: _rules.apply(rule, d))
    return idwt(shrunk, basis)


def cycle_spin_denoise(signal, basis, rule, threshold, coarse_level=0):
    """Translation-invariant denoising by averaging over all circular shifts.

    Every one of the ``n`` circularly shifted copies of the signal is
    denoised (details passed through ``rule`` at ``threshold``), unshifted,
    and the results averaged.
    """
    x = validate_signal(signal)
    rule = rule.with_lambda(threshold)
    total = _cycle_spin_sum(x, basis, rule, coarse_level, range(x.size))
    return total / x.size


def _cycle_spin_sum(x, basis, rule, coarse_level, shifts):
    # Partial sums over shift subsets let callers partition the work; the
    # result only differs by summation order (within ~1e-15 per term).
    total = np.zeros_like(x)
    for s in shifts:
        shifted = np.roll(x, -s)
        denoised = _denoise_details(shifted, basis, rule, coarse_level)
        total += np.roll(denoised, s)
    return total
