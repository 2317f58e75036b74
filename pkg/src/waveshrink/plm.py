"""Wavelet-domain estimation of partially linear models.

Model: ``y_i = x_i' beta + f(i/n) + noise``.  Transforming y and each design
column to the wavelet domain keeps the structure (``z = A beta + theta +
eps``) while making ``theta`` sparse.  Minimizing

    sum_i 0.5 * (z_i - A_i' beta - theta_i)^2 + lam * sum_{i >= i0} |theta_i|

profiles out ``theta`` in closed form (keep scaling rows, soft-threshold
detail rows), leaving a Huber M-estimation problem in ``beta`` alone, which
is solved by iteratively reweighted least squares.  The noise scale comes
from a QR decomposition of the wavelet-domain design: the last ``n - p``
components of ``Q' z`` are free of the linear part, so their MAD estimates
sigma as in ordinary wavelet regression.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import qr as _scipy_qr

from . import rules as _rules
from ._quadrature import CumulativeIntegral
from .denoise import MAD_NORMALIZER, mad_sigma, universal_threshold
from .transform import WaveletDecomposition, dwt, idwt

__all__ = [
    "PLMData",
    "PLMFit",
    "FitConvergenceError",
    "huber_loss",
    "theta_given_beta",
    "huber_objective",
    "fit_plm",
    "estimate_sigma_qr",
    "rho_from_rule",
]


class FitConvergenceError(RuntimeError):
    """IRLS failed to reach the gradient tolerance; carries the last iterate."""

    def __init__(self, message, beta_last, gradient_norm):
        super().__init__(message)
        self.beta_last = beta_last
        self.gradient_norm = gradient_norm


@dataclass(frozen=True)
class PLMData:
    """Responses ``y`` (length ``2**J``) and an ``n x p`` design matrix."""

    y: np.ndarray
    x: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y, dtype=np.float64)
        x = np.asarray(self.x, dtype=np.float64)
        if x.ndim == 1:
            x = x[:, None]
        n = y.size
        if y.ndim != 1 or n < 2 or n & (n - 1):
            raise ValueError("y must be 1-D with power-of-two length")
        if x.shape[0] != n:
            raise ValueError("design matrix must have one row per response")
        if x.shape[1] >= n:
            raise ValueError("need p < n")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", x)

    @property
    def n(self):
        return self.y.size

    @property
    def p(self):
        return self.x.shape[1]


@dataclass
class PLMFit:
    beta_hat: np.ndarray
    theta_hat: np.ndarray
    f_hat: np.ndarray
    sigma_hat: float
    lam: float
    coarse_level: int
    n_iterations: int
    warnings: list = field(default_factory=list)


def huber_loss(u, lam):
    """Quadratic inside ``|u| <= lam``, linear outside, C1 at the knot."""
    u = np.asarray(u, dtype=np.float64)
    au = np.abs(u)
    out = np.where(au <= lam, 0.5 * u * u, lam * au - 0.5 * lam * lam)
    if out.ndim == 0:
        return float(out)
    return out


def theta_given_beta(z, a_matrix, beta, lam, i0):
    """Closed-form partial minimizer over the function coefficients.

    Rows below ``i0`` (the scaling block) keep their residual verbatim;
    detail rows are soft-thresholded at ``lam``.
    """
    z = np.asarray(z, dtype=np.float64)
    residual = z - np.asarray(a_matrix, dtype=np.float64) @ np.asarray(beta)
    out = residual.copy()
    out[i0:] = _rules.apply(_rules.ShrinkageRule("soft", lam), residual[i0:])
    return out


def huber_objective(z_det, a_det, beta, lam):
    """J(beta) = sum of Huber losses over the penalized (detail) rows."""
    residual = z_det - a_det @ beta
    return float(np.sum(huber_loss(residual, lam)))


def _huber_gradient(z_det, a_det, beta, lam):
    residual = z_det - a_det @ beta
    return -a_det.T @ np.clip(residual, -lam, lam)


def _active_set_polish(a_det, z_det, beta, lam):
    """Exact minimizer of the quadratic model on the current active set.

    On a fixed partition into quadratic (|r| <= lam) and linear rows the
    Huber objective is quadratic; stationarity gives
    ``(A_I' A_I) beta = A_I' z_I + lam * A_out' sign(r_out)``.  One or two
    such solves push the gradient to the floating-point floor once IRLS has
    found the basin.
    """
    residual = z_det - a_det @ beta
    inside = np.abs(residual) <= lam
    a_in = a_det[inside]
    rhs = a_in.T @ z_det[inside] + lam * (
        a_det[~inside].T @ np.sign(residual[~inside])
    )
    gram = a_in.T @ a_in
    candidate, *_ = np.linalg.lstsq(gram, rhs, rcond=None)
    return candidate


def _irls_huber(a_det, z_det, lam, tol=1e-10, max_iter=200):
    """IRLS for the Huber objective; weights min(1, lam/|r|).

    Plain IRLS stalls once objective decrements fall below roundoff, so
    whenever the gradient is small the iterate is polished by exact solves
    on the frozen active set (accepted only when they do not increase the
    objective).
    """
    n, p = a_det.shape
    notes = []
    beta, _, rank, _ = np.linalg.lstsq(a_det, z_det, rcond=None)
    if rank < p:
        notes.append(f"design rank {rank} < {p}; using minimum-norm solves")
        warnings.warn(notes[-1], stacklevel=3)
    objective = huber_objective(z_det, a_det, beta, lam)
    scale = float(np.max(np.abs(a_det))) if a_det.size else 0.0
    polish_level = max(tol, 1e-6 * max(scale, 1.0))
    for iteration in range(1, max_iter + 1):
        gradient = _huber_gradient(z_det, a_det, beta, lam)
        gnorm = float(np.max(np.abs(gradient)))
        if gnorm <= tol:
            return beta, iteration - 1, notes
        if gnorm <= polish_level:
            polished = _active_set_polish(a_det, z_det, beta, lam)
            pol_grad = float(
                np.max(np.abs(_huber_gradient(z_det, a_det, polished, lam)))
            )
            if pol_grad <= tol:
                # Gradient criterion met; convexity certifies the minimum.
                return polished, iteration, notes
            pol_obj = huber_objective(z_det, a_det, polished, lam)
            # Accept up to summation roundoff; objectives this close cannot
            # be ordered reliably in floating point.
            if pol_obj <= objective + 1e-12 * (1.0 + abs(objective)):
                beta, objective = polished, pol_obj
        residual = z_det - a_det @ beta
        w = np.minimum(1.0, lam / np.maximum(np.abs(residual), 1e-300))
        sw = np.sqrt(w)
        candidate, *_ = np.linalg.lstsq(a_det * sw[:, None], z_det * sw, rcond=None)
        cand_obj = huber_objective(z_det, a_det, candidate, lam)
        halvings = 0
        while cand_obj > objective and halvings < 60:
            candidate = 0.5 * (candidate + beta)
            cand_obj = huber_objective(z_det, a_det, candidate, lam)
            halvings += 1
        beta, objective = candidate, cand_obj
    gradient = _huber_gradient(z_det, a_det, beta, lam)
    gnorm = float(np.max(np.abs(gradient)))
    if gnorm <= tol:
        return beta, max_iter, notes
    raise FitConvergenceError(
        f"IRLS did not converge within {max_iter} iterations "
        f"(gradient inf-norm {gnorm:.3e})",
        beta_last=beta,
        gradient_norm=gnorm,
    )


def _qr_mad(a_j, z_j, strict):
    n, p = a_j.shape
    q, r, piv = _scipy_qr(a_j, pivoting=True)
    diag = np.abs(np.diag(r))
    tol = max(n, p) * np.finfo(float).eps * (diag.max() if diag.size else 0.0)
    deficient = np.flatnonzero(diag <= tol)
    if deficient.size:
        column = int(piv[deficient[0]])
        if strict:
            raise ValueError(
                f"design column {column} is linearly dependent; "
                "cannot project it out for variance estimation"
            )
        rank = int(deficient[0])
        if rank == 0:
            return None  # caller falls back to plain MAD
        return _qr_mad(a_j[:, piv[:rank]], z_j, strict=True)
    w = q.T @ z_j
    return float(np.median(np.abs(w[p:])) / MAD_NORMALIZER)


def estimate_sigma_qr(a_j, z_j):
    """Noise scale from the design-free components of the rotated response.

    QR-decompose the wavelet-domain design, rotate ``z`` by ``Q'`` and take
    MAD/0.6745 of the last ``n - p`` components.  Raises ``ValueError``
    naming the offending column when the design is rank deficient.
    """
    a = np.asarray(a_j, dtype=np.float64)
    if a.ndim == 1:
        a = a[:, None]
    z = np.asarray(z_j, dtype=np.float64)
    n, p = a.shape
    if z.shape != (n,) or n <= p:
        raise ValueError("need a_j of shape (n, p) with n > p and matching z_j")
    return _qr_mad(a, z, strict=True)


def fit_plm(data, basis, coarse_level=0, sigma="mad", lam="universal"):
    """Three-step wavelet PLM fit.

    1. DWT the response and every design column (flattened coefficient
       vectors, scaling block first).
    2. Estimate ``beta`` by IRLS on the Huber objective over detail rows;
       ``sigma`` is a known value or ``"mad"`` for the QR-based estimate at
       full depth, and ``lam`` a fixed value or ``"universal"`` for
       ``sigma * sqrt(2 ln n)``.
    3. Keep scaling residuals, soft-threshold detail residuals, invert.
    """
    if not isinstance(data, PLMData):
        data = PLMData(*data)
    n, p = data.n, data.p
    j0 = coarse_level
    notes = []

    z_full = dwt(data.y, basis, 0).flatten()
    a_full = np.column_stack([dwt(data.x[:, k], basis, 0).flatten() for k in range(p)])
    if j0 == 0:
        z, a = z_full, a_full
    else:
        z = dwt(data.y, basis, j0).flatten()
        a = np.column_stack([dwt(data.x[:, k], basis, j0).flatten() for k in range(p)])

    if isinstance(sigma, str):
        if sigma != "mad":
            raise ValueError("sigma must be 'mad' or a known value")
        sigma_hat = _qr_mad(a_full, z_full, strict=False)
        if sigma_hat is None:
            notes.append("design has rank 0; sigma from plain finest-detail MAD")
            warnings.warn(notes[-1], stacklevel=2)
            sigma_hat = mad_sigma(z_full[n // 2 :])
    else:
        sigma_hat = float(sigma)
        if sigma_hat < 0:
            raise ValueError("known sigma must be nonnegative")

    lam_value = (
        universal_threshold(n, sigma_hat) if isinstance(lam, str) else float(lam)
    )
    if not lam_value > 0:
        raise ValueError("PLM threshold must resolve to a positive value")

    i0 = 2**j0
    beta, iterations, irls_notes = _irls_huber(a[i0:], z[i0:], lam_value)
    notes.extend(irls_notes)
    theta = theta_given_beta(z, a, beta, lam_value, i0)
    f_hat = idwt(WaveletDecomposition.from_flat(theta, j0), basis)
    return PLMFit(
        beta_hat=beta,
        theta_hat=theta,
        f_hat=f_hat,
        sigma_hat=float(sigma_hat),
        lam=lam_value,
        coarse_level=j0,
        n_iterations=iterations,
        warnings=notes,
    )


def rho_from_rule(rule):
    """M-estimation loss induced by a rule: the primitive of u - delta(u).

    For the soft rule this reproduces the Huber loss; for hard thresholding
    it is mean truncation (quadratic capped at ``lam**2 / 2``).  Returns an
    even callable accepting scalars or arrays.
    """
    cumulative = CumulativeIntegral(
        lambda v: v - _rules.apply(rule, v),
        kinks=_rules.rule_kinks(rule),
        scale=max(rule.lam, 1.0),
    )

    def rho(u):
        return cumulative(np.abs(u))

    rho.rule = rule
    return rho
