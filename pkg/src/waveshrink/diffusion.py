"""Shrinkage <-> nonlinear-diffusion correspondence.

A single explicit Euler step of the 1-D gradient-dependent diffusion

    (u_k - f_k)/dt = (f_{k+1} - f_k) g(|f_{k+1} - f_k|)
                   - (f_k - f_{k-1}) g(|f_k - f_{k-1}|)

with duplicated-endpoint reflecting boundaries is, for dt = 1/4, the same
operation as one level of shift-invariant Haar shrinkage.  The bridge in
both directions:

    g(s)     = 1 - (sqrt(2)/s) * delta(s / sqrt(2))      (shrinker -> diffusivity)
    delta(x) = x * (1 - g(sqrt(2) * |x|))                (diffusivity -> shrinker)

``g`` is 0/0 at s = 0; we define ``g(0)`` as the limit, evaluated at
``s = 1e-12 * max(lam, 1)``, which equals 1 for every rule that is flat at
the origin and lam/(1+lam) for linear shrinkage.
"""

from dataclasses import dataclass, field

import numpy as np

from . import rules as _rules

__all__ = [
    "Diffusivity",
    "shrink_to_diffusivity",
    "diffusivity_to_shrink",
    "named_diffusivity",
    "diffusion_step",
    "haar_shift_shrink_step",
]

SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class Diffusivity:
    """Gradient-dependent diffusion speed ``g(|x|)``."""

    name: str
    lam: float
    evaluate: callable = field(repr=False)

    def __call__(self, s):
        return self.evaluate(s)


def shrink_to_diffusivity(rule):
    """Diffusivity induced by a shrinkage rule (dt = 1/4 convention)."""
    eps = 1e-12 * max(rule.lam, 1.0)

    def evaluate(s):
        arr = np.abs(np.asarray(s, dtype=np.float64))
        safe = np.where(arr > 0.0, arr, eps)
        out = 1.0 - (SQRT2 / safe) * _rules.apply(rule, safe / SQRT2)
        if np.isscalar(s) or np.ndim(s) == 0:
            return float(out)
        return out

    return Diffusivity(name=f"from_{rule.kind}", lam=rule.lam, evaluate=evaluate)


def diffusivity_to_shrink(g):
    """Shrinkage function induced by a diffusivity: x * (1 - g(sqrt(2)|x|))."""

    def delta(x):
        arr = np.asarray(x, dtype=np.float64)
        out = arr * (1.0 - g(SQRT2 * np.abs(arr)))
        if np.isscalar(x) or np.ndim(x) == 0:
            return float(out)
        return out

    return delta


def _named_form(kind, lam, lam2, a):
    # Closed-form diffusivities as catalogued alongside the shrinkage rules.
    # All are evaluated with their limit value at s = 0.
    if kind == "linear":
        c = lam / (1.0 + lam)
        return lambda s: np.full_like(s, c)
    if kind == "soft":

        def soft_form(s):
            safe = np.where(s > 0, s, 1.0)
            return np.where(s > 0, 1.0 - np.maximum(s - SQRT2 * lam, 0.0) / safe, 1.0)

        return soft_form
    if kind == "hard":
        return lambda s: np.where(s <= SQRT2 * lam, 1.0, 0.0)
    if kind == "garrote":

        def garrote_form(s):
            safe = np.where(s > 0, s, 1.0)
            return np.where(s <= SQRT2 * lam, 1.0, 2.0 * lam**2 / safe**2)

        return garrote_form
    if kind == "firm":

        def firm_form(s):
            safe = np.where(s > 0, s, 1.0)
            mid = (lam / (lam2 - lam)) * (SQRT2 * lam2 / safe - 1.0)
            return np.where(
                s <= SQRT2 * lam, 1.0, np.where(s <= SQRT2 * lam2, mid, 0.0)
            )

        return firm_form
    if kind == "scad":

        def scad_form(s):
            safe = np.where(s > 0, s, 1.0)
            second = SQRT2 * lam / safe
            third = a * SQRT2 * lam / ((a - 2.0) * safe) - 1.0 / (a - 2.0)
            return np.where(
                s <= SQRT2 * lam,
                1.0,
                np.where(
                    s <= 2.0 * SQRT2 * lam,
                    second,
                    np.where(s <= a * SQRT2 * lam, third, 0.0),
                ),
            )

        return scad_form
    if kind == "charbonnier":
        return lambda s: 1.0 / np.sqrt(1.0 + (s / lam) ** 2)
    if kind == "perona_malik":
        return lambda s: 1.0 / (1.0 + (s / lam) ** 2)
    if kind == "weickert":

        def weickert_form(s):
            safe = np.where(s > 0, s, 1.0)
            with np.errstate(over="ignore"):
                tail = np.exp(-_rules.WEICKERT_DIFFUSIVITY_CONSTANT * (lam / safe) ** 8)
            return np.where(s > 0, 1.0 - tail, 1.0)

        return weickert_form
    if kind == "tukey":
        return lambda s: np.where(s <= lam, (1.0 - (s / lam) ** 2) ** 2, 0.0)
    raise ValueError(f"no named diffusivity for kind {kind!r}")


def named_diffusivity(kind, lam, lam2=None, a=None):
    """Closed-form diffusivity for a catalogued rule family.

    For ``charbonnier``, ``perona_malik``, ``weickert`` and ``tukey`` these
    are the classical diffusivities; for the remaining kinds they are the
    forms induced by the corresponding shrinkage rules.
    """
    if kind == "firm" and lam2 is None:
        lam2 = 2.0 * lam
    if kind == "scad" and a is None:
        a = _rules.SCAD_DEFAULT_A
    form = _named_form(kind, lam, lam2, a)

    def evaluate(s):
        arr = np.abs(np.asarray(s, dtype=np.float64))
        out = form(arr)
        if np.isscalar(s) or np.ndim(s) == 0:
            return float(out)
        return out

    return Diffusivity(name=kind, lam=lam, evaluate=evaluate)


def _reflect_diffs(f):
    # Forward differences f_{k+1} - f_k for k = -1 .. n-1 under duplicated
    # endpoints: the two boundary entries are zero.
    inner = np.diff(f)
    return np.concatenate([[0.0], inner, [0.0]])


def diffusion_step(signal, g, dt):
    """One explicit Euler step with reflecting boundary conditions.

    The update is in divergence form, so the sample sum is conserved
    exactly in exact arithmetic.
    """
    f = np.asarray(signal, dtype=np.float64)
    if f.ndim != 1 or f.size < 2:
        raise ValueError("signal must be 1-D with at least 2 samples")
    if not dt > 0:
        raise ValueError("dt must be positive")
    diffs = _reflect_diffs(f)
    flux = diffs * g(np.abs(diffs))
    return f + dt * (flux[1:] - flux[:-1])


def haar_shift_shrink_step(signal, delta):
    """Single-level shift-invariant Haar shrinkage of ``signal``.

    ``delta`` is a shrinkage callable (or :class:`~waveshrink.rules.ShrinkageRule`);
    the identity map reproduces the input exactly.
    """
    f = np.asarray(signal, dtype=np.float64)
    if f.ndim != 1 or f.size < 2:
        raise ValueError("signal must be 1-D with at least 2 samples")
    if isinstance(delta, _rules.ShrinkageRule):
        rule = delta
        delta = lambda u: _rules.apply(rule, u)  # noqa: E731
    diffs = _reflect_diffs(f)
    fwd, bwd = diffs[1:], diffs[:-1]
    smooth = f + 0.25 * fwd - 0.25 * bwd
    correction = (-np.asarray(delta(fwd / SQRT2)) + np.asarray(delta(bwd / SQRT2))) / (
        2.0 * SQRT2
    )
    return smooth + correction
