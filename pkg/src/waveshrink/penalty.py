"""Penalty functions synthesized from shrinkage rules.

Every increasing antisymmetric rule with 0 <= delta(x) <= x and
delta(x) -> inf induces a penalty through its generalized inverse

    r(x) = sup{ z : delta(z) <= x },     p(t) = int_0^t (r(u) - u) du,

and delta(z) is then the unique minimizer of (z - t)^2 + 2 p(|t|) wherever
delta is continuous.  The factor convention here puts the objective as
``(z - t)**2 + 2 * p(abs(t))`` so that the soft rule yields exactly the L1
penalty ``p(t) = lam * t``; closed forms quoted elsewhere with an extra
factor of two (ridge, hard) correspond to twice this module's ``p``.

``penalized_ls_minimizer`` is a brute-force grid minimizer with local
refinement; paired with ``penalty_from_rule`` it provides an independent
check that each rule really solves its own penalized least-squares problem.
"""

from dataclasses import dataclass, field

import numpy as np

from . import rules as _rules
from ._quadrature import CumulativeIntegral

__all__ = [
    "generalized_inverse",
    "PenaltyFunction",
    "penalty_from_rule",
    "penalized_ls_minimizer",
]

_BISECT_ITERATIONS = 100


def _bisect_inverse(rule, u):
    """Monotone bisection for r(u) = sup{z : delta(z) <= u}, u >= 0."""
    lo = u.copy()  # delta(u) <= u, so u is always feasible
    gap = np.full_like(u, 2.0 * max(rule.lam, 1e-6))
    if rule.kind == "firm":
        gap[:] = 2.0 * max(rule.lam2, rule.lam, 1e-6)
    hi = u + gap
    for _ in range(80):
        still_feasible = _rules.apply(rule, hi) <= u
        if not still_feasible.any():
            break
        gap = np.where(still_feasible, 2.0 * gap, gap)
        hi = u + gap
    else:
        raise RuntimeError(f"could not bracket the inverse of {rule.kind}")
    for _ in range(_BISECT_ITERATIONS):
        mid = 0.5 * (lo + hi)
        feasible = _rules.apply(rule, mid) <= u
        lo = np.where(feasible, mid, lo)
        hi = np.where(feasible, hi, mid)
    return 0.5 * (lo + hi)


def generalized_inverse(rule, x):
    """Evaluate r(x) = sup{z : delta(z) <= x} for x >= 0.

    Soft, hard and linear use their closed forms (x + lam, max(x, lam),
    (1 + lam) x); the other families fall back to bisection with tolerance
    well below 1e-12 on catalog scales.
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(arr < 0):
        raise ValueError("generalized inverse is defined for nonnegative x")
    flat = np.atleast_1d(arr).astype(np.float64)
    if rule.kind == "soft":
        out = flat + rule.lam
    elif rule.kind == "hard":
        out = np.maximum(flat, rule.lam)
    elif rule.kind == "linear":
        out = (1.0 + rule.lam) * flat
    else:
        out = _bisect_inverse(rule, flat)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out[0])
    return out.reshape(arr.shape)


def _inverse_kinks(rule):
    # Abscissae (in the u = delta(z) variable) where r is only piecewise
    # smooth: images of the rule's kinks, plus u = 0 handled by the grid.
    lam = rule.lam
    if rule.kind == "hard":
        return [lam]
    if rule.kind == "firm":
        return [rule.lam2]
    if rule.kind == "scad":
        return [lam, rule.a * lam]
    if rule.kind == "tukey":
        return [lam / np.sqrt(2.0)]
    return []


@dataclass
class PenaltyFunction:
    """p(t) = int_0^t (r(u) - u) du for the source rule; p(0) = 0."""

    source_rule: _rules.ShrinkageRule
    _cumulative: CumulativeIntegral = field(repr=False, default=None)

    def __post_init__(self):
        if self._cumulative is None:
            rule = self.source_rule
            self._cumulative = CumulativeIntegral(
                lambda u: generalized_inverse(rule, u) - u,
                kinks=_inverse_kinks(rule),
                scale=max(rule.lam, 1.0),
            )

    def integrand(self, u):
        """r(u) - u, the (nonnegative) derivative of the penalty."""
        return generalized_inverse(self.source_rule, u) - np.asarray(u, dtype=float)

    def evaluate(self, theta):
        """Penalty at ``abs(theta)`` (the penalty is even)."""
        return self._cumulative(np.abs(theta))

    def __call__(self, theta):
        return self.evaluate(theta)


def penalty_from_rule(rule):
    """Construct the :class:`PenaltyFunction` induced by ``rule``."""
    return PenaltyFunction(source_rule=rule)


def penalized_ls_minimizer(z, penalty, n_grid=100_001, refinements=2):
    """Brute-force global minimizer of k(t) = (z - t)^2 + 2 p(|t|).

    A dense grid over [-|z| - 1, |z| + 1] locates the basin; two local
    refinements shrink the effective resolution far below the initial grid
    step.  Serves as the independent oracle for the rule <-> penalty
    correspondence.
    """
    z = float(z)
    radius = abs(z) + 1.0
    grid = np.linspace(-radius, radius, n_grid)
    values = (z - grid) ** 2 + 2.0 * penalty.evaluate(grid)
    best = grid[int(np.argmin(values))]
    step = 2.0 * radius / (n_grid - 1)
    for _ in range(refinements):
        local = np.linspace(best - 2.0 * step, best + 2.0 * step, 2001)
        values = (z - local) ** 2 + 2.0 * penalty.evaluate(local)
        best = local[int(np.argmin(values))]
        step = 4.0 * step / 2000.0
    return float(best)
