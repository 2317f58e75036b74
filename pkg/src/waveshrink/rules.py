"""Scalar shrinkage and thresholding rules applied coefficient-wise.

Ten rule families, all antisymmetric, sign-preserving and magnitude
shrinking:

=============  ================================================================
kind           closed form for x >= 0
=============  ================================================================
hard           0 if x <= lam else x
soft           (x - lam)_+
firm           0 / lam2*(x - lam)/(lam2 - lam) / x on [0, lam], (lam, lam2], rest
garrote        0 if x <= lam else x - lam**2/x
scad           soft(x, lam) on [0, 2*lam]; ((a-1)x - a*lam)/(a-2) on (2*lam, a*lam]; x beyond
linear         x / (1 + lam)
charbonnier    x * (1 - sqrt(lam**2 / (lam**2 + 2 x**2)))
perona_malik   2 x**3 / (2 x**2 + lam**2)
weickert       x * exp(-0.20718 lam**8 / x**8), 0 at x = 0
tukey          x * (1 - (1 - 2 x**2/lam**2)**2) up to lam/sqrt(2), x beyond
=============  ================================================================

The Weickert constant is stored once as 3.31488 (the diffusivity form); the
shrinkage constant 0.20718 is derived from it by an exact division by 16.
"""

from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "RULE_KINDS",
    "ShrinkageRule",
    "apply",
    "parse_rule",
    "limiting_cases_check",
    "rule_kinks",
    "WEICKERT_DIFFUSIVITY_CONSTANT",
    "WEICKERT_SHRINK_CONSTANT",
    "SCAD_DEFAULT_A",
]

RULE_KINDS = (
    "hard",
    "soft",
    "firm",
    "garrote",
    "scad",
    "linear",
    "charbonnier",
    "perona_malik",
    "weickert",
    "tukey",
)

WEICKERT_DIFFUSIVITY_CONSTANT = 3.31488
WEICKERT_SHRINK_CONSTANT = WEICKERT_DIFFUSIVITY_CONSTANT / 16.0
SCAD_DEFAULT_A = 3.7


@dataclass(frozen=True)
class ShrinkageRule:
    """A rule family with its threshold parameters.

    ``lam`` is the main threshold (``lam >= 0``; zero degenerates every rule
    to a no-op or near-identity).  ``lam2`` applies to ``firm`` only and must
    exceed ``lam``; ``a`` applies to ``scad`` only and must exceed 2.
    """

    kind: str
    lam: float = 1.0
    lam2: float = None
    a: float = None

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if not np.isfinite(self.lam) or self.lam < 0:
            raise ValueError("lam must be a finite nonnegative real")
        if self.kind == "firm":
            if self.lam2 is None:
                object.__setattr__(self, "lam2", 2.0 * self.lam)
            if self.lam <= 0 or not self.lam < self.lam2:
                raise ValueError("firm requires 0 < lam < lam2")
        elif self.lam2 is not None:
            raise ValueError("lam2 is only meaningful for the firm rule")
        if self.kind == "scad":
            if self.a is None:
                object.__setattr__(self, "a", SCAD_DEFAULT_A)
            if not self.a > 2:
                raise ValueError("scad requires a > 2")
        elif self.a is not None:
            raise ValueError("a is only meaningful for the scad rule")

    def with_lambda(self, lam):
        """Same family rebound to a new threshold (firm keeps lam2/lam)."""
        if self.kind == "firm":
            if lam <= 0:
                raise ValueError("firm threshold must stay positive")
            return replace(self, lam=lam, lam2=lam * (self.lam2 / self.lam))
        return replace(self, lam=lam)

    def __call__(self, x):
        return apply(self, x)

    def spec_string(self):
        if self.kind == "firm":
            return f"firm:{self.lam},{self.lam2}"
        if self.kind == "scad":
            return f"scad:{self.lam},{self.a}"
        return f"{self.kind}:{self.lam}"


def _hard(x, lam):
    return np.where(np.abs(x) > lam, x, 0.0)


def _soft(x, lam):
    return np.sign(x) * np.maximum(np.abs(x) - lam, 0.0)


def _firm(x, lam, lam2):
    ax = np.abs(x)
    mid = np.sign(x) * lam2 * (ax - lam) / (lam2 - lam)
    return np.where(ax <= lam, 0.0, np.where(ax <= lam2, mid, x))


def _garrote(x, lam):
    ax = np.abs(x)
    keep = ax > lam
    safe = np.where(keep, x, 1.0)
    return np.where(keep, x - lam**2 / safe, 0.0)


def _scad(x, lam, a):
    ax = np.abs(x)
    soft_part = np.sign(x) * np.maximum(ax - lam, 0.0)
    mid = ((a - 1.0) * x - a * lam * np.sign(x)) / (a - 2.0)
    return np.where(ax <= 2.0 * lam, soft_part, np.where(ax <= a * lam, mid, x))


def _linear(x, lam):
    return x / (1.0 + lam)


def _charbonnier(x, lam):
    if lam == 0.0:
        return x + 0.0 * x
    return x * (1.0 - np.sqrt(lam**2 / (lam**2 + 2.0 * x**2)))


def _perona_malik(x, lam):
    if lam == 0.0:
        return x + 0.0 * x
    return 2.0 * x**3 / (2.0 * x**2 + lam**2)


def _weickert(x, lam):
    ax = np.abs(x)
    nonzero = ax > 0.0
    safe = np.where(nonzero, ax, 1.0)
    with np.errstate(over="ignore"):
        factor = np.exp(-WEICKERT_SHRINK_CONSTANT * (lam / safe) ** 8)
    return np.where(nonzero, x * factor, 0.0)


def _tukey(x, lam):
    if lam == 0.0:
        return x + 0.0 * x
    t = (x / lam) ** 2
    # 4t(1-t) written as 1 - (1-2t)^2 cannot exceed 1 in floating point,
    # preserving |delta(x)| <= |x| exactly at the branch boundary.
    factor = 1.0 - (1.0 - 2.0 * t) ** 2
    return np.where(np.abs(x) <= lam / np.sqrt(2.0), x * factor, x)


def apply(rule, x):
    """Evaluate ``delta_lam(x)`` for a scalar or array ``x``."""
    arr = np.asarray(x, dtype=np.float64)
    kind, lam = rule.kind, rule.lam
    if kind == "hard":
        out = _hard(arr, lam)
    elif kind == "soft":
        out = _soft(arr, lam)
    elif kind == "firm":
        out = _firm(arr, lam, rule.lam2)
    elif kind == "garrote":
        out = _garrote(arr, lam)
    elif kind == "scad":
        out = _scad(arr, lam, rule.a)
    elif kind == "linear":
        out = _linear(arr, lam)
    elif kind == "charbonnier":
        out = _charbonnier(arr, lam)
    elif kind == "perona_malik":
        out = _perona_malik(arr, lam)
    elif kind == "weickert":
        out = _weickert(arr, lam)
    else:
        out = _tukey(arr, lam)
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out


def parse_rule(spec):
    """Parse a CLI rule spec ``kind[:param[,param]]``.

    Examples: ``soft:1.0``, ``firm:1.0,2.0``, ``scad:1.0,3.7``, ``hard``
    (bare kind defaults to lam = 1, rebound later by the threshold policy).
    """
    text = spec.strip()
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind not in RULE_KINDS:
        raise ValueError(f"unknown rule kind {kind!r} in spec {spec!r}")
    params = [p for p in (rest.split(",") if rest else []) if p.strip()]
    try:
        values = [float(p) for p in params]
    except ValueError:
        raise ValueError(f"non-numeric parameter in rule spec {spec!r}") from None
    if len(values) > 2:
        raise ValueError(f"too many parameters in rule spec {spec!r}")
    lam = values[0] if values else 1.0
    second = values[1] if len(values) > 1 else None
    if kind == "firm":
        return ShrinkageRule("firm", lam, lam2=second)
    if kind == "scad":
        return ShrinkageRule("scad", lam, a=second)
    if second is not None:
        raise ValueError(f"rule {kind!r} takes a single parameter")
    return ShrinkageRule(kind, lam)


def rule_kinks(rule):
    """Nonnegative abscissae where ``delta`` is only piecewise smooth."""
    lam = rule.lam
    if rule.kind in ("hard", "soft", "garrote"):
        return [lam]
    if rule.kind == "firm":
        return [lam, rule.lam2]
    if rule.kind == "scad":
        return [lam, 2.0 * lam, rule.a * lam]
    if rule.kind == "tukey":
        return [lam / np.sqrt(2.0)]
    return []


@dataclass(frozen=True)
class LimitingCasesReport:
    lam: float
    max_dev_hard: float
    max_dev_soft: float
    tol_hard: float
    tol_soft: float

    @property
    def passed(self):
        return self.max_dev_hard <= self.tol_hard and self.max_dev_soft <= self.tol_soft

    def __bool__(self):
        return self.passed


def limiting_cases_check(lam=1.0, grid=None, eps=1e-9, big=1e9):
    """Check that firm interpolates between hard and soft thresholding.

    With ``lam2 -> lam`` firm tends to hard (away from the jump at
    ``|x| = lam``), and with ``lam2 -> inf`` it tends to soft.  Deviations
    are measured on a grid and compared against tolerances tied to the limit
    parameters.
    """
    if grid is None:
        grid = np.linspace(-10.0 * lam, 10.0 * lam, 4001)
    grid = np.asarray(grid, dtype=np.float64)

    near_hard = ShrinkageRule("firm", lam, lam2=lam * (1.0 + eps))
    hard = ShrinkageRule("hard", lam)
    # Exclude the transition sliver (lam, lam2] where hard and firm genuinely
    # differ for any finite lam2.
    away = np.abs(np.abs(grid) - lam) > 2.0 * eps * lam
    dev_hard = float(
        np.max(np.abs(apply(near_hard, grid[away]) - apply(hard, grid[away])))
    )

    near_soft = ShrinkageRule("firm", lam, lam2=big * lam)
    soft = ShrinkageRule("soft", lam)
    dev_soft = float(np.max(np.abs(apply(near_soft, grid) - apply(soft, grid))))

    # Hard limit error is O(eps * |x|) inside (lam, lam2]; soft limit error is
    # O(|x| / big) globally on the grid.
    gmax = float(np.max(np.abs(grid)))
    return LimitingCasesReport(
        lam=lam,
        max_dev_hard=dev_hard,
        max_dev_soft=dev_soft,
        tol_hard=max(10.0 * eps * gmax, 1e-6),
        tol_soft=max(10.0 * gmax / big, 1e-6),
    )
