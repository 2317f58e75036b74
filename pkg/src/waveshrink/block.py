"""Block thresholding: nonoverlapping James-Stein blocks and overlapping
neighbourhood variants.

Within a block with energy S2, every coefficient is multiplied by the
common factor ``max(0, (S2 - lam * L * sigma**2) / S2)``.  The
nonoverlapping estimator uses blocks of length ``floor(ln n)`` with
``lam = 4.50524`` (the root of ``lam - ln(lam) - 3 = 0``); the overlapping
one shrinks inner blocks of length ``floor(ln(n)/2)`` by the energy of a
window extended by ``max(1, L0 // 2)`` on each side; its single-coefficient
special case uses a window of three and ``lam = (2/3) ln n``.  All logs are
natural: the quoted root pins the base.

Scaling coefficients are never touched.  Levels shorter than a block are
treated as one block; window indexing is circular within a level.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BLOCK_JS_LAMBDA",
    "BlockConfig",
    "block_js",
    "neigh_block",
    "neigh_coeff",
    "BLOCK_SCHEMES",
]

BLOCK_JS_LAMBDA = 4.50524
BLOCK_SCHEMES = ("block_js", "neigh_block", "neigh_coeff")


@dataclass(frozen=True)
class BlockConfig:
    """Block scheme parameters; ``None`` selects the scheme's default."""

    scheme: str = "block_js"
    block_length: int = None
    lam: float = None
    tail: str = "augmented"

    def __post_init__(self):
        if self.scheme not in BLOCK_SCHEMES:
            raise ValueError(f"unknown block scheme {self.scheme!r}")
        if self.block_length is not None and self.block_length < 1:
            raise ValueError("fixed block length must be >= 1")
        if self.lam is not None and not self.lam > 0:
            raise ValueError("fixed lam must be positive")
        if self.tail not in ("augmented", "truncated"):
            raise ValueError("tail policy must be 'augmented' or 'truncated'")


def _js_factor(energy, penalty):
    if energy <= 0.0:
        return 0.0
    return max(0.0, (energy - penalty) / energy)


def _block_js_level(d, sigma2, L, lam, tail):
    m = d.size
    out = d.copy()
    if m <= L:
        # Coarse level shorter than a block: one block spanning the level.
        energy = float(np.dot(d, d))
        out *= _js_factor(energy, lam * m * sigma2)
        return out
    n_full = m // L
    for b in range(n_full):
        seg = slice(b * L, (b + 1) * L)
        energy = float(np.dot(d[seg], d[seg]))
        out[seg] = d[seg] * _js_factor(energy, lam * L * sigma2)
    r = m - n_full * L
    if r:
        tail_idx = np.arange(m - r, m)
        if tail == "truncated":
            # Leftover coefficients are dropped from the expansion.
            out[tail_idx] = 0.0
        else:
            # Augmented: refill the last block with the leading coefficients.
            window = np.concatenate([d[m - r :], d[: L - r]])
            energy = float(np.dot(window, window))
            out[tail_idx] = d[tail_idx] * _js_factor(energy, lam * L * sigma2)
    return out


def block_js(decomp, sigma, config=None):
    """Nonoverlapping James-Stein block thresholding of all detail levels."""
    if not sigma > 0:
        raise ValueError("sigma must be positive")
    config = config or BlockConfig("block_js")
    n = decomp.n
    L = config.block_length or max(1, int(np.floor(np.log(n))))
    lam = config.lam if config.lam is not None else BLOCK_JS_LAMBDA
    sigma2 = sigma * sigma
    return decomp.map_details(
        lambda j, d: _block_js_level(d, sigma2, L, lam, config.tail)
    )


def _neigh_level(d, sigma2, L0, L1, lam):
    m = d.size
    L = L0 + 2 * L1
    out = np.empty_like(d)
    starts = range(0, m, L0) if m > L0 else [0]
    for s in starts:
        inner = np.arange(s, min(s + L0, m))
        window = np.arange(s - L1, s - L1 + L) % m
        energy = float(np.dot(d[window], d[window]))
        out[inner] = d[inner] * _js_factor(energy, lam * L * sigma2)
    return out


def neigh_block(decomp, sigma_hat, config=None):
    """Overlapping block thresholding (energy read from an extended window)."""
    if not sigma_hat > 0:
        raise ValueError("sigma_hat must be positive")
    config = config or BlockConfig("neigh_block")
    n = decomp.n
    L0 = config.block_length or max(1, int(np.floor(np.log(n) / 2.0)))
    L1 = max(1, L0 // 2)
    lam = config.lam if config.lam is not None else BLOCK_JS_LAMBDA
    sigma2 = sigma_hat * sigma_hat
    return decomp.map_details(lambda j, d: _neigh_level(d, sigma2, L0, L1, lam))


def neigh_coeff(decomp, sigma_hat, n=None):
    """Coefficient-wise neighbourhood thresholding: window 3, lam = (2/3) ln n."""
    if n is None:
        n = decomp.n
    config = BlockConfig("neigh_coeff", block_length=1, lam=(2.0 / 3.0) * np.log(n))
    return neigh_block(decomp, sigma_hat, config)
