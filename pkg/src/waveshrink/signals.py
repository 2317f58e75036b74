"""Benchmark test signals and seeded noise injection.

Four deterministic test functions on [0, 1], sampled at ``t_i = i/n``:

* ``heavisine``: ``4 sin(4 pi t) - sgn(t - 0.3) - sgn(0.72 - t)`` -- a
  smooth oscillation with two jumps.
* ``blip``: a linear trend plus a narrow Gaussian bump, with a jump at
  ``t = 0.8`` (the bump recurs, centred at 1.3, so both ends match).
* ``corner``: continuous piecewise-linear ramp with a sharp corner at
  ``t = 0.4``; no jumps.
* ``wave``: ``0.5 + 0.3 cos(4 pi t) + 0.05 cos(24 pi t)`` -- everywhere
  smooth, with a small high-frequency component.

Noise level is set through the signal-to-noise ratio
``snr = sd(signal) / sigma`` (population standard deviation).
"""

from dataclasses import dataclass

import numpy as np

__all__ = ["TestSignal", "SIGNAL_NAMES", "get_signal", "sample_signal", "make_noisy"]


def _heavisine(t):
    return 4.0 * np.sin(4.0 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)


def _blip(t):
    left = 0.32 + 0.6 * t + 0.3 * np.exp(-100.0 * (t - 0.3) ** 2)
    right = -0.28 + 0.6 * t + 0.3 * np.exp(-100.0 * (t - 1.3) ** 2)
    return np.where(t <= 0.8, left, right)


def _corner(t):
    return np.where(t <= 0.4, 3.0 * t, 2.0 * (1.0 - t))


def _wave(t):
    return 0.5 + 0.3 * np.cos(4.0 * np.pi * t) + 0.05 * np.cos(24.0 * np.pi * t)


@dataclass(frozen=True)
class TestSignal:
    name: str
    evaluate: callable

    def sample(self, n):
        """Values on the equispaced design ``t_i = i / n``, i = 1..n."""
        t = np.arange(1, n + 1) / n
        return np.asarray(self.evaluate(t), dtype=np.float64)


_CATALOG = {
    "heavisine": TestSignal("heavisine", _heavisine),
    "blip": TestSignal("blip", _blip),
    "corner": TestSignal("corner", _corner),
    "wave": TestSignal("wave", _wave),
}

SIGNAL_NAMES = tuple(_CATALOG)


def get_signal(name):
    try:
        return _CATALOG[name.strip().lower()]
    except KeyError:
        raise ValueError(
            f"unknown test signal {name!r}; available: {list(SIGNAL_NAMES)}"
        ) from None


def sample_signal(name, n):
    return get_signal(name).sample(n)


def make_noisy(signal_values, snr, seed):
    """Add seeded Gaussian noise at the requested signal-to-noise ratio.

    Returns ``(noisy, sigma)`` with ``sigma = sd(signal) / snr``.  Identical
    seeds produce bitwise-identical noise.
    """
    values = np.asarray(signal_values, dtype=np.float64)
    if values.size < 2:
        raise ValueError("need at least 2 samples")
    if not snr > 0:
        raise ValueError("snr must be positive")
    sd = float(np.std(values))
    if sd == 0.0:
        raise ValueError("constant signal has no scale to set the noise level")
    sigma = sd / snr
    rng = np.random.default_rng(seed)
    return values + sigma * rng.standard_normal(values.size), sigma
