import numpy as np
import pytest

from waveshrink.signals import SIGNAL_NAMES, get_signal, make_noisy, sample_signal


def test_catalog_names():
    assert SIGNAL_NAMES == ("heavisine", "blip", "corner", "wave")


def test_unknown_signal_rejected():
    with pytest.raises(ValueError):
        get_signal("doppler")


def test_sampling_grid():
    # t_i = i/n, i = 1..n.
    f = get_signal("wave")
    values = f.sample(4)
    t = np.array([0.25, 0.5, 0.75, 1.0])
    assert np.array_equal(values, f.evaluate(t))


def test_heavisine_formula_spot_values():
    f = get_signal("heavisine")
    t = np.array([0.1, 0.5, 0.9])
    expected = 4 * np.sin(4 * np.pi * t) - np.sign(t - 0.3) - np.sign(0.72 - t)
    assert np.allclose(f.evaluate(t), expected, atol=0)


def test_blip_has_jump_at_080():
    f = get_signal("blip")
    left, right = f.evaluate(0.8), f.evaluate(0.8 + 1e-9)
    assert abs(left - right) > 0.5


def test_corner_is_continuous_with_kink():
    f = get_signal("corner")
    t = np.linspace(0, 1, 10001)
    v = f.evaluate(t)
    assert np.abs(np.diff(v)).max() < 1e-2  # continuous
    slopes = np.diff(v) / np.diff(t)
    assert slopes[100] == pytest.approx(3.0, abs=1e-6)
    assert slopes[-100] == pytest.approx(-2.0, abs=1e-6)


def test_all_signals_sample_finite():
    for name in SIGNAL_NAMES:
        values = sample_signal(name, 512)
        assert values.shape == (512,)
        assert np.all(np.isfinite(values))
        assert np.std(values) > 0


class TestMakeNoisy:
    def test_determinism(self):
        truth = sample_signal("heavisine", 128)
        a, sa = make_noisy(truth, 3.0, 42)
        b, sb = make_noisy(truth, 3.0, 42)
        assert np.array_equal(a, b)
        assert sa == sb

    def test_sigma_definition(self):
        truth = sample_signal("blip", 256)
        _, sigma = make_noisy(truth, 5.0, 0)
        assert sigma == np.std(truth) / 5.0

    def test_large_snr_limit(self):
        truth = sample_signal("wave", 64)
        noisy, sigma = make_noisy(truth, 1e12, 0)
        assert sigma <= 1e-12
        assert np.abs(noisy - truth).max() <= 1e-10

    def test_constant_signal_rejected(self):
        with pytest.raises(ValueError):
            make_noisy(np.ones(16), 3.0, 0)

    def test_noise_level_calibration(self):
        # Empirical sd(noise)/sd(signal) near 1/3 across 100 reps.
        truth = sample_signal("heavisine", 512)
        ratios = [
            np.std(make_noisy(truth, 3.0, np.random.SeedSequence([10, rep]))[0] - truth)
            / np.std(truth)
            for rep in range(100)
        ]
        assert abs(np.mean(ratios) - 1.0 / 3.0) <= 0.1 / 3.0
