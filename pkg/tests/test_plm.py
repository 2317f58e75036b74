import warnings

import numpy as np
import pytest

from waveshrink import (
    DenoiseConfig,
    FitConvergenceError,
    PLMData,
    ShrinkageRule,
    denoise,
    dwt,
    estimate_sigma_qr,
    fit_plm,
    get_wavelet,
    huber_loss,
    rho_from_rule,
    sample_signal,
    theta_given_beta,
)
from waveshrink.plm import huber_objective

DB4 = get_wavelet("db4")


def wavelet_design(y, X, basis=DB4, j0=0):
    z = dwt(y, basis, j0).flatten()
    a = np.column_stack(
        [dwt(X[:, k], basis, j0).flatten() for k in range(X.shape[1])]
    )
    return z, a


def sparse_f(n, scale=1.0):
    f = sample_signal("heavisine", n)
    f = f - f.mean()
    return scale * f / np.std(f)


class TestHuberLoss:
    def test_quadratic_branch(self):
        assert huber_loss(0.5, 1.0) == 0.125

    def test_linear_branch(self):
        assert huber_loss(2.0, 1.0) == 1.5

    def test_knot_continuity(self):
        assert huber_loss(1.0, 1.0) == 0.5
        below = huber_loss(np.nextafter(1.0, 0.0), 1.0)
        assert abs(below - 0.5) < 1e-12

    def test_even(self, rng):
        u = rng.standard_normal(64) * 3
        assert np.array_equal(huber_loss(u, 0.8), huber_loss(-u, 0.8))


class TestThetaGivenBeta:
    def test_small_residuals_killed(self):
        z = np.array([0.5, 0.1, -0.2, 0.3])
        a = np.zeros((4, 1))
        out = theta_given_beta(z, a, np.zeros(1), 1.0, 1)
        assert np.array_equal(out, [0.5, 0.0, 0.0, 0.0])

    def test_zero_lambda_interpolates(self, rng):
        z = rng.standard_normal(8)
        a = rng.standard_normal((8, 2))
        beta = rng.standard_normal(2)
        out = theta_given_beta(z, a, beta, 0.0, 2)
        assert np.allclose(out, z - a @ beta, atol=1e-15)

    def test_profiled_objective_equals_huber_sum(self, rng):
        # Eq-(4.6)-style identity on random instances.
        for _ in range(50):
            n, p, i0, lam = 16, int(rng.integers(1, 4)), 2, 0.7
            z = rng.standard_normal(n)
            a = rng.standard_normal((n, p))
            beta = rng.standard_normal(p)
            theta = theta_given_beta(z, a, beta, lam, i0)
            r = z - a @ beta
            joint = float(
                0.5 * np.sum((r - theta) ** 2) + lam * np.sum(np.abs(theta[i0:]))
            )
            profiled = huber_objective(z[i0:], a[i0:], beta, lam)
            assert abs(joint - profiled) <= 1e-12 * max(1.0, abs(profiled))


class TestRhoFromRule:
    def test_soft_reproduces_huber(self):
        rho = rho_from_rule(ShrinkageRule("soft", 1.0))
        grid = np.linspace(-8.0, 8.0, 1001)
        assert np.abs(rho(grid) - huber_loss(grid, 1.0)).max() <= 1e-9

    def test_soft_spot_value(self):
        rho = rho_from_rule(ShrinkageRule("soft", 1.0))
        assert rho(2.0) == pytest.approx(1.5, abs=1e-10)

    def test_hard_is_mean_truncation(self):
        rho = rho_from_rule(ShrinkageRule("hard", 1.0))
        grid = np.linspace(-6.0, 6.0, 601)
        expected = np.where(np.abs(grid) <= 1.0, grid**2 / 2.0, 0.5)
        assert np.abs(rho(grid) - expected).max() <= 1e-10

    def test_vanishing_threshold_vanishing_loss(self):
        rho = rho_from_rule(ShrinkageRule("soft", 1e-9))
        grid = np.linspace(-5.0, 5.0, 101)
        assert np.abs(rho(grid)).max() <= 1e-8


class TestSigmaQR:
    def test_exact_span_gives_zero(self, rng):
        a = rng.standard_normal((32, 2))
        z = a @ np.array([2.0, 3.0])
        assert estimate_sigma_qr(a, z) <= 1e-12

    def test_basis_vector_design(self, rng):
        z = rng.standard_normal(16)
        a = np.zeros((16, 1))
        a[0, 0] = 3.0
        got = estimate_sigma_qr(a, z)
        expected = np.median(np.abs(z[1:])) / 0.6745
        assert got == pytest.approx(expected, abs=1e-12)

    def test_rank_deficiency_names_column(self, rng):
        a = rng.standard_normal((16, 3))
        a[:, 2] = 2.0 * a[:, 0]
        with pytest.raises(ValueError, match="column"):
            estimate_sigma_qr(a, rng.standard_normal(16))

    def test_shape_validation(self, rng):
        with pytest.raises(ValueError):
            estimate_sigma_qr(rng.standard_normal((4, 4)), rng.standard_normal(4))

    def test_calibration_on_simulated_plm(self):
        # n=512, p=2, sigma=1: within 20% in >= 90 of 100 seeded reps.
        f = sparse_f(512)
        beta0 = np.array([3.0, -2.0])
        hits = 0
        for rep in range(100):
            rng = np.random.default_rng(np.random.SeedSequence([82, rep]))
            X = rng.standard_normal((512, 2))
            y = X @ beta0 + f + rng.standard_normal(512)
            z, a = wavelet_design(y, X)
            hits += abs(estimate_sigma_qr(a, z) - 1.0) <= 0.20
        assert hits >= 90


class TestFitPLM:
    def test_zero_design_matches_plain_soft_denoise(self, rng):
        y = sparse_f(64) + 0.3 * rng.standard_normal(64)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            fit = fit_plm(PLMData(y, np.zeros((64, 1))), DB4)
        assert np.array_equal(fit.beta_hat, [0.0])
        plain = denoise(y, DenoiseConfig(basis=DB4, rule=ShrinkageRule("soft")))
        assert np.array_equal(fit.f_hat, plain)

    def test_noiseless_linear_model(self, rng):
        X = rng.standard_normal((64, 2))
        beta0 = np.array([1.5, -0.7])
        y = X @ beta0
        fit = fit_plm(PLMData(y, X), DB4, sigma=1.0, lam=2.0)
        assert np.abs(fit.beta_hat - beta0).max() <= 1e-8
        assert np.all(fit.theta_hat[1:] == 0.0)

    def test_theta_consistent_with_closed_form(self, rng):
        X = rng.standard_normal((128, 2))
        y = X @ np.array([1.0, 2.0]) + sparse_f(128) + 0.5 * rng.standard_normal(128)
        fit = fit_plm(PLMData(y, X), DB4, sigma=0.5)
        z, a = wavelet_design(y, X)
        expected = theta_given_beta(z, a, fit.beta_hat, fit.lam, 1)
        assert np.array_equal(fit.theta_hat, expected)

    def test_beta_perturbation_never_improves(self, rng):
        X = rng.standard_normal((128, 2))
        y = X @ np.array([1.0, 2.0]) + sparse_f(128) + 0.5 * rng.standard_normal(128)
        fit = fit_plm(PLMData(y, X), DB4, sigma=0.5)
        z, a = wavelet_design(y, X)
        base = huber_objective(z[1:], a[1:], fit.beta_hat, fit.lam)
        for k in range(2):
            for delta in (-1e-3, 1e-3):
                shifted = fit.beta_hat.copy()
                shifted[k] += delta
                assert huber_objective(z[1:], a[1:], shifted, fit.lam) >= base - 1e-12

    def test_scaling_residuals_kept_verbatim(self, rng):
        X = rng.standard_normal((64, 1))
        y = X[:, 0] * 2.0 + sparse_f(64) + 0.2 * rng.standard_normal(64)
        fit = fit_plm(PLMData(y, X), DB4, coarse_level=2, sigma=0.2)
        z, a = wavelet_design(y, X, j0=2)
        residual = z - a @ fit.beta_hat
        assert np.array_equal(fit.theta_hat[:4], residual[:4])
        soft_bound = np.maximum(np.abs(residual[4:]) - fit.lam, 0.0)
        assert np.all(np.abs(fit.theta_hat[4:]) <= soft_bound + 1e-15)

    def test_brute_force_objective_oracle(self):
        # Tiny-scale joint minimization over dense (beta, theta) grids.
        rng = np.random.default_rng(606)
        n, i0, lam = 8, 1, 0.8
        X = rng.standard_normal((n, 1))
        f = np.array([0.0, 0.0, 1.5, 1.5, 1.5, 0.0, 0.0, 0.0])
        y = X @ np.array([1.2]) + f + 0.3 * rng.standard_normal(n)
        fit = fit_plm(PLMData(y, X), DB4, sigma=1.0, lam=lam)
        z, a = wavelet_design(y, X)

        def objective(beta, theta):
            r = z - a @ beta - theta
            return 0.5 * float(np.sum(r**2)) + lam * float(
                np.sum(np.abs(theta[i0:]))
            )

        j_fit = objective(fit.beta_hat, fit.theta_hat)
        beta_grid = np.linspace(-4.0, 4.0, 2001)
        tmax = np.abs(z).max() + 4.0 * np.abs(a).max() + lam + 1.0
        theta_grid = np.linspace(-tmax, tmax, 4001)
        h_t = theta_grid[1] - theta_grid[0]
        h_b = beta_grid[1] - beta_grid[0]
        penalties = lam * np.abs(theta_grid)
        best = np.inf
        for b in beta_grid:
            r = z - a[:, 0] * b
            cell = 0.5 * (r[:, None] - theta_grid[None, :]) ** 2
            cell[i0:] += penalties[None, :]
            best = min(best, float(np.sum(cell.min(axis=1))))
        tolerance = n * (lam * h_t / 2.0 + h_t**2 / 8.0) + 0.5 * float(
            np.sum(a**2)
        ) * h_b**2
        assert best >= j_fit - 1e-9  # the fit is never beaten
        assert best - j_fit <= tolerance

    def test_convergence_error_carries_iterate(self, rng):
        X = rng.standard_normal((64, 2))
        y = X @ np.array([1.0, -1.0]) + sparse_f(64) + rng.standard_normal(64)
        from waveshrink.plm import _irls_huber

        z, a = wavelet_design(y, X)
        with pytest.raises(FitConvergenceError) as excinfo:
            _irls_huber(a[1:], z[1:], 1.0, tol=0.0, max_iter=2)
        assert excinfo.value.beta_last.shape == (2,)
        assert excinfo.value.gradient_norm > 0.0

    def test_data_validation(self, rng):
        with pytest.raises(ValueError):
            PLMData(rng.standard_normal(12), rng.standard_normal((12, 2)))
        with pytest.raises(ValueError):
            PLMData(rng.standard_normal(8), rng.standard_normal((8, 8)))
        with pytest.raises(ValueError):
            PLMData(rng.standard_normal(8), rng.standard_normal((4, 2)))

    def test_rate_sanity_prop41(self):
        # Median |beta_hat - beta0| strictly decreasing in n, ratio <= 0.8.
        beta0 = np.array([3.0, -2.0])
        medians = {}
        for n in (256, 1024, 4096):
            f = sparse_f(n)
            errors = []
            for rep in range(50):
                rng = np.random.default_rng(np.random.SeedSequence([9, n, rep]))
                X = rng.standard_normal((n, 2))
                y = X @ beta0 + f + rng.standard_normal(n)
                fit = fit_plm(PLMData(y, X), DB4, sigma=1.0)
                errors.append(np.max(np.abs(fit.beta_hat - beta0)))
            medians[n] = float(np.median(errors))
        assert medians[1024] < medians[256]
        assert medians[4096] < medians[1024]
        assert medians[1024] / medians[256] <= 0.8
        assert medians[4096] / medians[1024] <= 0.8
