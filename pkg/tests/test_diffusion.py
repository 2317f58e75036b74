import numpy as np
import pytest

from conftest import rule_catalog
from waveshrink.diffusion import (
    SQRT2,
    diffusion_step,
    diffusivity_to_shrink,
    haar_shift_shrink_step,
    named_diffusivity,
    shrink_to_diffusivity,
)
from waveshrink.rules import ShrinkageRule, apply

CATALOG = rule_catalog(1.0)
IDS = [r.kind for r in CATALOG]


class TestShrinkToDiffusivity:
    def test_soft_value(self):
        g = shrink_to_diffusivity(ShrinkageRule("soft", 1.0))
        assert g(2 * SQRT2) == pytest.approx(0.5, abs=1e-15)

    def test_linear_is_constant(self):
        g = shrink_to_diffusivity(ShrinkageRule("linear", 1.0))
        for s in (0.0, 0.37, 5.0, 123.0):
            assert g(s) == pytest.approx(0.5, abs=1e-12)

    def test_hard_is_indicator(self):
        g = shrink_to_diffusivity(ShrinkageRule("hard", 1.0))
        assert g(1.0) == 1.0
        assert g(2.0) == 0.0

    @pytest.mark.parametrize("rule", CATALOG, ids=IDS)
    def test_matches_named_closed_form(self, rule):
        derived = shrink_to_diffusivity(rule)
        named = named_diffusivity(rule.kind, rule.lam, lam2=rule.lam2, a=rule.a)
        grid = np.linspace(0.0, 12.0, 2401)
        assert np.abs(derived(grid) - named(grid)).max() <= 1e-12

    @pytest.mark.parametrize("rule", CATALOG, ids=IDS)
    def test_nonnegative(self, rule):
        g = shrink_to_diffusivity(rule)
        grid = np.linspace(0.0, 50.0, 5001)
        assert np.min(g(grid)) >= -1e-14


class TestPropertiesAtLimits:
    FLAT_AT_ZERO = ["hard", "soft", "firm", "garrote", "scad", "tukey", "weickert"]
    DEGENERATE_AT_INF = ["hard", "garrote", "firm", "scad", "weickert", "tukey"]

    @pytest.mark.parametrize("rule", CATALOG, ids=IDS)
    def test_g_tends_to_one_at_zero(self, rule):
        if rule.kind not in self.FLAT_AT_ZERO:
            pytest.skip("hypothesis delta'(0) = 0 not satisfied")
        g = shrink_to_diffusivity(rule)
        assert g(1e-6 * rule.lam) == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("rule", CATALOG, ids=IDS)
    def test_g_vanishes_at_infinity(self, rule):
        if rule.kind not in self.DEGENERATE_AT_INF:
            pytest.skip("diffusion does not stop for this rule")
        g = shrink_to_diffusivity(rule)
        assert abs(g(1e6 * rule.lam)) <= 1e-6


class TestDiffusivityToShrink:
    def test_perona_malik_value(self):
        delta = diffusivity_to_shrink(named_diffusivity("perona_malik", 1.0))
        assert delta(1.0) == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_unit_diffusivity_kills_everything(self):
        from waveshrink.diffusion import Diffusivity

        flat = Diffusivity("unit", 1.0, lambda s: np.ones_like(np.asarray(s, float)))
        delta = diffusivity_to_shrink(flat)
        grid = np.linspace(-5, 5, 101)
        assert np.allclose(delta(grid), 0.0, atol=1e-15)

    @pytest.mark.parametrize("rule", CATALOG, ids=IDS)
    def test_roundtrip(self, rule):
        delta = diffusivity_to_shrink(shrink_to_diffusivity(rule))
        grid = np.linspace(-10.0, 10.0, 4001)
        assert np.abs(delta(grid) - apply(rule, grid)).max() <= 1e-10

    @pytest.mark.parametrize("kind", ["charbonnier", "perona_malik", "weickert", "tukey"])
    def test_classical_diffusivities_reproduce_closed_forms(self, kind):
        rule = ShrinkageRule(kind, 1.0)
        delta = diffusivity_to_shrink(named_diffusivity(kind, 1.0))
        grid = np.linspace(-8.0, 8.0, 1601)
        assert np.abs(delta(grid) - apply(rule, grid)).max() <= 1e-12


class TestDiffusionStep:
    def test_constant_unchanged(self):
        g = shrink_to_diffusivity(ShrinkageRule("soft", 1.0))
        x = np.full(9, 2.5)
        assert np.array_equal(diffusion_step(x, g, 0.25), x)

    def test_constant_diffusivity_is_heat_equation(self, rng):
        from waveshrink.diffusion import Diffusivity

        c = 0.7
        g = Diffusivity("const", 1.0, lambda s: np.full_like(np.asarray(s, float), c))
        x = rng.standard_normal(12)
        out = diffusion_step(x, g, 0.1)
        interior = x[1:-1] + 0.1 * c * (x[2:] - 2 * x[1:-1] + x[:-2])
        assert np.allclose(out[1:-1], interior, atol=1e-14)

    def test_two_sample_example_matches_haar_step(self):
        rule = ShrinkageRule("soft", 1.0)
        g = shrink_to_diffusivity(rule)
        x = np.array([0.0, 1.0])
        a = diffusion_step(x, g, 0.25)
        b = haar_shift_shrink_step(x, rule)
        assert np.abs(a - b).max() <= 1e-12

    def test_conserves_sum(self, rng):
        g = shrink_to_diffusivity(ShrinkageRule("perona_malik", 1.0))
        x = rng.standard_normal(33)
        out = diffusion_step(x, g, 0.25)
        assert abs(out.sum() - x.sum()) <= 1e-10 * max(abs(x.sum()), 1.0)

    def test_rejects_bad_input(self):
        g = shrink_to_diffusivity(ShrinkageRule("soft", 1.0))
        with pytest.raises(ValueError):
            diffusion_step([1.0], g, 0.25)
        with pytest.raises(ValueError):
            diffusion_step([1.0, 2.0], g, 0.0)


class TestHaarShiftShrinkStep:
    def test_constant_unchanged(self):
        x = np.full(7, -1.75)
        out = haar_shift_shrink_step(x, ShrinkageRule("hard", 1.0))
        assert np.allclose(out, x, atol=1e-15)

    def test_identity_shrinker_is_identity(self, rng):
        x = rng.standard_normal(16)
        out = haar_shift_shrink_step(x, lambda u: u)
        assert np.allclose(out, x, atol=1e-14)

    @pytest.mark.parametrize("rule", CATALOG, ids=IDS)
    @pytest.mark.parametrize("n", [8, 64])
    def test_step_equivalence(self, rng, rule, n):
        g = shrink_to_diffusivity(rule)
        for _ in range(10):
            x = rng.standard_normal(n)
            a = diffusion_step(x, g, 0.25)
            b = haar_shift_shrink_step(x, rule)
            assert np.abs(a - b).max() <= 1e-12
