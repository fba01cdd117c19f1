import math

import numpy as np
import pytest

import gammadom as gd
from gammadom.errors import ConvergenceError
from gammadom.grids import DominanceGrid
from gammadom.mixture import lorenz_grid

from conftest import random_draw, single_draw

GRID = DominanceGrid.default()


class TestTypes:
    def test_component_validation(self):
        with pytest.raises(ValueError):
            gd.GammaComponent(mean=-1.0, shape=1.0)
        with pytest.raises(ValueError):
            gd.GammaComponent(mean=1.0, shape=0.0)
        c = gd.GammaComponent(mean=2.0, shape=4.0)
        assert c.rate == 2.0

    def test_draw_validation(self):
        comp = gd.GammaComponent(mean=1.0, shape=1.0)
        with pytest.raises(ValueError):
            gd.MixtureDraw([0.5, 0.4], [comp, comp])  # sums to 0.9
        with pytest.raises(ValueError):
            gd.MixtureDraw([1.5, -0.5], [comp, comp])  # negative weight
        with pytest.raises(ValueError):
            gd.MixtureDraw([1.0], [comp, comp])  # length mismatch
        d = gd.MixtureDraw([0.25, 0.75], [comp, comp])
        assert d.truncation == 1

    def test_draw_immutable(self):
        d = single_draw(1.0, 1.0)
        with pytest.raises(AttributeError):
            d.weights = np.array([1.0])


class TestPdf:
    def test_exponential_at_origin_limit(self):
        d = single_draw(1.0, 1.0)
        assert gd.pdf(d, 1e-12) == pytest.approx(1.0, rel=1e-9)

    def test_exponential_at_one(self):
        d = single_draw(1.0, 1.0)
        assert gd.pdf(d, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_degenerate_mixture_collapses(self):
        comp = gd.GammaComponent(mean=1.0, shape=1.0)
        d = gd.MixtureDraw([0.5, 0.5], [comp, comp])
        assert gd.pdf(d, 1.0) == pytest.approx(math.exp(-1.0), rel=1e-12)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            gd.pdf(single_draw(1.0, 1.0), 0.0)


class TestCdf:
    def test_exponential(self):
        d = single_draw(1.0, 1.0)
        assert gd.cdf(d, 1.0) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-12)

    def test_normalization(self):
        d = single_draw(2.0, 1.0)
        assert gd.cdf(d, 1e9) == pytest.approx(1.0, abs=1e-14)

    def test_exponential_mixture_closed_form(self):
        comps = [gd.GammaComponent(mean=1.0, shape=1.0), gd.GammaComponent(mean=2.0, shape=1.0)]
        d = gd.MixtureDraw([0.3, 0.7], comps)
        expected = 0.3 * (1.0 - math.exp(-1.0)) + 0.7 * (1.0 - math.exp(-0.5))
        assert gd.cdf(d, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_nondecreasing_random(self, rng):
        for _ in range(1000):
            d = random_draw(rng, n_components=int(rng.integers(1, 4)))
            y1, y2 = np.sort(10 ** rng.uniform(-2, 1.5, 2))
            assert gd.cdf(d, y1) <= gd.cdf(d, y2) + 1e-15

    def test_domain_error(self):
        with pytest.raises(ValueError):
            gd.cdf(single_draw(1.0, 1.0), -1.0)


class TestFirstMomentCdf:
    def test_exponential(self):
        d = single_draw(1.0, 1.0)
        assert gd.first_moment_cdf(d, 1.0) == pytest.approx(1.0 - 2.0 * math.exp(-1.0), rel=1e-12)

    def test_normalization(self, rng):
        d = random_draw(rng)
        assert gd.first_moment_cdf(d, 1e9) == pytest.approx(1.0, abs=1e-12)

    def test_gamma_shift_identity(self):
        # single (v=2, mu=1): F1(1) = P(3, 2) = 1 - e^-2 (1 + 2 + 2)
        d = single_draw(2.0, 1.0)
        expected = 1.0 - 5.0 * math.exp(-2.0)
        assert gd.first_moment_cdf(d, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_monte_carlo_oracle(self, rng):
        # brute force (1/mu) E[Y 1{Y<=y}] within 3 standard errors
        n = 1_000_000
        for _ in range(5):
            d = random_draw(rng, n_components=2)
            comp_idx = rng.choice(2, size=n, p=d.weights)
            shapes = np.array([c.shape for c in d.components])[comp_idx]
            scales = np.array([c.mean / c.shape for c in d.components])[comp_idx]
            y = rng.gamma(shapes, scales)
            mu = gd.mixture_mean(d)
            cut = float(np.quantile(y, 0.6))
            vals = y * (y <= cut) / mu
            est = vals.mean()
            se = vals.std() / math.sqrt(n)
            assert abs(gd.first_moment_cdf(d, cut) - est) < 3.0 * se


class TestMean:
    def test_symmetry(self):
        comps = [gd.GammaComponent(mean=1.0, shape=1.0), gd.GammaComponent(mean=3.0, shape=2.0)]
        assert gd.mixture_mean(gd.MixtureDraw([0.5, 0.5], comps)) == pytest.approx(2.0)

    def test_identity(self):
        assert gd.mixture_mean(single_draw(3.0, 7.0)) == pytest.approx(7.0)

    def test_arithmetic(self):
        comps = [gd.GammaComponent(mean=10.0, shape=1.0), gd.GammaComponent(mean=5.0, shape=1.0)]
        assert gd.mixture_mean(gd.MixtureDraw([0.2, 0.8], comps)) == pytest.approx(6.0)


class TestQuantile:
    def test_exponential_median(self):
        assert gd.quantile(single_draw(1.0, 1.0), 0.5) == pytest.approx(math.log(2.0), abs=1e-9)

    def test_scale_family(self):
        assert gd.quantile(single_draw(1.0, 2.0), 0.5) == pytest.approx(2.0 * math.log(2.0), abs=1e-9)

    def test_round_trip_property(self, rng):
        for _ in range(5):
            d = random_draw(rng, n_components=3)
            for u in (0.001, 0.2, 0.5, 0.9, 0.999):
                q = gd.quantile(d, u)
                assert abs(gd.cdf(d, q) - u) <= 1e-8

    def test_round_trip_full_grid(self, rng):
        from gammadom.dominance import CurveKind, curve_values

        d = random_draw(rng, n_components=3)
        q = curve_values(d, CurveKind.FSD, GRID)
        errs = np.abs(gd.cdf(d, q) - GRID.points)
        assert errs.max() <= 1e-8

    def test_domain_errors(self):
        d = single_draw(1.0, 1.0)
        for u in (0.0, 1.0, -0.3, 2.0):
            with pytest.raises(ValueError):
                gd.quantile(d, u)


class TestLorenz:
    def test_exponential_closed_form(self):
        # L(u) = u + (1 - u) ln(1 - u)
        d = single_draw(1.0, 1.0)
        expected = 0.5 + 0.5 * math.log(0.5)
        assert gd.lorenz(d, 0.5) == pytest.approx(expected, abs=1e-9)

    def test_endpoint_limit(self, rng):
        d = random_draw(rng)
        assert gd.lorenz(d, 0.9999) == pytest.approx(1.0, abs=0.01)

    def test_bounds(self, rng):
        d = random_draw(rng)
        lvals = lorenz_grid(d, GRID.points)
        assert np.all(lvals >= 0.0)
        assert np.all(lvals <= GRID.points + 1e-12)

    def test_scale_invariance(self, rng):
        d = random_draw(rng)
        scaled = gd.MixtureDraw(
            d.weights,
            [gd.GammaComponent(mean=100.0 * c.mean, shape=c.shape) for c in d.components],
        )
        for u in (0.1, 0.5, 0.9):
            assert gd.lorenz(scaled, u) == pytest.approx(gd.lorenz(d, u), abs=1e-8)


class TestGenLorenz:
    def test_scaled_exponential(self):
        d = single_draw(1.0, 2.0)
        expected = 2.0 * (0.5 + 0.5 * math.log(0.5))
        assert gd.gen_lorenz(d, 0.5) == pytest.approx(expected, abs=1e-8)

    def test_endpoint_is_mean(self, rng):
        d = random_draw(rng)
        assert gd.gen_lorenz(d, 0.9999) == pytest.approx(gd.mixture_mean(d), rel=0.02)

    def test_homogeneity(self, rng):
        d = random_draw(rng)
        doubled = gd.MixtureDraw(
            d.weights,
            [gd.GammaComponent(mean=2.0 * c.mean, shape=c.shape) for c in d.components],
        )
        for u in (0.25, 0.75):
            assert gd.gen_lorenz(doubled, u) == pytest.approx(2.0 * gd.gen_lorenz(d, u), rel=1e-7)


class TestGini:
    # closed form for a single gamma: Gamma(v + 1/2) / (Gamma(v + 1) sqrt(pi))
    CLOSED_FORM = {0.5: 2.0 / math.pi, 1.0: 0.5, 2.0: 0.375, 5.0: 63.0 / 256.0}

    @pytest.mark.parametrize("v", [0.5, 1.0, 2.0, 5.0])
    def test_single_gamma_closed_form(self, v):
        assert gd.gini(single_draw(v, 1.0)) == pytest.approx(self.CLOSED_FORM[v], abs=1e-3)

    def test_scale_invariance(self):
        assert gd.gini(single_draw(2.0, 137.0)) == pytest.approx(0.375, abs=1e-3)

    def test_restricted_grid_rejected(self):
        with pytest.raises(ValueError):
            gd.gini(single_draw(1.0, 1.0), GRID.restricted(0.04, 0.96))

    def test_partial_grid_rejected(self):
        with pytest.raises(ValueError):
            gd.gini(single_draw(1.0, 1.0), DominanceGrid(np.linspace(0.01, 0.99, 99)))
