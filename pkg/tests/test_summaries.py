import numpy as np
import pytest

import gammadom as gd

from conftest import degenerate_posterior, random_draw, single_draw


def brute_force_gini(y, w):
    # pairwise formula: sum p_i p_j |y_i - y_j| / (2 mu)
    p = w / w.sum()
    mu = p @ y
    return float(np.sum(p[:, None] * p[None, :] * np.abs(y[:, None] - y[None, :])) / (2.0 * mu))


class TestPosteriorFunctional:
    def test_degenerate_mean(self):
        ps = degenerate_posterior(1.0, 5.0, m=7)
        s = gd.posterior_functional(ps, "mean")
        assert s.mean == pytest.approx(5.0)
        assert s.sd == 0.0
        assert s.per_draw.size == 7

    def test_degenerate_gini(self):
        ps = degenerate_posterior(2.0, 3.0, m=4)
        s = gd.posterior_functional(ps, "gini")
        assert s.mean == pytest.approx(0.375, abs=1e-3)
        assert s.sd == 0.0

    def test_two_point_moments_population_convention(self):
        draws = [single_draw(1.0, 1.0), single_draw(1.0, 3.0)]
        ps = gd.PosteriorSample(draws=draws)
        s = gd.posterior_functional(ps, "mean")
        assert s.mean == pytest.approx(2.0)
        # population denominator M, declared in sampler metadata
        assert s.sd == pytest.approx(1.0)

    def test_unknown_functional(self):
        ps = degenerate_posterior(1.0, 1.0)
        with pytest.raises(ValueError):
            gd.posterior_functional(ps, "median")


class TestWeightedStats:
    def test_equal_weight_example(self):
        s = gd.WeightedSample(np.array([1.0, 2.0, 3.0]), np.ones(3))
        st = gd.weighted_stats(s)
        assert st.mean == pytest.approx(2.0)
        assert st.gini == pytest.approx(2.0 / 9.0, abs=1e-12)
        assert st.n == 3

    def test_single_observation(self):
        s = gd.WeightedSample(np.array([4.0]), np.array([2.0]))
        assert gd.weighted_stats(s).gini == pytest.approx(0.0, abs=1e-15)

    def test_weight_vs_duplication(self):
        a = gd.WeightedSample(np.array([1.0, 5.0]), np.array([2.0, 2.0]))
        b = gd.WeightedSample(np.array([1.0, 1.0, 5.0, 5.0]), np.ones(4))
        sa, sb = gd.weighted_stats(a), gd.weighted_stats(b)
        assert sa.mean == pytest.approx(sb.mean)
        assert sa.sd == pytest.approx(sb.sd)
        assert sa.gini == pytest.approx(sb.gini)

    def test_gini_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(2, 200))
            y = rng.gamma(2.0, 2.0, n)
            w = rng.uniform(0.5, 4.0, n)
            s = gd.WeightedSample(y, w)
            assert gd.weighted_stats(s).gini == pytest.approx(
                brute_force_gini(y, w), abs=1e-12
            )

    def test_weight_rescaling_invariance(self):
        rng = np.random.default_rng(4)
        y = rng.gamma(2.0, 2.0, 50)
        w = rng.uniform(1.0, 3.0, 50)
        a = gd.weighted_stats(gd.WeightedSample(y, w))
        b = gd.weighted_stats(gd.WeightedSample(y, 7.0 * w))
        assert a.mean == pytest.approx(b.mean, rel=1e-13)
        assert a.sd == pytest.approx(b.sd, rel=1e-13)
        assert a.gini == pytest.approx(b.gini, rel=1e-13)


class TestDensityOnGrid:
    def test_single_draw_equals_pdf(self, rng):
        d = random_draw(rng)
        ps = gd.PosteriorSample(draws=[d])
        yg = np.linspace(0.05, 10.0, 100)
        assert np.allclose(gd.density_on_grid(ps, yg), gd.pdf(d, yg))

    def test_identical_draws_average_to_same(self, rng):
        d = random_draw(rng)
        one = gd.density_on_grid(gd.PosteriorSample(draws=[d]), np.linspace(0.1, 5, 50))
        two = gd.density_on_grid(gd.PosteriorSample(draws=[d, d]), np.linspace(0.1, 5, 50))
        assert np.allclose(one, two)

    def test_integrates_to_one(self, rng):
        # shapes >= 1 keep the density bounded at the origin so the
        # trapezoid quadrature oracle is reliable
        draws = []
        for _ in range(5):
            w = rng.dirichlet(np.ones(3))
            comps = [
                gd.GammaComponent(
                    mean=float(rng.uniform(0.5, 5.0)), shape=float(rng.uniform(1.0, 10.0))
                )
                for _ in range(3)
            ]
            draws.append(gd.MixtureDraw(w, comps))
        ps = gd.PosteriorSample(draws=draws)
        yg = np.linspace(1e-4, 120.0, 6000)
        dens = gd.density_on_grid(ps, yg)
        assert np.all(dens >= 0.0)
        assert np.trapezoid(dens, yg) == pytest.approx(1.0, abs=1e-3)

    def test_bad_grid_rejected(self, rng):
        ps = gd.PosteriorSample(draws=[random_draw(rng)])
        with pytest.raises(ValueError):
            gd.density_on_grid(ps, np.array([0.5, 0.4]))
        with pytest.raises(ValueError):
            gd.density_on_grid(ps, np.array([-1.0, 2.0]))
