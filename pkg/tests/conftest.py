import numpy as np
import pytest

import gammadom as gd


def single_draw(shape, mean):
    return gd.MixtureDraw([1.0], [gd.GammaComponent(mean=mean, shape=shape)])


def random_draw(rng, n_components=3):
    weights = rng.dirichlet(np.ones(n_components))
    comps = [
        gd.GammaComponent(
            mean=float(10 ** rng.uniform(-0.5, 0.8)),
            shape=float(10 ** rng.uniform(-0.3, 1.0)),
        )
        for _ in range(n_components)
    ]
    return gd.MixtureDraw(weights, comps)


def degenerate_posterior(shape, mean, m=20):
    return gd.PosteriorSample(draws=[single_draw(shape, mean)] * m)


def random_posterior(rng, m=30, n_components=3):
    return gd.PosteriorSample(draws=[random_draw(rng, n_components) for _ in range(m)])


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)


# verdict lines recorded by the acceptance tests; printed after the run so
# they survive output capture
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
