"""Bayesian dominance analysis of income distributions.

Fits infinite gamma-mixture (Dirichlet process) models to weighted income
samples by slice-sampled MCMC and computes posterior probabilities of
Lorenz, generalized Lorenz and first-order stochastic dominance.
"""

from ._special import reg_lower_gamma
from .bootstrap import WeightedSample, fit_weighted, pseudo_sample, synthetic_population
from .dominance import (
    CurveKind,
    DominanceResult,
    ProbabilityCurve,
    ReorderingBounds,
    curve_values,
    dominance_probabilities,
    probability_curve,
    randomized_bounds,
    restricted_probability,
)
from .errors import ConvergenceError, DataError, UsageError
from .grids import DominanceGrid
from .io import LoadStats, PreprocessConfig, load_draws, load_sample, save_draws
from .mixture import (
    GammaComponent,
    MixtureDraw,
    cdf,
    first_moment_cdf,
    gen_lorenz,
    gini,
    lorenz,
    mixture_mean,
    pdf,
    quantile,
)
from .sampler import PosteriorSample, SamplerConfig, fit
from .summaries import (
    PosteriorSummary,
    WeightedStats,
    density_on_grid,
    posterior_functional,
    weighted_stats,
)

__version__ = "0.1.0"

__all__ = [
    "CurveKind",
    "ConvergenceError",
    "DataError",
    "DominanceGrid",
    "DominanceResult",
    "GammaComponent",
    "LoadStats",
    "MixtureDraw",
    "PosteriorSample",
    "PosteriorSummary",
    "PreprocessConfig",
    "ProbabilityCurve",
    "ReorderingBounds",
    "SamplerConfig",
    "UsageError",
    "WeightedSample",
    "WeightedStats",
    "cdf",
    "curve_values",
    "density_on_grid",
    "dominance_probabilities",
    "first_moment_cdf",
    "fit",
    "fit_weighted",
    "gen_lorenz",
    "gini",
    "load_draws",
    "load_sample",
    "lorenz",
    "mixture_mean",
    "pdf",
    "posterior_functional",
    "probability_curve",
    "pseudo_sample",
    "quantile",
    "randomized_bounds",
    "reg_lower_gamma",
    "restricted_probability",
    "save_draws",
    "synthetic_population",
    "weighted_stats",
]
