"""Weighted finite-population Bayesian bootstrap and weight-aware fitting.

Survey weights enter through a Polya urn that expands the sample into a
synthetic population of size round(sum of weights); pseudo samples drawn
from that population feed the unweighted MCMC sampler.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .sampler import PosteriorSample, chain_config, fit


@dataclass(frozen=True)
class WeightedSample:
    """Positive incomes with sampling weights."""

    incomes: np.ndarray
    weights: np.ndarray
    label: str = ""

    def __post_init__(self):
        incomes = np.asarray(self.incomes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        object.__setattr__(self, "incomes", incomes)
        object.__setattr__(self, "weights", weights)
        if incomes.ndim != 1 or incomes.shape != weights.shape:
            raise ValueError("incomes and weights must be 1-d arrays of equal length")
        if incomes.size == 0:
            raise ValueError("sample is empty")
        if np.any(incomes <= 0.0):
            raise ValueError("all incomes must be positive")
        if np.any(weights <= 0.0):
            raise ValueError("all weights must be positive")

    @property
    def n(self):
        return self.incomes.size


def synthetic_population(sample, seed=None):
    """Expand a weighted sample into a population of size round(sum w).

    The sample seeds the urn once per unit; each added slot selects unit i
    with probability proportional to (w_i - 1) + l_i * (N - n) / n, where
    l_i counts the unit's prior urn selections.
    """
    rng = np.random.default_rng(seed)
    w = sample.weights
    n = sample.n
    pop_size = int(round(w.sum()))
    if pop_size < n:
        raise ValueError(f"population size {pop_size} smaller than sample size {n}")
    mass = w - 1.0
    if np.any(mass < 0.0):
        warnings.warn(
            f"{int(np.count_nonzero(mass < 0))} weights below 1: urn mass clamped at 0",
            stacklevel=2,
        )
        mass = np.clip(mass, 0.0, None)
    extra = pop_size - n
    if extra == 0:
        return sample.incomes.copy()
    picks = np.empty(extra, dtype=np.int64)
    counts = np.zeros(n)
    factor = extra / n
    for k in range(extra):
        p = mass + counts * factor
        total = p.sum()
        p = np.full(n, 1.0 / n) if total <= 0.0 else p / total
        i = rng.choice(n, p=p)
        counts[i] += 1.0
        picks[k] = i
    return np.concatenate((sample.incomes, sample.incomes[picks]))


def pseudo_sample(sample, m, seed=None):
    """Simple random sample of size m, without replacement, from the urn population."""
    rng = np.random.default_rng(seed)
    population = synthetic_population(sample, rng)
    if m > population.size:
        raise ValueError(f"requested {m} units from a population of {population.size}")
    idx = rng.choice(population.size, size=m, replace=False)
    return population[idx]


def fit_weighted(sample, config, replications=10, label=None):
    """Fit B pseudo samples, one chain each, and concatenate the draws.

    Each chain keeps ceil(M_target / B) draws so the combined sample has at
    least the configured number of retained draws.
    """
    if replications < 1:
        raise ValueError("replications must be >= 1")
    per_chain = math.ceil(config.retained / replications)
    cfg = chain_config(config, per_chain)
    seeds = np.random.SeedSequence(config.seed).spawn(replications)
    draws = []
    for child in seeds:
        rng = np.random.default_rng(child)
        pseudo = pseudo_sample(sample, sample.n, rng)
        draws.extend(fit(pseudo, cfg, rng=rng).draws)
    meta = {
        "label": sample.label if label is None else label,
        "seed": config.seed,
        "config_digest": config.digest(),
        "replications": replications,
        "n_obs": sample.n,
        "sd_convention": "population",
    }
    return PosteriorSample(draws=draws, meta=meta)
