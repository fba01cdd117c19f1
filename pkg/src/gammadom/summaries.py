"""Posterior summaries and weighted raw-sample descriptive statistics."""

from dataclasses import dataclass

import numpy as np

from .mixture import gini, mixture_mean, pdf

FUNCTIONALS = ("mean", "gini")


@dataclass(frozen=True)
class PosteriorSummary:
    """Per-draw functional values with their posterior mean and sd.

    The sd uses the population convention (denominator M).
    """

    per_draw: np.ndarray
    mean: float
    sd: float


@dataclass(frozen=True)
class WeightedStats:
    mean: float
    sd: float
    gini: float
    n: int


def posterior_functional(sample, which, grid=None):
    """Apply mixture mean or Gini to every draw and summarize."""
    if which not in FUNCTIONALS:
        raise ValueError(f"unknown functional {which!r}; expected one of {FUNCTIONALS}")
    if which == "mean":
        values = np.array([mixture_mean(d) for d in sample.draws])
    else:
        values = np.array([gini(d, grid) for d in sample.draws])
    return PosteriorSummary(per_draw=values, mean=float(values.mean()), sd=float(values.std()))


def weighted_stats(sample):
    """Weighted mean, sd and Gini of a raw survey sample.

    The Gini uses cumulative weighted income shares after sorting by
    income; invariant to a common rescaling of the weights.
    """
    p = sample.weights / sample.weights.sum()
    y = sample.incomes
    mean = float(p @ y)
    var = float(p @ (y * y) - mean * mean)
    sd = float(np.sqrt(max(var, 0.0)))
    order = np.argsort(y, kind="stable")
    ps = p[order]
    cum = np.cumsum(ps * y[order])
    total = cum[-1]
    prev = np.concatenate(([0.0], cum[:-1]))
    g = 1.0 - float(np.sum(ps * (prev + cum))) / total
    return WeightedStats(mean=mean, sd=sd, gini=g, n=sample.n)


def density_on_grid(sample, y_grid):
    """Posterior mean density over a strictly increasing positive grid."""
    y = np.asarray(y_grid, dtype=float)
    if y.ndim != 1 or y.size == 0:
        raise ValueError("y_grid must be a nonempty 1-d array")
    if np.any(y <= 0.0) or np.any(np.diff(y) <= 0.0):
        raise ValueError("y_grid must be positive and strictly increasing")
    total = np.zeros_like(y)
    for d in sample.draws:
        total += pdf(d, y)
    return total / sample.m
