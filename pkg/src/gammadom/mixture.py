"""Finite truncations of the gamma mixture: density, CDF, quantiles,
Lorenz and generalized Lorenz curves, mean and Gini.

All functions are pure; a MixtureDraw is immutable once built.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import _kernels
from ._special import reg_lower_gamma
from .errors import ConvergenceError
from .grids import DominanceGrid

WEIGHT_SUM_TOL = 1.0e-12


@dataclass(frozen=True)
class GammaComponent:
    """One gamma component, parameterized by mean and shape."""

    mean: float
    shape: float

    def __post_init__(self):
        if not (self.mean > 0.0 and np.isfinite(self.mean)):
            raise ValueError(f"component mean must be positive, got {self.mean}")
        if not (self.shape > 0.0 and np.isfinite(self.shape)):
            raise ValueError(f"component shape must be positive, got {self.shape}")

    @property
    def rate(self):
        return self.shape / self.mean


class MixtureDraw:
    """One MCMC draw: K+1 weights and gamma components.

    The last component conventionally carries the residual stick weight.
    """

    __slots__ = ("weights", "components", "_shapes", "_rates", "_means")

    def __init__(self, weights, components):
        weights = np.asarray(weights, dtype=float)
        components = tuple(components)
        if weights.ndim != 1 or weights.size != len(components):
            raise ValueError("weights and components must have equal length")
        if weights.size == 0:
            raise ValueError("draw needs at least one component")
        if np.any(weights < 0.0):
            raise ValueError("weights must be nonnegative")
        if abs(weights.sum() - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1, got {weights.sum()!r}")
        weights.setflags(write=False)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "components", components)
        object.__setattr__(self, "_shapes", np.array([c.shape for c in components]))
        object.__setattr__(self, "_rates", np.array([c.rate for c in components]))
        object.__setattr__(self, "_means", np.array([c.mean for c in components]))

    def __setattr__(self, name, value):
        raise AttributeError("MixtureDraw is immutable")

    @property
    def truncation(self):
        return len(self.components) - 1

    def __eq__(self, other):
        if not isinstance(other, MixtureDraw):
            return NotImplemented
        return (
            np.array_equal(self.weights, other.weights)
            and self.components == other.components
        )

    def __repr__(self):
        return f"MixtureDraw(K={self.truncation}, weights={self.weights!r})"


def _check_positive(y):
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0.0):
        raise ValueError("income argument must be positive")
    return y


def pdf(draw, y):
    """Mixture density at y (> 0); scalar in, scalar out."""
    scalar = np.isscalar(y) or np.ndim(y) == 0
    y = _check_positive(y)
    v = draw._shapes[:, None]
    r = draw._rates[:, None]
    logs = v * np.log(r) - gammaln(draw._shapes)[:, None] + (v - 1.0) * np.log(y) - r * y
    out = np.einsum("k,kj->j", draw.weights, np.exp(logs))
    return float(out[0]) if scalar else out


def cdf(draw, y):
    """Mixture CDF at y (> 0)."""
    scalar = np.isscalar(y) or np.ndim(y) == 0
    y = _check_positive(y)
    p = reg_lower_gamma(draw._shapes[:, None], draw._rates[:, None] * y)
    out = draw.weights @ p
    return float(out[0]) if scalar else out


def first_moment_cdf(draw, y):
    """Income-share-weighted CDF at y (> 0)."""
    scalar = np.isscalar(y) or np.ndim(y) == 0
    y = _check_positive(y)
    wmu = draw.weights * draw._means / mixture_mean(draw)
    p = reg_lower_gamma(draw._shapes[:, None] + 1.0, draw._rates[:, None] * y)
    out = wmu @ p
    return float(out[0]) if scalar else out


def mixture_mean(draw):
    """Weighted sum of component means."""
    return float(draw.weights @ draw._means)


def _check_u(u):
    u = float(u)
    if not (0.0 < u < 1.0):
        raise ValueError(f"population proportion must be in (0, 1), got {u}")
    return u


def quantile(draw, u):
    """Invert the mixture CDF: returns q with |cdf(q) - u| <= 1e-10."""
    u = _check_u(u)
    q = _kernels.quantile_one(
        draw.weights, draw._shapes, draw._rates, mixture_mean(draw), u, _kernels.QUANTILE_TOL
    )
    if q < 0.0:
        raise ConvergenceError(f"quantile inversion failed at u={u}")
    return q


def lorenz(draw, u):
    """Lorenz ordinate L(u) = F1(quantile(u)); scale-free."""
    u = _check_u(u)
    out = np.empty(1)
    ok = np.empty(1, dtype=np.bool_)
    _kernels.curve_matrix(
        draw.weights[None, :],
        draw._shapes[None, :],
        draw._rates[None, :],
        np.array([draw.weights.size]),
        np.array([mixture_mean(draw)]),
        np.array([u]),
        _kernels.KIND_LD,
        _kernels.QUANTILE_TOL,
        out[None, :],
        ok,
    )
    if not ok[0]:
        raise ConvergenceError(f"Lorenz evaluation failed at u={u}")
    return float(out[0])


def gen_lorenz(draw, u):
    """Generalized Lorenz ordinate: mixture mean times L(u)."""
    return mixture_mean(draw) * lorenz(draw, u)


def lorenz_grid(draw, grid_points):
    """Lorenz ordinates over an ascending grid of u values."""
    us = np.asarray(grid_points, dtype=float)
    out = np.empty((1, us.size))
    ok = np.empty(1, dtype=np.bool_)
    _kernels.curve_matrix(
        draw.weights[None, :],
        draw._shapes[None, :],
        draw._rates[None, :],
        np.array([draw.weights.size]),
        np.array([mixture_mean(draw)]),
        us,
        _kernels.KIND_LD,
        _kernels.QUANTILE_TOL,
        out,
        ok,
    )
    if not ok[0]:
        raise ConvergenceError("Lorenz grid evaluation failed")
    return out[0]


def gini(draw, grid=None):
    """Gini coefficient: 1 - 2 * integral of the Lorenz curve.

    Trapezoid rule over the full 999-point grid plus the (0, 0) and (1, 1)
    endpoints.  Restricted grids are rejected: the Gini is a
    whole-distribution quantity.
    """
    if grid is None:
        grid = DominanceGrid.default()
    if not grid.is_full:
        raise ValueError("gini requires the full unrestricted 999-point grid")
    lvals = lorenz_grid(draw, grid.points)
    us = np.concatenate(([0.0], grid.points, [1.0]))
    ls = np.concatenate(([0.0], lvals, [1.0]))
    return float(1.0 - 2.0 * np.trapezoid(ls, us))
