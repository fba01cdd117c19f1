"""Posterior dominance probabilities between two fitted distributions.

Draw m of X pairs with draw m of Y; a draw pair counts toward "X over Y"
when X's curve is weakly above Y's at every grid point.  Pairs tied at
every point count toward both directions and the "neither" probability is
clamped at zero.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import ConvergenceError
from .grids import DominanceGrid
from .mixture import mixture_mean


class CurveKind(Enum):
    FSD = "fsd"  # quantile curves
    GLD = "gld"  # generalized Lorenz curves
    LD = "ld"  # Lorenz curves

    @property
    def code(self):
        return {"fsd": _kernels.KIND_FSD, "gld": _kernels.KIND_GLD, "ld": _kernels.KIND_LD}[
            self.value
        ]


@dataclass(frozen=True)
class ProbabilityCurve:
    """Per-u posterior probability that X's curve lies weakly above Y's."""

    grid: DominanceGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != self.grid.active.shape:
            raise ValueError("curve values must match the active grid")


@dataclass(frozen=True)
class DominanceResult:
    p_x_over_y: float
    p_y_over_x: float
    p_neither: float
    curve_x_over_y: ProbabilityCurve
    m_used: int
    ties: int


@dataclass(frozen=True)
class ReorderingBounds:
    """Extremes and mean of p(X over Y) across random draw reorderings."""

    minimum: float
    average: float
    maximum: float
    reorderings: int


def curve_values(draw, kind, grid):
    """Quantile / generalized Lorenz / Lorenz ordinates on the active grid."""
    mat = _curve_matrix([draw], kind, grid.active)
    return mat[0]


def _curve_matrix(draws, kind, us):
    m = len(draws)
    kmax = max(d.weights.size for d in draws)
    weights = np.zeros((m, kmax))
    shapes = np.ones((m, kmax))
    rates = np.ones((m, kmax))
    lens = np.empty(m, dtype=np.int64)
    mus = np.empty(m)
    for i, d in enumerate(draws):
        k = d.weights.size
        lens[i] = k
        weights[i, :k] = d.weights
        shapes[i, :k] = d._shapes
        rates[i, :k] = d._rates
        mus[i] = mixture_mean(d)
    out = np.empty((m, us.size))
    ok = np.empty(m, dtype=np.bool_)
    _kernels.curve_matrix(
        weights, shapes, rates, lens, mus, us, kind.code, _kernels.QUANTILE_TOL, out, ok
    )
    if not ok.all():
        bad = int(np.flatnonzero(~ok)[0])
        raise ConvergenceError(f"curve evaluation failed for draw {bad}")
    return out


def _paired_matrices(x, y, kind, grid):
    if x.m < 1 or y.m < 1:
        raise ValueError("both posterior samples must be nonempty")
    m = min(x.m, y.m)
    us = grid.active
    cx = _curve_matrix(x.draws[:m], kind, us)
    cy = _curve_matrix(y.draws[:m], kind, us)
    return cx, cy, m


def _result_from_matrices(cx, cy, m, grid, idx=None):
    if idx is None:
        idx = np.arange(m, dtype=np.int64)
    nx, ny, nt = _kernels.count_dominance(cx, cy, idx)
    p_xy = nx / m
    p_yx = ny / m
    p_neither = max(1.0 - p_xy - p_yx, 0.0)
    curve = ProbabilityCurve(grid=grid, values=np.mean(cx >= cy[idx], axis=0))
    return DominanceResult(
        p_x_over_y=p_xy,
        p_y_over_x=p_yx,
        p_neither=p_neither,
        curve_x_over_y=curve,
        m_used=m,
        ties=nt,
    )


def dominance_probabilities(x, y, kind, grid=None):
    """Posterior probabilities of X over Y, Y over X, and neither."""
    if grid is None:
        grid = DominanceGrid.default()
    cx, cy, m = _paired_matrices(x, y, kind, grid)
    return _result_from_matrices(cx, cy, m, grid)


def probability_curve(x, y, kind, grid=None):
    """Per-u fraction of paired draws with X's curve weakly above Y's."""
    if grid is None:
        grid = DominanceGrid.default()
    cx, cy, m = _paired_matrices(x, y, kind, grid)
    return ProbabilityCurve(grid=grid, values=np.mean(cx >= cy, axis=0))


def restricted_probability(x, y, kind, u_lo, u_hi, grid=None):
    """Dominance probabilities over the sub-range u_lo <= u <= u_hi."""
    if grid is None:
        grid = DominanceGrid.default()
    return dominance_probabilities(x, y, kind, grid.restricted(u_lo, u_hi))


def randomized_bounds(x, y, kind, grid=None, reorderings=1000, seed=0, include_identity=False):
    """Spread of p(X over Y) across random reorderings of Y's draws.

    The average is the headline estimate; min and max show the sensitivity
    to the arbitrary draw pairing.  With `include_identity` the first
    reordering is the identity (test hook).
    """
    if reorderings < 1:
        raise ValueError("reorderings must be >= 1")
    if grid is None:
        grid = DominanceGrid.default()
    cx, cy, m = _paired_matrices(x, y, kind, grid)
    rng = np.random.default_rng(seed)
    probs = np.empty(reorderings)
    for r in range(reorderings):
        if r == 0 and include_identity:
            idx = np.arange(m, dtype=np.int64)
        else:
            idx = rng.permutation(m).astype(np.int64)
        nx, _, _ = _kernels.count_dominance(cx, cy, idx)
        probs[r] = nx / m
    return ReorderingBounds(
        minimum=float(probs.min()),
        average=float(probs.mean()),
        maximum=float(probs.max()),
        reorderings=reorderings,
    )
