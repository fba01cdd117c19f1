"""Slice-sampled MCMC for the Dirichlet process gamma-mixture model.

One sweep updates, in order: slice variables, stick extension, component
allocations, stick fractions, component parameters (conjugate rate, MH on
log-shape) and the DP concentration (Escobar-West auxiliary step).  Draws
are emitted as finite truncations with one residual component drawn fresh
from the base measure.
"""

import hashlib
import json
import warnings
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.special import gammaln

from .errors import ConvergenceError
from .mixture import GammaComponent, MixtureDraw


@dataclass(frozen=True)
class SamplerConfig:
    iterations: int = 15_000
    burn_in: int = 5_000
    thin: int = 1
    seed: int = 0
    prior_shape_a: float = 2.0
    prior_shape_b: float = 0.25
    prior_rate_a: float = 2.0
    prior_rate_b: float = 2.0
    scale_rate_prior: bool = True  # multiply prior_rate_b by the sample mean
    alpha_a: float = 2.0
    alpha_b: float = 1.0
    mh_step: float = 0.3
    max_components: int = 200

    def __post_init__(self):
        if self.iterations <= 0 or self.thin <= 0:
            raise ValueError("iterations and thin must be positive")
        if not (0 <= self.burn_in < self.iterations):
            raise ValueError("burn_in must satisfy 0 <= burn_in < iterations")
        if self.retained < 1:
            raise ValueError("config retains no draws")
        for name in (
            "prior_shape_a",
            "prior_shape_b",
            "prior_rate_a",
            "prior_rate_b",
            "alpha_a",
            "alpha_b",
            "mh_step",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    @property
    def retained(self):
        """Number of draws a full run emits."""
        return (self.iterations - self.burn_in + self.thin - 1) // self.thin

    def digest(self):
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:12]


@dataclass
class PosteriorSample:
    """Ordered MCMC draws for one income distribution."""

    draws: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.draws) < 1:
            raise ValueError("PosteriorSample needs at least one draw")

    @property
    def m(self):
        return len(self.draws)


class SliceSampler:
    """Mutable chain state; `fit` is the high-level entry point."""

    def __init__(self, incomes, config, rng=None):
        y = np.asarray(incomes, dtype=float)
        if y.ndim != 1 or y.size < 10:
            raise ValueError("need a 1-d sample with at least 10 observations")
        if np.any(y <= 0.0) or not np.all(np.isfinite(y)):
            raise ValueError("all incomes must be positive and finite")
        if np.all(y == y[0]):
            warnings.warn("degenerate sample: all incomes identical", stacklevel=3)
        self.y = y
        self.logy = np.log(y)
        self.n = y.size
        self.cfg = config
        self.rng = rng if rng is not None else np.random.default_rng(config.seed)
        scale = y.mean() if config.scale_rate_prior else 1.0
        self.b_rate = config.prior_rate_b * scale
        self.accepted = 0
        self.proposed = 0
        self._init_state()

    def _init_state(self):
        # quantile-stratified start: several occupied components keep the
        # chain out of the single-component local mode it mixes out of slowly
        cfg = self.cfg
        self.alpha = cfg.alpha_a / cfg.alpha_b
        k0 = min(5, self.n // 10) if self.y.var() > 0 else 1
        k0 = max(k0, 1)
        order = np.argsort(self.y)
        self.z = np.empty(self.n, dtype=np.int64)
        self.z[order] = np.minimum(np.arange(self.n) * k0 // self.n, k0 - 1)
        v = np.empty(k0)
        beta = np.empty(k0)
        for k in range(k0):
            yk = self.y[self.z == k]
            ybar = yk.mean()
            yvar = yk.var()
            v[k] = min(max(ybar * ybar / yvar, 0.1), 100.0) if yvar > 0 else 1.0
            beta[k] = v[k] / ybar
        self.v = v
        self.beta = beta
        n_k = np.bincount(self.z, minlength=k0)
        tail = n_k[::-1].cumsum()[::-1] - n_k
        self.V = self.rng.beta(1.0 + n_k, self.alpha + tail)
        self.slices = None

    # -- stick weights ----------------------------------------------------
    def weights(self):
        stick = np.concatenate(([1.0], np.cumprod(1.0 - self.V[:-1])))
        return self.V * stick

    # -- sweep sub-steps --------------------------------------------------
    def update_slices(self):
        w = self.weights()
        self.slices = self.rng.random(self.n) * w[self.z]

    def extend_sticks(self):
        smin = self.slices.min()
        residual = np.prod(1.0 - self.V)
        while residual >= smin:
            if self.V.size >= self.cfg.max_components:
                raise ConvergenceError(
                    f"slice truncation exceeded the {self.cfg.max_components}-component cap "
                    f"(alpha={self.alpha:.3g}, min slice={smin:.3g})"
                )
            vnew = self.rng.beta(1.0, self.alpha)
            self.V = np.append(self.V, vnew)
            self.v = np.append(self.v, self._base_shape())
            self.beta = np.append(self.beta, self._base_rate())
            residual *= 1.0 - vnew

    def _base_shape(self, size=None):
        return self.rng.gamma(self.cfg.prior_shape_a, 1.0 / self.cfg.prior_shape_b, size)

    def _base_rate(self, size=None):
        return self.rng.gamma(self.cfg.prior_rate_a, 1.0 / self.b_rate, size)

    def update_allocations(self):
        w = self.weights()
        logp = (
            self.v * np.log(self.beta)
            - gammaln(self.v)
            + np.outer(self.logy, self.v - 1.0)
            - np.outer(self.y, self.beta)
        )
        logp = np.where(w[None, :] > self.slices[:, None], logp, -np.inf)
        gumbel = -np.log(-np.log(self.rng.random(logp.shape)))
        self.z = np.argmax(logp + gumbel, axis=1)

    def counts(self):
        return np.bincount(self.z, minlength=self.V.size)

    def update_sticks(self, counts=None):
        n_k = self.counts() if counts is None else counts
        tail = n_k[::-1].cumsum()[::-1] - n_k
        self.V = self.rng.beta(1.0 + n_k, self.alpha + tail)

    def update_components(self, counts=None):
        cfg = self.cfg
        n_k = self.counts() if counts is None else counts
        sum_y = np.bincount(self.z, weights=self.y, minlength=self.V.size)
        sum_logy = np.bincount(self.z, weights=self.logy, minlength=self.V.size)
        # conjugate rate update given current shapes
        self.beta = self.rng.gamma(
            cfg.prior_rate_a + n_k * self.v, 1.0 / (self.b_rate + sum_y)
        )
        # random-walk Metropolis on log shape
        prop = self.v * np.exp(cfg.mh_step * self.rng.standard_normal(self.v.size))
        log_ratio = self._shape_log_target(prop, n_k, sum_logy) - self._shape_log_target(
            self.v, n_k, sum_logy
        )
        accept = np.log(self.rng.random(self.v.size)) < log_ratio
        occupied = n_k > 0
        self.v = np.where(accept, prop, self.v)
        self.accepted += int(np.count_nonzero(accept & occupied))
        self.proposed += int(np.count_nonzero(occupied))
        # empty clusters: exact refresh from the base measure
        n_empty = int(np.count_nonzero(~occupied))
        if n_empty:
            self.v[~occupied] = self._base_shape(n_empty)
            self.beta[~occupied] = self._base_rate(n_empty)

    def _shape_log_target(self, v, n_k, sum_logy):
        # gamma likelihood in v (rate fixed) x gamma prior x log-scale Jacobian
        cfg = self.cfg
        return (
            n_k * (v * np.log(self.beta) - gammaln(v))
            + (v - 1.0) * sum_logy
            + cfg.prior_shape_a * np.log(v)
            - cfg.prior_shape_b * v
        )

    def update_concentration(self):
        cfg = self.cfg
        kstar = np.unique(self.z).size
        eta = self.rng.beta(self.alpha + 1.0, self.n)
        rate = cfg.alpha_b - np.log(eta)
        odds = (cfg.alpha_a + kstar - 1.0) / (self.n * rate)
        if self.rng.random() < odds / (1.0 + odds):
            self.alpha = self.rng.gamma(cfg.alpha_a + kstar, 1.0 / rate)
        else:
            self.alpha = self.rng.gamma(cfg.alpha_a + kstar - 1.0, 1.0 / rate)

    def trim(self):
        keep = int(self.z.max()) + 1
        self.V = self.V[:keep]
        self.v = self.v[:keep]
        self.beta = self.beta[:keep]

    def sweep(self):
        self.update_slices()
        self.extend_sticks()
        self.update_allocations()
        n_k = self.counts()
        self.update_sticks(n_k)
        self.update_components(n_k)
        self.update_concentration()

    def emit(self):
        """Current truncation as a MixtureDraw with a fresh residual component."""
        w = self.weights()
        residual = max(1.0 - w.sum(), 0.0)
        weights = np.append(w, residual)
        comps = [
            GammaComponent(mean=vk / bk, shape=vk) for vk, bk in zip(self.v, self.beta)
        ]
        v_res = self._base_shape()
        b_res = self._base_rate()
        comps.append(GammaComponent(mean=v_res / b_res, shape=v_res))
        return MixtureDraw(weights, comps)

    @property
    def acceptance_rate(self):
        return self.accepted / self.proposed if self.proposed else float("nan")


def fit(incomes, config=None, label="", rng=None):
    """Run one chain and return the retained draws.

    Deterministic given (incomes, config) when `rng` is not supplied.
    """
    cfg = config if config is not None else SamplerConfig()
    sampler = SliceSampler(incomes, cfg, rng=rng)
    draws = []
    for it in range(cfg.iterations):
        sampler.sweep()
        if it >= cfg.burn_in and (it - cfg.burn_in) % cfg.thin == 0:
            draws.append(sampler.emit())
        sampler.trim()
    meta = {
        "label": label,
        "seed": cfg.seed,
        "config_digest": cfg.digest(),
        "n_obs": sampler.n,
        "mh_acceptance": sampler.acceptance_rate,
        "sd_convention": "population",
    }
    return PosteriorSample(draws=draws, meta=meta)


def chain_config(config, retained):
    """Config for a sub-chain that keeps `retained` draws after burn-in."""
    return replace(config, iterations=config.burn_in + retained * config.thin)
