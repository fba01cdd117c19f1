"""Numba kernels for mixture evaluation, quantile inversion and dominance scans.

Everything here works on flat float arrays (weights w, shapes v, rates r)
so that the hot loops stay inside compiled code.  The Python-facing API in
``mixture`` and ``dominance`` wraps these.
"""

import numpy as np
from numba import njit, prange

from ._special import _p_lower, gammaln

QUANTILE_TOL = 1.0e-10

# curve kind codes shared with dominance.CurveKind
KIND_FSD = 0
KIND_GLD = 1
KIND_LD = 2


@njit(cache=True)
def mix_cdf(w, v, r, y):
    s = 0.0
    for k in range(w.shape[0]):
        s += w[k] * _p_lower(v[k], r[k] * y)
    return s


@njit(cache=True)
def mix_pdf(w, v, r, y):
    if y <= 0.0:
        return 0.0
    s = 0.0
    ly = np.log(y)
    for k in range(w.shape[0]):
        if w[k] == 0.0:
            continue
        lg = v[k] * np.log(r[k]) - gammaln(v[k]) + (v[k] - 1.0) * ly - r[k] * y
        s += w[k] * np.exp(lg)
    return s


@njit(cache=True)
def mix_first_moment_cdf(w, v, r, wmu, y):
    # wmu[k] = w[k] * mu[k] / mu_bar
    s = 0.0
    for k in range(w.shape[0]):
        s += wmu[k] * _p_lower(v[k] + 1.0, r[k] * y)
    return s


@njit(cache=True)
def _refine(w, v, r, lo, hi, x, u, tol):
    """Safeguarded Newton within [lo, hi]; falls back to bisection.

    Returns -1.0 when 200 iterations are exhausted without reaching tol.
    """
    for _ in range(200):
        f = mix_cdf(w, v, r, x) - u
        if abs(f) <= tol:
            return x
        if f < 0.0:
            lo = x
        else:
            hi = x
        moved = False
        p = mix_pdf(w, v, r, x)
        if p > 0.0:
            xn = x - f / p
            if lo < xn < hi:
                x = xn
                moved = True
        if not moved:
            x = 0.5 * (lo + hi)
        if hi - lo <= 4.0e-16 * hi:
            # interval exhausted at float resolution; accept best effort
            return x
    if abs(mix_cdf(w, v, r, x) - u) <= 1.0e-8:
        return x
    return -1.0


@njit(cache=True)
def quantile_one(w, v, r, mu_bar, u, tol):
    """Invert the mixture CDF at a single u. Returns -1.0 on failure."""
    lo = mu_bar * 1.0e-12
    it = 0
    while mix_cdf(w, v, r, lo) > u:
        lo *= 0.5
        it += 1
        if it > 4000:
            return -1.0
    hi = mu_bar
    it = 0
    while mix_cdf(w, v, r, hi) < u:
        hi *= 2.0
        it += 1
        if it > 4000:
            return -1.0
    if hi <= lo:
        lo = 0.0
    return _refine(w, v, r, lo, hi, 0.5 * (lo + hi), u, tol)


@njit(cache=True)
def quantile_grid(w, v, r, mu_bar, us, tol, out):
    """Quantiles at an ascending grid, warm-starting from the previous point."""
    n = us.shape[0]
    hi = mu_bar
    it = 0
    while mix_cdf(w, v, r, hi) < us[n - 1]:
        hi *= 2.0
        it += 1
        if it > 4000:
            return False
    q = quantile_one(w, v, r, mu_bar, us[0], tol)
    if q < 0.0:
        return False
    out[0] = q
    lo = q
    for i in range(1, n):
        x = _refine(w, v, r, lo, hi, lo, us[i], tol)
        if x < 0.0:
            return False
        out[i] = x
        lo = x
    return True


@njit(cache=True)
def _curve_row(w, v, r, mu_bar, us, kind, tol, out):
    g = us.shape[0]
    if kind == KIND_FSD:
        return quantile_grid(w, v, r, mu_bar, us, tol, out)
    # Lorenz curves are computed on the mean-normalized draw so that draws
    # differing only by a common scale give bit-identical ordinates.
    rn = r * mu_bar
    mun = v / rn
    mubar_n = 0.0
    for k in range(w.shape[0]):
        mubar_n += w[k] * mun[k]
    q = np.empty(g)
    if not quantile_grid(w, v, rn, mubar_n, us, tol, q):
        return False
    wmu = w * mun / mubar_n
    scale = mu_bar if kind == KIND_GLD else 1.0
    for i in range(g):
        out[i] = scale * mix_first_moment_cdf(w, v, rn, wmu, q[i])
    return True


@njit(parallel=True, cache=True)
def curve_matrix(W, V, R, lens, mus, us, kind, tol, out, ok):
    """Per-draw curve values; rows of out are one draw each."""
    m = W.shape[0]
    for i in prange(m):
        k = lens[i]
        ok[i] = _curve_row(W[i, :k], V[i, :k], R[i, :k], mus[i], us, kind, tol, out[i])


@njit(cache=True)
def count_dominance(cx, cy, idx):
    """Count draw pairs where x >= y everywhere, y >= x everywhere, and ties.

    cx row m is paired with cy row idx[m]; the grid scan exits early once
    both directions are violated.
    """
    m = idx.shape[0]
    g = cx.shape[1]
    nx = 0
    ny = 0
    nt = 0
    for i in range(m):
        j = idx[i]
        ax = True
        ay = True
        for t in range(g):
            a = cx[i, t]
            b = cy[j, t]
            if a < b:
                ax = False
            if b < a:
                ay = False
            if not ax and not ay:
                break
        if ax:
            nx += 1
        if ay:
            ny += 1
        if ax and ay:
            nt += 1
    return nx, ny, nt
