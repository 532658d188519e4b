"""
file: mfbvar/smoothing/kernels.py
Compiled inner loops of the univariate filter and smoother.

Both work on one period at a time and update their arrays in place.
"""
import math

import numba

LOG_2PI = math.log(2.0 * math.pi)


@numba.njit(cache=True)
def _record(states, covs, k, a, P):
    m, n_columns = a.shape
    for r in range(m):
        for col in range(n_columns):
            states[k, r, col] = a[r, col]
        for c in range(m):
            covs[k, r, c] = P[r, c]


@numba.njit(cache=True)
def sequential_update(
    a, P, design, targets, obs_variance, tolerance, degenerate,
    innovations, variances, gains, processed, loglik, states, covs,
):
    """
    Process the observed elements of one period in order, updating the state
    a (m x C) and its covariance P in place.

    The rank-one downdate is written elementwise, so P stays exactly
    symmetric. An element whose variance F is below tolerance * trace(P) is
    skipped when its innovations are below ``degenerate`` (relative), left
    unprocessed otherwise. Returns the index of the first singular element,
    or -1. ``states`` and ``covs`` receive the moments before each element
    and after the last one when they are not empty.
    """
    n_obs, m = design.shape
    n_columns = a.shape[1]
    store = states.shape[0] > 0
    if store:
        _record(states, covs, 0, a, P)
    for i in range(n_obs):
        pz = gains[i]
        F = obs_variance[i]
        trace = 0.0
        for r in range(m):
            acc = 0.0
            for c in range(m):
                acc += P[r, c] * design[i, c]
            pz[r] = acc
            F += design[i, r] * acc
            trace += P[r, r]
        for col in range(n_columns):
            za = 0.0
            for r in range(m):
                za += design[i, r] * a[r, col]
            innovations[i, col] = targets[i, col] - za

        if F <= tolerance * max(trace, 1.0):
            for col in range(n_columns):
                if abs(innovations[i, col]) > degenerate * (1.0 + abs(targets[i, col])):
                    return i
            innovations[i, :] = 0.0
            pz[:] = 0.0
            if store:
                _record(states, covs, i + 1, a, P)
            continue

        for col in range(n_columns):
            v = innovations[i, col]
            for r in range(m):
                a[r, col] += pz[r] * v / F
            loglik[col] -= 0.5 * (LOG_2PI + math.log(F) + v * v / F)
        for r in range(m):
            for c in range(m):
                P[r, c] -= pz[r] * pz[c] / F
        variances[i] = F
        processed[i] = True
        if store:
            _record(states, covs, i + 1, a, P)
    return -1


@numba.njit(cache=True)
def sequential_backward(r, design, innovations, variances, gains, processed):
    """
    r <- r + z_i (v_i - K_i' r) / F_i over the processed elements of one
    period in reverse, in place.
    """
    n_obs, m = design.shape
    n_columns = r.shape[1]
    for i in range(n_obs - 1, -1, -1):
        if not processed[i]:
            continue
        for col in range(n_columns):
            kr = 0.0
            for c in range(m):
                kr += gains[i, c] * r[c, col]
            scale = (innovations[i, col] - kr) / variances[i]
            for c in range(m):
                r[c, col] += design[i, c] * scale
