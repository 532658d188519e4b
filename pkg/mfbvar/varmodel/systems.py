"""
file: mfbvar/varmodel/systems.py
Companion and compact state-space forms of the mixed-frequency VAR, plus
direct simulators used to cross-check them.
"""
import logging
from dataclasses import dataclass

import numpy as np

from mfbvar.varmodel.aggregation import aggregate_path
from mfbvar.varmodel.exceptions import CompactFormUndefinedError
from mfbvar.varmodel.exceptions import DimensionMismatchError
from mfbvar.varmodel.structures import StateSpaceSystem
from mfbvar.varmodel.structures import VarParameters

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CompanionForm:
    """
    xi_t = intercept + transition xi_{t-1} + innovation_map u_t,  u_t ~ N(0, innovation_cov)

    with xi_t = (x_t, x_{t-1}, ..., x_{t-p+1}).
    """

    transition: np.ndarray
    intercept: np.ndarray
    innovation_map: np.ndarray
    innovation_cov: np.ndarray

    @property
    def state_cov(self) -> np.ndarray:
        return self.innovation_map @ self.innovation_cov @ self.innovation_map.T


def build_companion(params: VarParameters, innovation_cov: np.ndarray) -> CompanionForm:
    n, p = params.n_vars, params.n_lags
    innovation_cov = np.asarray(innovation_cov, dtype=float)
    if innovation_cov.shape != (n, n):
        msg = f"innovation covariance has shape {innovation_cov.shape}, expected ({n}, {n})"
        raise DimensionMismatchError(msg)
    transition = np.zeros((n * p, n * p))
    transition[:n] = np.hstack(list(params.lags))
    transition[n:, : n * (p - 1)] = np.eye(n * (p - 1))
    intercept = np.zeros(n * p)
    intercept[:n] = params.intercept
    innovation_map = np.zeros((n * p, n))
    innovation_map[:n] = np.eye(n)
    return CompanionForm(transition, intercept, innovation_map, innovation_cov)


def build_compact_system(
    params: VarParameters, sigma_root: np.ndarray, aggregation: np.ndarray,
) -> StateSpaceSystem:
    """
    Period-t compact-form matrices.

    ``sigma_root`` is the lower Cholesky factor of Sigma_t for the marginal
    form, or diag(sqrt(omega_nu_t)) when the factors are conditioned on.
    """
    n_m, n_q, p = params.n_monthly, params.n_quarterly, params.n_lags
    n = params.n_vars
    if n_q == 0:
        msg = "the compact form needs at least one quarterly series; use the fully observed path"
        raise CompactFormUndefinedError(msg)
    sigma_root = np.asarray(sigma_root, dtype=float)
    if sigma_root.shape != (n, n):
        msg = f"sigma root has shape {sigma_root.shape}, expected ({n}, {n})"
        raise DimensionMismatchError(msg)
    aggregation = np.asarray(aggregation, dtype=float)
    if aggregation.shape != (n_q, p * n_q):
        msg = f"aggregation matrix has shape {aggregation.shape}, expected ({n_q}, {p * n_q})"
        raise DimensionMismatchError(msg)

    m = n_q * (p + 1)
    k = n_m * p + 1

    design = np.zeros((n, m))
    design[:n_m, n_q:] = params.pi_mq
    design[n_m:, : p * n_q] = aggregation

    obs_exog = np.zeros((n, k))
    obs_exog[:n_m, : n_m * p] = params.pi_mm
    obs_exog[:n_m, -1] = params.pi_mc

    obs_loading = np.zeros((n, n))
    obs_loading[:n_m] = sigma_root[:n_m]

    transition = np.zeros((m, m))
    transition[:n_q, : p * n_q] = params.pi_qq
    transition[n_q:, : p * n_q] = np.eye(p * n_q)

    state_exog = np.zeros((m, k))
    state_exog[:n_q, : n_m * p] = params.pi_qm
    state_exog[:n_q, -1] = params.pi_qc

    state_loading = np.zeros((m, n))
    state_loading[:n_q] = sigma_root[n_m:]

    return StateSpaceSystem(
        design=design,
        obs_exog=obs_exog,
        obs_loading=obs_loading,
        transition=transition,
        state_exog=state_exog,
        state_loading=state_loading,
        n_monthly=n_m,
        n_quarterly=n_q,
        n_lags=p,
    )


def _check_history(params: VarParameters, shocks: np.ndarray, presample: np.ndarray):
    shocks = np.asarray(shocks, dtype=float)
    presample = np.asarray(presample, dtype=float)
    if shocks.ndim != 2 or shocks.shape[1] != params.n_vars:
        msg = f"shocks must be T x {params.n_vars}"
        raise DimensionMismatchError(msg)
    if presample.shape != (params.n_lags, params.n_vars):
        msg = f"presample must be {params.n_lags} x {params.n_vars}"
        raise DimensionMismatchError(msg)
    return shocks, presample


def simulate_var(params: VarParameters, shocks: np.ndarray, presample: np.ndarray) -> np.ndarray:
    """
    Direct recursion x_t = c + sum_l Pi_l x_{t-l} + u_t.

    Rows 0..p-1 of the output are the presample (oldest first); rows of
    ``shocks`` before p are ignored.
    """
    shocks, presample = _check_history(params, shocks, presample)
    p = params.n_lags
    path = np.zeros_like(shocks)
    path[:p] = presample
    for t in range(p, shocks.shape[0]):
        path[t] = params.intercept + shocks[t]
        for lag in range(1, p + 1):
            path[t] += params.lags[lag - 1] @ path[t - lag]
    return path


def simulate_companion(form: CompanionForm, shocks: np.ndarray, presample: np.ndarray) -> np.ndarray:
    """Same recursion run through the stacked VAR(1)."""
    shocks = np.asarray(shocks, dtype=float)
    p, n = presample.shape
    state = np.asarray(presample, dtype=float)[::-1].ravel()
    path = np.zeros_like(shocks)
    path[:p] = presample
    for t in range(p, shocks.shape[0]):
        state = form.intercept + form.transition @ state + form.innovation_map @ shocks[t]
        path[t] = state[:n]
    return path


def simulate_compact(
    params: VarParameters,
    sigma_root: np.ndarray,
    aggregation: np.ndarray,
    standard_shocks: np.ndarray,
    presample: np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Simulate the compact form with observations at every period.

    Returns (observations, quarterly states) where observations hold the
    monthly values and the aggregated quarterly values (NaN before the first
    complete aggregation window), and quarterly states hold x_q.
    The innovations of the equivalent VAR are ``standard_shocks @ sigma_root.T``.
    """
    system = build_compact_system(params, sigma_root, aggregation)
    shocks, presample = _check_history(params, standard_shocks, presample)
    n_m, n_q, p = params.n_monthly, params.n_quarterly, params.n_lags
    periods = shocks.shape[0]

    observations = np.full((periods, params.n_vars), np.nan)
    observations[:p, :n_m] = presample[:, :n_m]
    latent_q = np.zeros((periods, n_q))
    latent_q[:p] = presample[:, n_m:]
    # (x_{q,p-1}, ..., x_{q,0}, x_{q,-1}); the oldest block has no weight
    state = np.concatenate([presample[::-1, n_m:].ravel(), np.zeros(n_q)])
    for t in range(p, periods):
        regressors = system.regressors(observations[t - p : t, :n_m])
        state = system.state_exog @ regressors + system.transition @ state + system.state_loading @ shocks[t]
        observed = system.obs_exog @ regressors + system.design @ state + system.obs_loading @ shocks[t]
        observations[t] = observed
        latent_q[t] = state[:n_q]
    observations[:p, n_m:] = aggregate_path(latent_q[:p])
    return observations, latent_q
