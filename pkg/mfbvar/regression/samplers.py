"""
file: mfbvar/regression/samplers.py
Exact Gaussian draws of one row of Pi from

    pi_i | . ~ N(m_i, V_i),  V_i^-1 = X'X + D_i^-1,  m_i = V_i X'x

where X and x are the regressors and response of equation i divided by the
idiosyncratic standard deviation of every period.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mfbvar.regression.constants import PRECISION_JITTER
from mfbvar.regression.constants import SamplerPolicy
from mfbvar.regression.exceptions import EquationSystemError
from mfbvar.regression.exceptions import SamplerFailureError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EquationSystem:
    equation: int
    regressors: np.ndarray
    response: np.ndarray
    prior_diagonal: np.ndarray

    def __post_init__(self):
        rows, width = self.regressors.shape
        if self.response.shape != (rows,) or self.prior_diagonal.shape != (width,):
            msg = (
                f"equation {self.equation}: regressors {self.regressors.shape}, response "
                f"{self.response.shape} and prior {self.prior_diagonal.shape} disagree"
            )
            raise EquationSystemError(msg)
        if not np.all(self.prior_diagonal > 0):
            msg = f"equation {self.equation}: prior variances must be positive"
            raise EquationSystemError(msg)
        if not (np.all(np.isfinite(self.regressors)) and np.all(np.isfinite(self.response))):
            msg = f"equation {self.equation}: non-finite regression data"
            raise EquationSystemError(msg)

    @property
    def n_obs(self) -> int:
        return self.regressors.shape[0]

    @property
    def n_coefficients(self) -> int:
        return self.regressors.shape[1]

    def precision(self) -> np.ndarray:
        return self.regressors.T @ self.regressors + np.diag(1.0 / self.prior_diagonal)

    def posterior_mean(self) -> np.ndarray:
        """Dense reference for m_i."""
        return np.linalg.solve(self.precision(), self.regressors.T @ self.response)


def lagged_regressors(latent: np.ndarray, n_lags: int) -> np.ndarray:
    """Rows (1, x_{t-1}', ..., x_{t-p}') for t = p .. T-1."""
    T = latent.shape[0]
    blocks = [latent[n_lags - lag : T - lag] for lag in range(1, n_lags + 1)]
    return np.column_stack([np.ones(T - n_lags), *blocks])


def build_equation_system(
    i: int,
    latent: np.ndarray,
    common: np.ndarray,
    idio_variance: np.ndarray,
    prior_diagonal: np.ndarray,
    n_lags: int,
    regressors: np.ndarray | None = None,
) -> EquationSystem:
    """
    Standardised regression of x~_{i,t} = x_{i,t} - (Lambda f_t)_i on the
    lagged latent path, t = p .. T-1. ``common`` and ``idio_variance`` cover
    those periods only. Pass ``regressors`` to reuse the lagged matrix
    across equations.
    """
    if regressors is None:
        regressors = lagged_regressors(latent, n_lags)
    variance = idio_variance[:, i]
    if variance.shape != (regressors.shape[0],):
        msg = f"equation {i}: {variance.size} variances for {regressors.shape[0]} periods"
        raise EquationSystemError(msg)
    if not np.all(variance > 0):
        msg = f"equation {i}: idiosyncratic variances must be positive"
        raise EquationSystemError(msg)
    scale = 1.0 / np.sqrt(variance)
    response = (latent[n_lags:, i] - common[:, i]) * scale
    return EquationSystem(i, regressors * scale[:, None], response, np.asarray(prior_diagonal, dtype=float))


def _precision_cholesky(system: EquationSystem) -> np.ndarray:
    precision = system.precision()
    try:
        return scipy.linalg.cholesky(precision, lower=True)
    except np.linalg.LinAlgError:
        jitter = PRECISION_JITTER * np.mean(np.diag(precision))
        logger.warning("equation %d: precision Cholesky failed, retrying with jitter %.1e", system.equation, jitter)
    try:
        return scipy.linalg.cholesky(precision + jitter * np.eye(system.n_coefficients), lower=True)
    except np.linalg.LinAlgError as exc:
        raise SamplerFailureError(system.equation, np.linalg.cond(precision)) from exc


def draw_row_rue(
    system: EquationSystem,
    rng: np.random.Generator | None = None,
    noise: np.ndarray | None = None,
) -> np.ndarray:
    """
    Cholesky of the precision, then forward and backward substitution.
    O(k^3) in the number of coefficients k = np + 1.
    """
    if noise is None:
        noise = rng.standard_normal(system.n_coefficients)
    root = _precision_cholesky(system)
    half = scipy.linalg.solve_triangular(root, system.regressors.T @ system.response, lower=True)
    return scipy.linalg.solve_triangular(root.T, half + noise, lower=False)


def draw_row_bhattacharya(
    system: EquationSystem,
    rng: np.random.Generator | None = None,
    prior_noise: np.ndarray | None = None,
    data_noise: np.ndarray | None = None,
) -> np.ndarray:
    """
    u ~ N(0, D), delta ~ N(0, I_T), v = X u + delta,
    solve (X D X' + I) w = x - v and return u + D X' w. O(T^2 k).
    """
    if prior_noise is None:
        prior_noise = rng.standard_normal(system.n_coefficients)
    if data_noise is None:
        data_noise = rng.standard_normal(system.n_obs)
    prior = system.prior_diagonal
    u = np.sqrt(prior) * prior_noise
    v = system.regressors @ u + data_noise
    scaled = system.regressors * prior
    gram = scaled @ system.regressors.T + np.eye(system.n_obs)
    try:
        factor = scipy.linalg.cho_factor(gram, lower=True)
    except np.linalg.LinAlgError as exc:
        raise SamplerFailureError(system.equation, np.linalg.cond(gram)) from exc
    w = scipy.linalg.cho_solve(factor, system.response - v)
    return u + scaled.T @ w


def select_sampler(system: EquationSystem, policy: str = SamplerPolicy.AUTO) -> str:
    if policy == SamplerPolicy.AUTO:
        if system.n_coefficients > system.n_obs:
            return SamplerPolicy.BHATTACHARYA
        return SamplerPolicy.RUE
    if policy not in (SamplerPolicy.RUE, SamplerPolicy.BHATTACHARYA):
        msg = f"unknown sampler policy '{policy}'"
        raise EquationSystemError(msg)
    return policy


SAMPLERS = {
    SamplerPolicy.RUE: draw_row_rue,
    SamplerPolicy.BHATTACHARYA: draw_row_bhattacharya,
}
