"""
file: mfbvar/volatility/factors.py
Conditional draws of the latent factors and their loadings, and the
innovation covariance they imply.
"""
import logging

import numpy as np

from mfbvar.inherits.helpers import jittered_cholesky
from mfbvar.inherits.helpers import symmetrize
from mfbvar.priors.constants import DEFAULT_LOADING_VARIANCE
from mfbvar.varmodel.structures import FsvState
from mfbvar.volatility.exceptions import VolatilityInputError
from mfbvar.volatility.exceptions import VolatilityNumericalError

logger = logging.getLogger(__name__)


def sigma_t(fsv: FsvState, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Sigma_t = Lambda Omega^f_t Lambda' + Omega^nu_t and its lower Cholesky factor."""
    idio = fsv.idio_variance(t)
    factor = fsv.factor_variance(t)
    if not (np.all(np.isfinite(idio)) and np.all(np.isfinite(factor))):
        msg = f"non-finite volatilities at period {t}"
        raise VolatilityNumericalError(msg)
    covariance = symmetrize((fsv.loadings * factor) @ fsv.loadings.T + np.diag(idio))
    return covariance, jittered_cholesky(covariance)


def _check_paths(loadings, residuals, idio_logvol):
    n = residuals.shape[1]
    if loadings.shape[0] != n or idio_logvol.shape != residuals.shape:
        msg = (
            f"loadings {loadings.shape}, residuals {residuals.shape} and "
            f"log-volatilities {idio_logvol.shape} disagree"
        )
        raise VolatilityInputError(msg)


def draw_factors(
    loadings: np.ndarray,
    residuals: np.ndarray,
    idio_logvol: np.ndarray,
    factor_logvol: np.ndarray,
    rng: np.random.Generator | None = None,
    noise: np.ndarray | None = None,
) -> np.ndarray:
    """
    f_t | . ~ N(V_t Lambda' W_t u_t, V_t), V_t = (Lambda' W_t Lambda + (Omega^f_t)^-1)^-1
    with W_t = (Omega^nu_t)^-1, independently over t. Batched over periods.
    """
    loadings = np.asarray(loadings, dtype=float)
    residuals = np.asarray(residuals, dtype=float)
    T, r = factor_logvol.shape
    _check_paths(loadings, residuals, idio_logvol)
    if r == 0:
        return np.zeros((T, 0))
    if noise is None:
        noise = rng.standard_normal((T, r))

    weights = np.exp(-idio_logvol)
    precision = np.einsum("ik,ti,il->tkl", loadings, weights, loadings)
    precision[:, np.arange(r), np.arange(r)] += np.exp(-factor_logvol)
    rhs = (weights * residuals) @ loadings
    try:
        root = np.linalg.cholesky(precision)
    except np.linalg.LinAlgError as exc:
        msg = "factor posterior precision is not positive definite"
        raise VolatilityNumericalError(msg) from exc
    mean = np.linalg.solve(precision, rhs[..., None])[..., 0]
    # L' z = e gives cov(z) = (L L')^-1
    deviation = np.linalg.solve(np.swapaxes(root, 1, 2), noise[..., None])[..., 0]
    return mean + deviation


def draw_loadings(
    factors: np.ndarray,
    residuals: np.ndarray,
    idio_logvol: np.ndarray,
    rng: np.random.Generator | None = None,
    prior_variance: float = DEFAULT_LOADING_VARIANCE,
    mask: np.ndarray | None = None,
    noise: np.ndarray | None = None,
) -> np.ndarray:
    """
    Row i of Lambda from the weighted regression of u_i on f with weights
    exp(-h^nu_i) and an N(0, prior_variance) prior on every free loading.
    Restricted loadings (mask False) are zero.
    """
    factors = np.asarray(factors, dtype=float)
    residuals = np.asarray(residuals, dtype=float)
    T, n = residuals.shape
    r = factors.shape[1]
    if mask is None:
        mask = np.ones((n, r), dtype=bool)
    if factors.shape[0] != T or idio_logvol.shape != (T, n) or mask.shape != (n, r):
        msg = "factors, residuals, log-volatilities and loading mask disagree on dimensions"
        raise VolatilityInputError(msg)
    if noise is None:
        noise = rng.standard_normal((n, r))

    loadings = np.zeros((n, r))
    for i in range(n):
        free = np.flatnonzero(mask[i])
        if free.size == 0:
            continue
        design = factors[:, free]
        weights = np.exp(-idio_logvol[:, i])
        precision = design.T @ (weights[:, None] * design) + np.eye(free.size) / prior_variance
        root = jittered_cholesky(symmetrize(precision))
        mean = np.linalg.solve(precision, design.T @ (weights * residuals[:, i]))
        loadings[i, free] = mean + np.linalg.solve(root.T, noise[i, free])
    return loadings
