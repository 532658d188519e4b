"""
file: mfbvar/volatility/svsampler.py
Univariate stochastic volatility chains, vectorised over series:

    y*_t = h_t + m_{s_t} + e_t,          e_t ~ N(0, v_{s_t})
    h_t  = mu + phi (h_{t-1} - mu) + sigma eta_t,  h_1 ~ N(mu, sigma^2 / (1 - phi^2))
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy import stats

from mfbvar.priors.configs import FsvPriorConfig
from mfbvar.volatility.constants import MIN_PATH_LENGTH
from mfbvar.volatility.constants import PHI_PROPOSAL_SD
from mfbvar.volatility.exceptions import StationarityError
from mfbvar.volatility.exceptions import VolatilityInputError
from mfbvar.volatility.mixture import MIXTURE_TABLE
from mfbvar.volatility.mixture import MixtureTable

logger = logging.getLogger(__name__)


@dataclass
class SvParams:
    """(mu, phi, sigma) for k chains; factor chains keep mu = 0."""

    mu: np.ndarray
    phi: np.ndarray
    sigma: np.ndarray

    def __post_init__(self):
        self.mu, self.phi, self.sigma = (
            np.atleast_1d(np.asarray(value, dtype=float)).copy() for value in (self.mu, self.phi, self.sigma)
        )
        if np.any(np.abs(self.phi) >= 1.0):
            msg = "SV persistence must lie strictly inside (-1, 1)"
            raise StationarityError(msg)
        if np.any(self.sigma <= 0.0):
            msg = "SV innovation sd must be positive"
            raise VolatilityInputError(msg)


@dataclass
class SvDraw:
    params: SvParams
    logvol: np.ndarray
    phi_accepted: np.ndarray
    sigma_accepted: np.ndarray


def draw_logvol_path(
    y_star: np.ndarray,
    indicators: np.ndarray,
    params: SvParams,
    rng: np.random.Generator | None = None,
    table: MixtureTable = MIXTURE_TABLE,
    noise: np.ndarray | None = None,
) -> np.ndarray:
    """
    Forward-filtering backward-sampling draw of h (T x k) given the mixture
    indicators. ``noise`` replaces the standard normals of the backward pass
    (zeros give the smoothed mean).
    """
    y_star = np.atleast_2d(np.asarray(y_star, dtype=float).T).T
    indicators = np.atleast_2d(np.asarray(indicators).T).T
    T, k = y_star.shape
    if indicators.shape != (T, k) or params.mu.size != k:
        msg = "y*, indicators and SV parameters disagree on dimensions"
        raise VolatilityInputError(msg)
    if np.any(np.abs(params.phi) >= 1.0):
        raise StationarityError("SV persistence must lie strictly inside (-1, 1)")
    if noise is None:
        noise = rng.standard_normal((T, k))

    mu, phi, var = params.mu, params.phi, params.sigma**2
    target = y_star - table.means[indicators]
    obs_var = table.variances[indicators]

    filtered_mean = np.zeros((T, k))
    filtered_var = np.zeros((T, k))
    predicted_var = np.zeros((T, k))
    mean, cov = mu.copy(), var / (1.0 - phi**2)
    for t in range(T):
        if t > 0:
            mean = mu + phi * (filtered_mean[t - 1] - mu)
            cov = phi**2 * filtered_var[t - 1] + var
        predicted_var[t] = cov
        gain = cov / (cov + obs_var[t])
        filtered_mean[t] = mean + gain * (target[t] - mean)
        filtered_var[t] = cov * (1.0 - gain)

    path = np.zeros((T, k))
    path[-1] = filtered_mean[-1] + np.sqrt(filtered_var[-1]) * noise[-1]
    for t in range(T - 2, -1, -1):
        # conditioning on h_{t+1}
        gain = np.divide(
            phi * filtered_var[t], predicted_var[t + 1],
            out=np.zeros(k), where=predicted_var[t + 1] > 0,
        )
        mean = filtered_mean[t] + gain * (path[t + 1] - mu - phi * (filtered_mean[t] - mu))
        cond_var = np.maximum(filtered_var[t] - gain * phi * filtered_var[t], 0.0)
        path[t] = mean + np.sqrt(cond_var) * noise[t]
    return path


def ar1_loglik(h: np.ndarray, mu: float, phi: float, sigma: float) -> float:
    """Exact log-density of a stationary Gaussian AR(1) path."""
    stationary_sd = sigma / np.sqrt(1.0 - phi**2)
    innovations = h[1:] - mu - phi * (h[:-1] - mu)
    return float(
        stats.norm.logpdf(h[0], mu, stationary_sd) + stats.norm.logpdf(innovations, 0.0, sigma).sum()
    )


def _phi_log_prior(phi: float, prior: FsvPriorConfig) -> float:
    return float(stats.beta.logpdf((phi + 1.0) / 2.0, prior.phi_a, prior.phi_b))


def _draw_phi(h, mu, phi, sigma, prior, rng, use_likelihood) -> tuple[float, bool]:
    proposal = phi + PHI_PROPOSAL_SD * rng.standard_normal()
    uniform = rng.random()
    if abs(proposal) >= 1.0:
        return phi, False
    log_ratio = _phi_log_prior(proposal, prior) - _phi_log_prior(phi, prior)
    if use_likelihood:
        log_ratio += ar1_loglik(h, mu, proposal, sigma) - ar1_loglik(h, mu, phi, sigma)
    if np.log(uniform) < log_ratio:
        return proposal, True
    return phi, False


def _draw_mu(h, phi, sigma, prior, rng, use_likelihood) -> float:
    precision = 1.0 / prior.mu_variance
    weighted = prior.mu_mean / prior.mu_variance
    if use_likelihood:
        var = sigma**2
        precision += (1.0 - phi**2) / var + (h.size - 1) * (1.0 - phi) ** 2 / var
        weighted += (1.0 - phi**2) * h[0] / var + (1.0 - phi) * np.sum(h[1:] - phi * h[:-1]) / var
    return float(weighted / precision + rng.standard_normal() / np.sqrt(precision))


def _draw_sigma(h, mu, phi, sigma, prior, rng, use_likelihood) -> tuple[float, bool]:
    """
    Independence MH: propose sigma^2 from the inverse-gamma implied by the
    transitions, correct for the stationary first value and the
    sigma_scale * chi^2_1 prior.
    """
    if not use_likelihood:
        return float(np.sqrt(prior.sigma_scale) * abs(rng.standard_normal())), True
    squares = np.sum((h[1:] - mu - phi * (h[:-1] - mu)) ** 2)
    shape, scale = (h.size - 1) / 2.0, squares / 2.0
    proposal = float(stats.invgamma.rvs(shape, scale=scale, random_state=rng))
    uniform = rng.random()
    first = (1.0 - phi**2) * (h[0] - mu) ** 2

    def log_weight(variance):
        return -first / (2.0 * variance) - variance / (2.0 * prior.sigma_scale)

    if np.log(uniform) < log_weight(proposal) - log_weight(sigma**2):
        return float(np.sqrt(proposal)), True
    return sigma, False


def _noncentered_move(h, y_star, indicators, mu, sigma, prior, fixed_mu, table, rng):
    """
    Redraw (mu, sigma) given h_tilde = (h - mu) / sigma from the weighted
    regression y* - m_s = mu + sigma h_tilde + e; sigma ~ N(0, sigma_scale).
    A negative sigma flips the sign of h_tilde.
    """
    standardized = (h - mu) / sigma
    target = y_star - table.means[indicators]
    weights = 1.0 / table.variances[indicators]
    if fixed_mu:
        design = standardized[:, None]
        prior_precision = np.array([1.0 / prior.sigma_scale])
        prior_weighted = np.zeros(1)
    else:
        design = np.column_stack([np.ones_like(standardized), standardized])
        prior_precision = np.array([1.0 / prior.mu_variance, 1.0 / prior.sigma_scale])
        prior_weighted = np.array([prior.mu_mean / prior.mu_variance, 0.0])
    precision = design.T @ (weights[:, None] * design) + np.diag(prior_precision)
    root = np.linalg.cholesky(precision)
    mean = np.linalg.solve(precision, design.T @ (weights * target) + prior_weighted)
    draw = mean + np.linalg.solve(root.T, rng.standard_normal(mean.size))
    new_mu = mu if fixed_mu else float(draw[0])
    new_sigma = float(draw[-1])
    if new_sigma < 0:
        new_sigma, standardized = -new_sigma, -standardized
    new_sigma = max(new_sigma, np.finfo(float).tiny)
    return new_mu, new_sigma, new_mu + new_sigma * standardized


def draw_sv_params(
    logvol: np.ndarray,
    params: SvParams,
    prior: FsvPriorConfig,
    rng: np.random.Generator,
    fixed_mu: bool = False,
    y_star: np.ndarray | None = None,
    indicators: np.ndarray | None = None,
    use_likelihood: bool = True,
    table: MixtureTable = MIXTURE_TABLE,
) -> SvDraw:
    """
    One sweep over (phi, mu, sigma) of every chain in the centred
    parameterisation, followed by the non-centred (mu, sigma) move when the
    y* and indicators of the path are supplied. The returned paths carry
    the non-centred move.
    """
    logvol = np.atleast_2d(np.asarray(logvol, dtype=float).T).T
    T, k = logvol.shape
    if use_likelihood and T < MIN_PATH_LENGTH:
        msg = f"log-volatility paths need at least {MIN_PATH_LENGTH} periods, got {T}"
        raise VolatilityInputError(msg)
    interweave = use_likelihood and y_star is not None and indicators is not None
    if interweave:
        y_star = np.atleast_2d(np.asarray(y_star, dtype=float).T).T
        indicators = np.atleast_2d(np.asarray(indicators).T).T

    mu, phi, sigma = params.mu.copy(), params.phi.copy(), params.sigma.copy()
    path = logvol.copy()
    phi_accepted = np.zeros(k, dtype=bool)
    sigma_accepted = np.zeros(k, dtype=bool)
    for j in range(k):
        h = path[:, j]
        phi[j], phi_accepted[j] = _draw_phi(h, mu[j], phi[j], sigma[j], prior, rng, use_likelihood)
        if not fixed_mu:
            mu[j] = _draw_mu(h, phi[j], sigma[j], prior, rng, use_likelihood)
        sigma[j], sigma_accepted[j] = _draw_sigma(h, mu[j], phi[j], sigma[j], prior, rng, use_likelihood)
        if interweave:
            mu[j], sigma[j], path[:, j] = _noncentered_move(
                h, y_star[:, j], indicators[:, j], mu[j], sigma[j], prior, fixed_mu, table, rng,
            )
    logger.debug("SV parameters: phi acceptance %.2f over %d chains", phi_accepted.mean(), k)
    return SvDraw(SvParams(mu, phi, sigma), path, phi_accepted, sigma_accepted)
