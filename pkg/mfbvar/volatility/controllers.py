"""
file: mfbvar/volatility/controllers.py
The factor stochastic volatility block of the Gibbs sweep.
"""
import logging

import numpy as np

from mfbvar.inherits.controllers import BaseController
from mfbvar.priors.configs import FsvPriorConfig
from mfbvar.varmodel.structures import FsvState
from mfbvar.volatility.constants import LOG_OFFSET
from mfbvar.volatility.exceptions import VolatilityInputError
from mfbvar.volatility.factors import draw_factors
from mfbvar.volatility.factors import draw_loadings
from mfbvar.volatility.mixture import MIXTURE_TABLE
from mfbvar.volatility.mixture import MixtureTable
from mfbvar.volatility.mixture import log_squared
from mfbvar.volatility.mixture import sample_mixture_indicators
from mfbvar.volatility.svsampler import SvParams
from mfbvar.volatility.svsampler import draw_logvol_path
from mfbvar.volatility.svsampler import draw_sv_params

logger = logging.getLogger(__name__)


class FsvController(BaseController):
    """
    Updates an FsvState in place, one sub-step at a time, given the VAR
    residuals u_t = x_t - Pi' X_t of the estimation periods.

    The mixture indicators and y* drawn before the log-volatilities are kept
    for the interweaving move of the next parameter step.
    """

    name = "fsv"

    def __init__(
        self,
        state: FsvState,
        prior: FsvPriorConfig | None = None,
        table: MixtureTable = MIXTURE_TABLE,
        offset: float = LOG_OFFSET,
    ):
        self.state = state
        self.prior = prior or FsvPriorConfig()
        self.table = table
        self.offset = offset
        self.mask = self.prior.loading_mask(state.n_vars, state.n_factors)
        self.y_star: np.ndarray | None = None
        self.indicators: np.ndarray | None = None
        self.acceptance: dict[str, np.ndarray] = {}

    def get_name(self):
        return self.name

    def _check_residuals(self, residuals: np.ndarray) -> np.ndarray:
        residuals = np.asarray(residuals, dtype=float)
        expected = (self.state.n_periods, self.state.n_vars)
        if residuals.shape != expected:
            msg = f"residuals have shape {residuals.shape}, expected {expected}"
            raise VolatilityInputError(msg)
        return residuals

    def idiosyncratic(self, residuals: np.ndarray) -> np.ndarray:
        """nu_t = u_t - Lambda f_t"""
        return self._check_residuals(residuals) - self.state.common_component()

    def sv_params(self, rng: np.random.Generator, use_likelihood: bool = True) -> None:
        state, r = self.state, self.state.n_factors
        y_star = self.y_star
        indicators = self.indicators
        idio = draw_sv_params(
            state.idio_logvol,
            SvParams(state.idio_mu, state.idio_phi, state.idio_sigma),
            self.prior, rng,
            y_star=None if y_star is None else y_star[:, r:],
            indicators=None if indicators is None else indicators[:, r:],
            use_likelihood=use_likelihood, table=self.table,
        )
        state.idio_mu, state.idio_phi, state.idio_sigma = idio.params.mu, idio.params.phi, idio.params.sigma
        state.idio_logvol = idio.logvol
        accepted = [idio.phi_accepted]
        if r:
            factor = draw_sv_params(
                state.factor_logvol,
                SvParams(np.zeros(r), state.factor_phi, state.factor_sigma),
                self.prior, rng, fixed_mu=True,
                y_star=None if y_star is None else y_star[:, :r],
                indicators=None if indicators is None else indicators[:, :r],
                use_likelihood=use_likelihood, table=self.table,
            )
            state.factor_phi, state.factor_sigma = factor.params.phi, factor.params.sigma
            state.factor_logvol = factor.logvol
            accepted.insert(0, factor.phi_accepted)
        self.acceptance["phi"] = np.concatenate(accepted)

    def loadings(self, residuals: np.ndarray, rng: np.random.Generator) -> None:
        if self.state.n_factors == 0:
            return
        self.state.loadings = draw_loadings(
            self.state.factors, self._check_residuals(residuals), self.state.idio_logvol, rng,
            prior_variance=self.prior.loading_variance, mask=self.mask,
        )

    def factors(self, residuals: np.ndarray, rng: np.random.Generator) -> None:
        if self.state.n_factors == 0:
            return
        self.state.factors = draw_factors(
            self.state.loadings, self._check_residuals(residuals),
            self.state.idio_logvol, self.state.factor_logvol, rng,
        )

    def observation_logvol(self) -> np.ndarray:
        """Factor chains first, then idiosyncratic chains."""
        return np.hstack([self.state.factor_logvol, self.state.idio_logvol])

    def indicators_step(self, residuals: np.ndarray, rng: np.random.Generator) -> None:
        shocks = np.hstack([self.state.factors, self.idiosyncratic(residuals)])
        self.y_star = log_squared(shocks, self.offset)
        self.indicators = sample_mixture_indicators(self.y_star, self.observation_logvol(), rng, self.table)

    def logvol(self, rng: np.random.Generator) -> None:
        if self.y_star is None or self.indicators is None:
            msg = "mixture indicators must be drawn before the log-volatilities"
            raise VolatilityInputError(msg)
        state, r = self.state, self.state.n_factors
        params = SvParams(
            np.concatenate([np.zeros(r), state.idio_mu]),
            np.concatenate([state.factor_phi, state.idio_phi]),
            np.concatenate([state.factor_sigma, state.idio_sigma]),
        )
        path = draw_logvol_path(self.y_star, self.indicators, params, rng, self.table)
        state.factor_logvol, state.idio_logvol = path[:, :r], path[:, r:]
