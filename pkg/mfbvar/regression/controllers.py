"""
file: mfbvar/regression/controllers.py
Row-by-row draw of Pi. Equations are conditionally independent given the
latent path and the volatilities, so they run on a thread pool; each
equation draws from its own keyed stream.
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from mfbvar.inherits.controllers import BaseController
from mfbvar.inherits.helpers import keyed_generator
from mfbvar.regression.constants import SamplerPolicy
from mfbvar.regression.exceptions import EquationSystemError
from mfbvar.regression.samplers import SAMPLERS
from mfbvar.regression.samplers import build_equation_system
from mfbvar.regression.samplers import lagged_regressors
from mfbvar.regression.samplers import select_sampler
from mfbvar.varmodel.structures import FsvState
from mfbvar.varmodel.structures import VarParameters

logger = logging.getLogger(__name__)


def draw_pi(
    latent: np.ndarray,
    common: np.ndarray,
    idio_variance: np.ndarray,
    prior_diagonals: np.ndarray,
    n_lags: int,
    seed: int,
    keys: tuple[int, ...] = (),
    policy: str = SamplerPolicy.AUTO,
    workers: int = 1,
) -> tuple[np.ndarray, dict[str, int]]:
    """
    n x (np + 1) coefficient rows. Equation i draws from
    keyed_generator(seed, *keys, i), so the result does not depend on the
    number of workers or on scheduling.
    """
    n = latent.shape[1]
    if prior_diagonals.shape != (n, n * n_lags + 1):
        msg = f"prior diagonals have shape {prior_diagonals.shape}, expected {(n, n * n_lags + 1)}"
        raise EquationSystemError(msg)
    if workers < 1:
        msg = f"worker count must be positive, got {workers}"
        raise EquationSystemError(msg)
    regressors = lagged_regressors(latent, n_lags)

    def equation(i: int) -> tuple[np.ndarray, str]:
        system = build_equation_system(
            i, latent, common, idio_variance, prior_diagonals[i], n_lags, regressors=regressors,
        )
        sampler = select_sampler(system, policy)
        return SAMPLERS[sampler](system, keyed_generator(seed, *keys, i)), sampler

    if workers == 1:
        results = [equation(i) for i in range(n)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(equation, range(n)))
    rows = np.vstack([row for row, _ in results])
    return rows, dict(Counter(sampler for _, sampler in results))


class RegressionController(BaseController):
    """Pi block of the Gibbs sweep."""

    name = "regression"

    def __init__(
        self,
        prior_diagonals: np.ndarray,
        n_monthly: int,
        n_lags: int,
        policy: str = SamplerPolicy.AUTO,
        workers: int = 1,
    ):
        self.prior_diagonals = prior_diagonals
        self.n_monthly = n_monthly
        self.n_lags = n_lags
        self.policy = policy
        self.workers = workers
        self.last_choice: dict[str, int] = {}

    def get_name(self):
        return self.name

    def residuals(self, latent: np.ndarray, params: VarParameters) -> np.ndarray:
        """u_t = x_t - Pi' X_t for t = p .. T-1."""
        return latent[self.n_lags:] - lagged_regressors(latent, self.n_lags) @ params.coefficient_rows().T

    def draw(self, latent: np.ndarray, fsv: FsvState, seed: int, keys: tuple[int, ...] = ()) -> VarParameters:
        rows, self.last_choice = draw_pi(
            latent, fsv.common_component(), np.exp(fsv.idio_logvol), self.prior_diagonals,
            self.n_lags, seed, keys, self.policy, self.workers,
        )
        logger.debug("Pi drawn with %s", self.last_choice)
        return VarParameters.from_rows(rows, self.n_monthly)
