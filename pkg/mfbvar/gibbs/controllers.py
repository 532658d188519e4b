"""
file: mfbvar/gibbs/controllers.py
The Gibbs sampler of the mixed-frequency VAR with factor stochastic
volatility. One sweep runs, in order:

    (phi, mu, sigma) | Omega
    Lambda | f, x, Omega
    f | Lambda, x, Omega
    Pi | Lambda, f, x, Omega
    x | Pi, Lambda, f, Omega, y
    s | x, Pi, Lambda, f, Omega
    Omega | s, x, phi, mu, sigma

Every block draws from its own stream keyed by (seed, chain, iteration,
block), so a resumed chain reproduces an uninterrupted one.
"""
import logging
import pickle
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
from django.conf import settings

from mfbvar.gibbs.configs import RunConfig
from mfbvar.gibbs.constants import CHECKPOINT_FILE
from mfbvar.gibbs.constants import DrawName
from mfbvar.gibbs.constants import GibbsBlock
from mfbvar.gibbs.exceptions import BlockFailureError
from mfbvar.gibbs.exceptions import CheckpointError
from mfbvar.gibbs.stores import ChainStore
from mfbvar.inherits.controllers import BaseController
from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError
from mfbvar.inherits.helpers import keyed_generator
from mfbvar.priors.minnesota import build_prior_diagonals
from mfbvar.priors.minnesota import series_scales
from mfbvar.regression.controllers import RegressionController
from mfbvar.smoothing.controllers import SimulationSmootherController
from mfbvar.varmodel.constants import MIN_OBSERVATIONS
from mfbvar.varmodel.exceptions import DatasetValidationError
from mfbvar.varmodel.structures import FsvState
from mfbvar.varmodel.structures import MixedFrequencyDataset
from mfbvar.varmodel.structures import VarParameters
from mfbvar.volatility.constants import DEFAULT_IDIO_PHI
from mfbvar.volatility.constants import DEFAULT_IDIO_SIGMA
from mfbvar.volatility.controllers import FsvController

logger = logging.getLogger(__name__)

MIN_LOG_VARIANCE = -20.0


@dataclass
class GibbsState:
    params: VarParameters
    fsv: FsvState
    latent: np.ndarray
    y_star: np.ndarray | None = None
    indicators: np.ndarray | None = None

    def copy(self) -> "GibbsState":
        return GibbsState(
            self.params,
            self.fsv.copy(),
            self.latent.copy(),
            None if self.y_star is None else self.y_star.copy(),
            None if self.indicators is None else self.indicators.copy(),
        )


def _initial_latent(dataset: MixedFrequencyDataset) -> np.ndarray:
    """
    Monthly gaps carry the last observation forward. Each quarterly value is
    spread uniformly over its quarter, the ends are padded with the nearest
    quarter and the result is smoothed with a centred three-month mean.
    """
    n_m = dataset.n_monthly
    monthly = pd.DataFrame(dataset.monthly_values).ffill().bfill()
    spread = np.full(dataset.quarterly_values.shape, np.nan)
    for t in np.flatnonzero(dataset.quarter_end_mask()):
        observed = dataset.observed[t, n_m:]
        for offset in range(3):
            if t - offset >= 0:
                spread[t - offset, observed] = dataset.quarterly_values[t, observed]
    quarterly = (
        pd.DataFrame(spread).ffill().bfill()
        .rolling(3, center=True, min_periods=1).mean()
    )
    return np.hstack([monthly.to_numpy(), quarterly.to_numpy()])


def initialize(
    dataset: MixedFrequencyDataset, config: RunConfig, rng: np.random.Generator | None = None,
) -> GibbsState:
    """
    Pi at its prior mean (zero), log-volatilities at the log sample variance
    of every series, phi = 0.9, sigma = 0.2 and zero loadings. Factors start
    at zero, or at standard normal draws from ``rng`` so that chains start
    apart.
    """
    counts = dataset.observation_counts()
    short = [sid for sid, count in zip(dataset.series_ids, counts) if count < MIN_OBSERVATIONS]
    if short:
        msg = f"series with fewer than {MIN_OBSERVATIONS} observations: {', '.join(short)}"
        raise DatasetValidationError(msg)
    mcmc = config.mcmc
    n, p, r = dataset.n_vars, mcmc.n_lags, mcmc.n_factors
    if dataset.n_periods <= p + 1:
        msg = f"{dataset.n_periods} periods leave no estimation sample for p={p}"
        raise DatasetValidationError(msg)

    log_variance = np.maximum(np.log(np.nanvar(dataset.values, axis=0)), MIN_LOG_VARIANCE)
    periods = dataset.n_periods - p
    fsv = FsvState(
        loadings=np.zeros((n, r)),
        factors=np.zeros((periods, r)) if rng is None else rng.standard_normal((periods, r)),
        idio_logvol=np.tile(log_variance, (periods, 1)),
        factor_logvol=np.zeros((periods, r)),
        idio_mu=log_variance.copy(),
        idio_phi=np.full(n, DEFAULT_IDIO_PHI),
        idio_sigma=np.full(n, DEFAULT_IDIO_SIGMA),
        factor_phi=np.full(r, DEFAULT_IDIO_PHI),
        factor_sigma=np.full(r, DEFAULT_IDIO_SIGMA),
        start=p,
    )
    params = VarParameters.zeros(dataset.n_monthly, dataset.n_quarterly, p)
    return GibbsState(params, fsv, _initial_latent(dataset))


class GibbsController(BaseController):
    """
    Runs one chain.

    Usage:
        controller = GibbsController(config, dataset)
        store = controller.run()
    """

    name = "gibbs"

    def __init__(
        self,
        config: RunConfig,
        dataset: MixedFrequencyDataset,
        output_dir=None,
        state: GibbsState | None = None,
        store: ChainStore | None = None,
        next_iteration: int = 0,
    ):
        self.config = config
        self.mcmc = config.mcmc
        self.dataset = dataset
        self.output_dir = Path(output_dir or self.default_output_dir(config))
        self.state = state or initialize(dataset, config, keyed_generator(self.mcmc.seed, self.mcmc.chain))
        self.store = store or ChainStore(
            config.to_dict(), self.mcmc.seed, self.mcmc.chain, dataset.series_ids,
            dataset.n_monthly, dataset.quarter_phase, dataset.periods,
        )
        self.next_iteration = next_iteration

        minnesota = config.minnesota_config(series_scales(dataset))
        self.regression = RegressionController(
            build_prior_diagonals(minnesota, self.mcmc.n_lags),
            dataset.n_monthly, self.mcmc.n_lags, self.mcmc.sampler, self.mcmc.workers,
        )
        self.fsv = FsvController(self.state.fsv, config.fsv_prior)
        self.fsv.y_star, self.fsv.indicators = self.state.y_star, self.state.indicators
        self.log_likelihood = float("nan")

    def get_name(self):
        return f"{self.name}[chain {self.mcmc.chain}]"

    @staticmethod
    def default_output_dir(config: RunConfig) -> Path:
        root = config.io.get("out") or settings.MFBVAR["OUTPUT_DIR"]
        return Path(root) / f"chain_{config.mcmc.chain}"

    @property
    def checkpoint_path(self) -> Path:
        return self.output_dir / CHECKPOINT_FILE

    def residuals(self) -> np.ndarray:
        return self.regression.residuals(self.state.latent, self.state.params)

    def _run_block(self, block: str, iteration: int, index: int, rng: np.random.Generator) -> None:
        state = self.state
        if block == GibbsBlock.SV_PARAMS:
            self.fsv.sv_params(rng)
        elif block == GibbsBlock.LOADINGS:
            self.fsv.loadings(self.residuals(), rng)
        elif block == GibbsBlock.FACTORS:
            self.fsv.factors(self.residuals(), rng)
        elif block == GibbsBlock.REGRESSION:
            state.params = self.regression.draw(
                state.latent, state.fsv, self.mcmc.seed, keys=(self.mcmc.chain, iteration, index),
            )
        elif block == GibbsBlock.LATENT:
            smoother = SimulationSmootherController(
                state.params, state.fsv, self.dataset, self.mcmc.smoother, self.mcmc.init_scale,
            )
            state.latent = smoother.draw(rng)
            self.log_likelihood = smoother.last_log_likelihood
        elif block == GibbsBlock.INDICATORS:
            self.fsv.indicators_step(self.residuals(), rng)
            state.y_star, state.indicators = self.fsv.y_star, self.fsv.indicators
        elif block == GibbsBlock.LOGVOL:
            self.fsv.logvol(rng)

    def sweep(self, iteration: int) -> dict[str, float]:
        snapshot = self.state.copy()
        timings = {}
        for index, block in enumerate(GibbsBlock.ORDER):
            rng = keyed_generator(self.mcmc.seed, self.mcmc.chain, iteration, index)
            started = time.perf_counter()
            try:
                self._run_block(block, iteration, index, rng)
            except (BaseNumericalError, BaseValidationError, np.linalg.LinAlgError) as exc:
                path = self.write_checkpoint(snapshot, iteration)
                logger.exception("%s: block %s failed at iteration %d", self.get_name(), block, iteration)
                raise BlockFailureError(iteration, block, str(path), str(exc)) from exc
            timings[block] = time.perf_counter() - started
            logger.debug("iteration %d: %s took %.4fs", iteration, block, timings[block])
        return timings

    def current_draws(self) -> dict[str, np.ndarray]:
        state, fsv = self.state, self.state.fsv
        draws = {
            DrawName.PI: state.params.coefficient_rows(),
            DrawName.LOADINGS: fsv.loadings,
            DrawName.FACTORS: fsv.factors,
            DrawName.IDIO_LOGVOL: fsv.idio_logvol,
            DrawName.FACTOR_LOGVOL: fsv.factor_logvol,
            DrawName.IDIO_MU: fsv.idio_mu,
            DrawName.IDIO_PHI: fsv.idio_phi,
            DrawName.IDIO_SIGMA: fsv.idio_sigma,
            DrawName.FACTOR_PHI: fsv.factor_phi,
            DrawName.FACTOR_SIGMA: fsv.factor_sigma,
            DrawName.LOGLIK: np.array(self.log_likelihood),
        }
        if self.mcmc.store_latent:
            draws[DrawName.LATENT] = state.latent
        return draws

    def run(self) -> ChainStore:
        mcmc = self.mcmc
        logger.info(
            "%s: iterations %d..%d, burn-in %d, thin %d, %d retained",
            self.get_name(), self.next_iteration, mcmc.iterations - 1, mcmc.burn_in, mcmc.thin, mcmc.n_retained,
        )
        started = time.perf_counter()
        for iteration in range(self.next_iteration, mcmc.iterations):
            timings = self.sweep(iteration)
            acceptance = self.fsv.acceptance.get("phi")
            self.store.record_iteration(timings, None if acceptance is None else float(np.mean(acceptance)))
            if mcmc.is_retained(iteration):
                self.store.append(iteration, self.current_draws())
            self.next_iteration = iteration + 1
            if mcmc.checkpoint_every and self.next_iteration % mcmc.checkpoint_every == 0:
                self.write_checkpoint(self.state, self.next_iteration)
        logger.info(
            "%s: finished in %.1fs with %d draws; block totals %s",
            self.get_name(), time.perf_counter() - started, self.store.n_draws, self.store.block_totals(),
        )
        return self.store

    def write_checkpoint(self, state: GibbsState, iteration: int) -> Path:
        """Everything needed to continue the chain from ``iteration``."""
        self.output_dir.mkdir(parents=True, exist_ok=True)
        payload = {
            "config": self.config.to_dict(),
            "dataset": self.dataset,
            "state": state,
            "store": self.store,
            "iteration": iteration,
        }
        with open(self.checkpoint_path, "wb") as handle:
            pickle.dump(payload, handle)
        logger.info("%s: checkpoint for iteration %d written to %s", self.get_name(), iteration, self.checkpoint_path)
        return self.checkpoint_path

    @classmethod
    def from_checkpoint(cls, path, output_dir=None) -> "GibbsController":
        path = Path(path)
        try:
            with open(path, "rb") as handle:
                payload = pickle.load(handle)
            config = RunConfig.from_dict(payload["config"])
            return cls(
                config, payload["dataset"], output_dir or path.parent,
                state=payload["state"], store=payload["store"], next_iteration=payload["iteration"],
            )
        except (OSError, pickle.UnpicklingError, KeyError, EOFError) as exc:
            msg = f"cannot resume from checkpoint {path}: {exc}"
            raise CheckpointError(msg) from exc


def run_mcmc(config: RunConfig, dataset: MixedFrequencyDataset, output_dir=None) -> ChainStore:
    return GibbsController(config, dataset, output_dir).run()
