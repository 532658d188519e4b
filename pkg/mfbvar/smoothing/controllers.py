# mfbvar/smoothing/controllers.py
"""
Simulation smoothing of the latent monthly path
Mean correction: simulate (x+, y+) from the model, smooth y and y+ together
and return x_hat + (x+ - x_hat+).
"""
import logging
from collections.abc import Callable

import numpy as np

from mfbvar.inherits.controllers import BaseController
from mfbvar.smoothing.constants import DEFAULT_INIT_SCALE
from mfbvar.smoothing.constants import FilterMode
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.smoothing.exceptions import StateLayoutError
from mfbvar.smoothing.filters import FilterOutput
from mfbvar.smoothing.filters import kalman_filter_reference
from mfbvar.smoothing.filters import univariate_filter
from mfbvar.smoothing.periods import PeriodSystem
from mfbvar.smoothing.periods import PeriodSystemBuilder
from mfbvar.smoothing.smoothers import SmootherOutput
from mfbvar.smoothing.smoothers import reference_smoother
from mfbvar.smoothing.smoothers import univariate_smoother
from mfbvar.varmodel.aggregation import aggregate_path
from mfbvar.varmodel.structures import FsvState
from mfbvar.varmodel.structures import MixedFrequencyDataset
from mfbvar.varmodel.structures import VarParameters
from mfbvar.varmodel.systems import simulate_var

logger = logging.getLogger(__name__)


class FilterFactory:
    """
    Factory for the (filter, smoother) pair used by a smoother variant
    """

    MODES = {
        SmootherVariant.COMPANION: FilterMode.MULTIVARIATE,
        SmootherVariant.ADAPTIVE: FilterMode.MULTIVARIATE,
        SmootherVariant.ADAPTIVE_UNIVARIATE: FilterMode.UNIVARIATE,
    }

    @classmethod
    def mode(cls, variant: str) -> str:
        try:
            return cls.MODES[variant]
        except KeyError:
            choices = ", ".join(choice for choice, _ in SmootherVariant.CHOICES)
            msg = f"unknown smoother variant '{variant}' (choose from {choices})"
            raise StateLayoutError(msg) from None

    @classmethod
    def create(cls, variant: str) -> tuple[
        Callable[[list[PeriodSystem]], FilterOutput], Callable[[FilterOutput], SmootherOutput],
    ]:
        if cls.mode(variant) == FilterMode.UNIVARIATE:
            return univariate_filter, univariate_smoother
        return kalman_filter_reference, reference_smoother


class SimulationSmootherController(BaseController):
    """
    Draws x | Pi, Lambda, f, Omega, y for one set of conditioning blocks.

    Usage:
        controller = SimulationSmootherController(params, fsv, dataset)
        latent = controller.draw(rng)
    """

    name = "simulation_smoother"

    def __init__(
        self,
        params: VarParameters,
        fsv: FsvState,
        dataset: MixedFrequencyDataset,
        variant: str = SmootherVariant.ADAPTIVE_UNIVARIATE,
        init_scale: float = DEFAULT_INIT_SCALE,
    ):
        self.filter, self.smoother = FilterFactory.create(variant)
        self.variant = variant
        self.params = params
        self.fsv = fsv
        self.dataset = dataset
        self.builder = PeriodSystemBuilder(params, fsv, dataset, init_scale)
        self.last_log_likelihood: float | None = None

    def get_name(self):
        return f"{self.name}[{self.variant}]"

    def simulate(self, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
        """
        Draw x+ from the model given the observed monthly presample.

        Returns the T x n path and the value of the unused x_{q,-1} block.
        """
        params, fsv, dataset = self.params, self.fsv, self.dataset
        n_m, n_q, p = params.n_monthly, params.n_quarterly, params.n_lags
        T, n = dataset.n_periods, params.n_vars

        prior_sd = np.sqrt(self.builder.init_scale)
        presample_q = prior_sd * rng.standard_normal((p + 1, n_q))
        standard = rng.standard_normal((T - p, n))

        presample = np.zeros((p, n))
        presample[:, :n_m] = dataset.values[:p, :n_m]
        presample[:, n_m:] = presample_q[1:]

        rows = np.array([fsv.row(t) for t in range(p, T)])
        shocks = np.zeros((T, n))
        shocks[p:] = (
            fsv.common_component()[rows]
            + np.sqrt(np.exp(fsv.idio_logvol[rows])) * standard
        )
        return simulate_var(params, shocks, presample), presample_q[0]

    def observe(self, latent: np.ndarray) -> np.ndarray:
        """Observations implied by a latent path under the dataset's missingness."""
        n_m = self.params.n_monthly
        implied = np.empty_like(latent)
        implied[:, :n_m] = latent[:, :n_m]
        implied[:, n_m:] = aggregate_path(latent[:, n_m:])
        return np.where(self.dataset.observed, implied, np.nan)

    def _element_values(self, periods: list[PeriodSystem], latent: np.ndarray, dummy: np.ndarray):
        n_m = self.params.n_monthly
        values = []
        for period in periods:
            values.append(np.array([
                dummy[v - n_m] if s < 0 else latent[s, v] for v, s in period.elements
            ]))
        return values

    def assemble(self, periods: list[PeriodSystem], states: list[np.ndarray]) -> np.ndarray:
        """
        T x n latent matrix: observed monthly values as they are, every other
        cell from the state element that carries it.
        """
        latent = np.array(self.dataset.values, dtype=float)
        latent[:, self.params.n_monthly:] = np.nan
        missing = np.isnan(latent)
        for k, (period, state) in enumerate(zip(periods, states)):
            for a, (v, s) in enumerate(period.elements):
                if s < 0 or (k > 0 and s != period.time):
                    continue
                if missing[s, v]:
                    latent[s, v] = state[a]
        if np.any(np.isnan(latent)):
            msg = "some latent values are carried by no state element"
            raise StateLayoutError(msg)
        return latent

    def run(self, columns: list[np.ndarray]) -> tuple[list[PeriodSystem], FilterOutput, SmootherOutput]:
        periods = self.builder.build(columns, self.variant)
        filtered = self.filter(periods)
        return periods, filtered, self.smoother(filtered)

    def smoothed_mean(self) -> np.ndarray:
        periods, _, smoothed = self.run([self.dataset.values])
        return self.assemble(periods, [state[:, 0] for state in smoothed.smoothed_state])

    def log_likelihood(self) -> float:
        periods = self.builder.build([self.dataset.values], self.variant)
        return self.filter(periods).log_likelihood

    def draw(self, rng: np.random.Generator) -> np.ndarray:
        simulated, dummy = self.simulate(rng)
        periods, filtered, smoothed = self.run([self.dataset.values, self.observe(simulated)])
        self.last_log_likelihood = float(filtered.loglik[0])
        simulated_states = self._element_values(periods, simulated, dummy)
        states = [
            state[:, 0] + plus - state[:, 1]
            for state, plus in zip(smoothed.smoothed_state, simulated_states)
        ]
        logger.debug("%s: drew latent path over %d periods", self.get_name(), len(periods))
        return self.assemble(periods, states)


def simulation_smoother(
    params: VarParameters,
    fsv: FsvState,
    dataset: MixedFrequencyDataset,
    rng: np.random.Generator,
    variant: str = SmootherVariant.ADAPTIVE_UNIVARIATE,
    init_scale: float = DEFAULT_INIT_SCALE,
) -> np.ndarray:
    return SimulationSmootherController(params, fsv, dataset, variant, init_scale).draw(rng)
