"""
file: mfbvar/smoothing/periods.py
Filter-ready per-period systems.

Every state element is labelled by the latent value it carries, (variable,
time). Period 0 is a pre-state at time p-1 holding (x_{q,p-1}, ..., x_{q,-1})
with prior N(0, kappa I); the oldest block carries no VAR weight. The
adaptive layouts use the compact form wherever the monthly lag window is
complete and add the missing monthly values to the state elsewhere; the
companion layout carries (x_t, ..., x_{t-p+1}) throughout.

Several data columns can be filtered at once (the observed data and the
simulated data of the simulation smoother); they share missingness and all
covariances, only observations and intercepts differ.
"""
import logging
from dataclasses import dataclass

import numpy as np

from mfbvar.smoothing.constants import DEFAULT_INIT_SCALE
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.smoothing.exceptions import StateLayoutError
from mfbvar.varmodel.aggregation import build_aggregation_matrix
from mfbvar.varmodel.constants import AGGREGATION_WINDOW
from mfbvar.varmodel.constants import TRIANGULAR_WEIGHTS
from mfbvar.varmodel.exceptions import CompactFormUndefinedError
from mfbvar.varmodel.exceptions import DatasetValidationError
from mfbvar.varmodel.exceptions import DimensionMismatchError
from mfbvar.varmodel.structures import FsvState
from mfbvar.varmodel.structures import MixedFrequencyDataset
from mfbvar.varmodel.structures import VarParameters
from mfbvar.varmodel.systems import build_compact_system

logger = logging.getLogger(__name__)

Element = tuple[int, int]


@dataclass
class PeriodSystem:
    """
    y_k = c_k + Z_k alpha_k + e_k,          e_k ~ N(0, diag(obs_variance))
    alpha_k = d_k + T_k alpha_{k-1} + eta_k, eta_k ~ N(0, state_cov)

    Without a transition, alpha_k ~ N(d_k, state_cov) (the initial period).
    Observation-side arrays only hold the observed elements.
    """

    time: int
    elements: tuple[Element, ...]
    design: np.ndarray
    obs_intercept: np.ndarray
    obs_variance: np.ndarray
    observations: np.ndarray
    transition: np.ndarray | None
    state_intercept: np.ndarray
    state_cov: np.ndarray

    @property
    def state_dim(self) -> int:
        return len(self.elements)

    @property
    def n_observed(self) -> int:
        return self.design.shape[0]

    @property
    def n_columns(self) -> int:
        return self.observations.shape[1]


class PeriodSystemBuilder:
    """
    Turns (Pi, FSV state, observation pattern) into a list of PeriodSystem.
    """

    def __init__(
        self,
        params: VarParameters,
        fsv: FsvState,
        dataset: MixedFrequencyDataset,
        init_scale: float = DEFAULT_INIT_SCALE,
    ):
        if params.n_vars != dataset.n_vars or params.n_monthly != dataset.n_monthly:
            msg = "parameters and dataset disagree on the variable split"
            raise DimensionMismatchError(msg)
        if dataset.n_quarterly == 0:
            msg = "no quarterly series: nothing to smooth"
            raise CompactFormUndefinedError(msg)
        self.params = params
        self.fsv = fsv
        self.dataset = dataset
        self.init_scale = float(init_scale)
        self.n_monthly = params.n_monthly
        self.n_quarterly = params.n_quarterly
        self.n_lags = params.n_lags
        self.aggregation = build_aggregation_matrix(self.n_quarterly, self.n_lags)
        self.base = build_compact_system(params, np.eye(params.n_vars), self.aggregation)

        p = self.n_lags
        self.balanced_end = dataset.balanced_end
        self.missing = ~dataset.observed[:, : self.n_monthly]
        if self.missing[:p].any():
            msg = f"the first {p} periods must have every monthly series observed"
            raise DatasetValidationError(msg)
        early = dataset.observed[:AGGREGATION_WINDOW - 1, self.n_monthly:]
        if np.any(early):
            msg = "quarterly observations before period 4 cannot be aggregated"
            raise DatasetValidationError(msg)
        if fsv.start > p or fsv.start + fsv.n_periods < dataset.n_periods:
            msg = "volatility paths must cover periods p .. T-1"
            raise DimensionMismatchError(msg)

        tail = self.missing[self.balanced_end + 1 :]
        self.tail_start = {
            j: self.balanced_end + 1 + int(np.argmax(tail[:, j]))
            for j in range(self.n_monthly)
            if tail[:, j].any()
        }
        # lags of each variable the companion state must carry
        weighted = np.any(params.lags != 0.0, axis=1)
        highest = [int(np.flatnonzero(weighted[:, u])[-1]) + 1 if weighted[:, u].any() else 1
                   for u in range(params.n_vars)]
        self.companion_lags = [
            max(lags, AGGREGATION_WINDOW) if u >= self.n_monthly else lags
            for u, lags in enumerate(highest)
        ]

    # layout -----------------------------------------------------------------

    def quarterly_block(self, t: int) -> list[Element]:
        return [
            (self.n_monthly + k, t - lag)
            for lag in range(self.n_lags + 1)
            for k in range(self.n_quarterly)
        ]

    def companion_block(self, t: int) -> list[Element]:
        """(x_t, x_{t-1}, ...) keeping, per variable, the lags that carry weight."""
        return [
            (u, t - lag)
            for lag in range(max(self.companion_lags))
            for u in range(self.params.n_vars)
            if lag < self.companion_lags[u]
        ]

    def augmented_elements(self, t: int) -> list[Element]:
        """
        Monthly values the compact form cannot treat as known at t: missing
        values within the lag window, and on the ragged edge every value from
        a series' first missing period on.
        """
        window = range(t, max(t - self.n_lags, 0) - 1, -1)
        return [
            (j, s)
            for j in range(self.n_monthly)
            for s in window
            if self.missing[s, j] or s >= self.tail_start.get(j, self.dataset.n_periods)
        ]

    def state_elements(self, t: int, variant: str) -> tuple[Element, ...]:
        if variant == SmootherVariant.COMPANION:
            return tuple(self.companion_block(t))
        return tuple(self.quarterly_block(t) + self.augmented_elements(t))

    # builders ---------------------------------------------------------------

    def build(self, columns: list[np.ndarray], variant: str) -> list[PeriodSystem]:
        """
        One PeriodSystem per period from the pre-state (time p-1) to T-1.

        ``columns`` are T x n arrays sharing the dataset's missingness;
        monthly cells are latent values, quarterly cells are aggregates. The
        companion variant carries the full companion state in every period.
        """
        data = np.stack([np.asarray(column, dtype=float) for column in columns])
        periods = [self._initial_period(data)]
        for t in range(self.n_lags, self.dataset.n_periods):
            previous = periods[-1].elements
            if variant != SmootherVariant.COMPANION and not self.augmented_elements(t):
                periods.append(self._compact_period(t, data, previous))
            else:
                periods.append(self._expanded_period(t, data, previous, variant))
        return periods

    def _quarterly_rows(self, t: int, index: dict[Element, int], data: np.ndarray):
        """Aggregation rows (k x m) and values (k x C) of the quarterly data observed at t."""
        observed = np.flatnonzero(self.dataset.observed[t, self.n_monthly:])
        rows = np.zeros((observed.size, len(index)))
        for r, k in enumerate(observed):
            for lag, weight in enumerate(TRIANGULAR_WEIGHTS):
                rows[r, index[(self.n_monthly + k, t - lag)]] = weight
        return rows, data[:, t, self.n_monthly + observed].T

    def _initial_period(self, data: np.ndarray) -> PeriodSystem:
        t0 = self.n_lags - 1
        elements = tuple(self.quarterly_block(t0))
        index = {element: i for i, element in enumerate(elements)}
        blocks = [self._quarterly_rows(s, index, data) for s in range(AGGREGATION_WINDOW - 1, self.n_lags)]
        design = np.vstack([rows for rows, _ in blocks])
        m, columns = len(elements), data.shape[0]
        return PeriodSystem(
            time=t0,
            elements=elements,
            design=design,
            obs_intercept=np.zeros((design.shape[0], columns)),
            obs_variance=np.zeros(design.shape[0]),
            observations=np.vstack([values for _, values in blocks]),
            transition=None,
            state_intercept=np.zeros((m, columns)),
            state_cov=self.init_scale * np.eye(m),
        )

    def _compact_period(self, t: int, data: np.ndarray, previous: tuple[Element, ...]) -> PeriodSystem:
        n_m, n_q, p = self.n_monthly, self.n_quarterly, self.n_lags
        base = self.base
        # w_t for every column: (y_{m,t-1}, ..., y_{m,t-p}, 1)
        history = data[:, t - p : t, :n_m][:, ::-1, :].reshape(data.shape[0], -1)
        regressors = np.column_stack([history, np.ones(data.shape[0])]).T
        omega = self.fsv.idio_variance(t)
        shift = self.fsv.factor_shift(t)

        monthly, quarterly = self.dataset.observation_pattern(t)
        rows = np.concatenate([monthly, n_m + quarterly]).astype(int)
        obs_intercept = base.obs_exog[rows] @ regressors
        obs_intercept[: monthly.size] += shift[monthly][:, None]
        obs_variance = np.concatenate([omega[monthly], np.zeros(quarterly.size)])

        m = base.state_dim
        state_intercept = base.state_exog @ regressors
        state_intercept[:n_q] += shift[n_m:][:, None]
        state_cov = np.zeros((m, m))
        state_cov[np.arange(n_q), np.arange(n_q)] = omega[n_m:]

        transition = base.transition
        block = tuple(self.quarterly_block(t - 1))
        if previous != block:
            # leaving an interior gap: drop the augmented elements
            prev_index = {element: i for i, element in enumerate(previous)}
            transition = np.zeros((m, len(previous)))
            transition[:, [prev_index[element] for element in block]] = base.transition

        return PeriodSystem(
            time=t,
            elements=tuple(self.quarterly_block(t)),
            design=base.design[rows],
            obs_intercept=obs_intercept,
            obs_variance=obs_variance,
            observations=data[:, t, rows].T,
            transition=transition,
            state_intercept=state_intercept,
            state_cov=state_cov,
        )

    def _equations(self, variables: np.ndarray, t: int, index: dict[Element, int], data: np.ndarray):
        """
        Lag part of the VAR equations of ``variables`` at t: coefficient rows
        on the state elements listed in ``index`` and the contribution of
        known values (one column per data column).
        """
        n, p = self.params.n_vars, self.n_lags
        variables = np.asarray(variables, dtype=int)
        positions = np.array([index.get((u, t - lag), -1) for lag in range(1, p + 1) for u in range(n)], dtype=int)
        times = t - np.repeat(np.arange(1, p + 1), n)
        series = np.tile(np.arange(n), p)
        coefficients = self.params.lags[:, variables, :].transpose(1, 0, 2).reshape(variables.size, p * n)

        in_state = positions >= 0
        monthly = series < self.n_monthly
        known = ~in_state & monthly
        known[monthly] &= self.dataset.observed[times[monthly], series[monthly]]
        unresolved = ~in_state & ~known & np.any(coefficients != 0.0, axis=0)
        if unresolved.any():
            k = int(np.flatnonzero(unresolved)[0])
            msg = f"value of variable {series[k]} at period {times[k]} is neither known nor in the state"
            raise StateLayoutError(msg)

        rows = np.zeros((variables.size, len(index)))
        rows[:, positions[in_state]] = coefficients[:, in_state]
        contribution = coefficients[:, known] @ data[:, times[known], series[known]].T
        return rows, contribution

    def _expanded_period(
        self, t: int, data: np.ndarray, previous: tuple[Element, ...], variant: str,
    ) -> PeriodSystem:
        """
        Any element layout: lagged elements are carried over from the previous
        state (or fixed at their observed value), current elements follow
        their VAR equation.
        """
        elements = self.state_elements(t, variant)
        index = {element: i for i, element in enumerate(elements)}
        prev_index = {element: i for i, element in enumerate(previous)}
        m, columns = len(elements), data.shape[0]
        omega = self.fsv.idio_variance(t)
        constant = self.params.intercept + self.fsv.factor_shift(t)

        transition = np.zeros((m, len(previous)))
        state_intercept = np.zeros((m, columns))
        state_cov = np.zeros((m, m))
        current = []
        for a, (v, s) in enumerate(elements):
            if s == t:
                current.append(a)
            elif (v, s) in prev_index:
                transition[a, prev_index[(v, s)]] = 1.0
            elif v < self.n_monthly and self.dataset.observed[s, v]:
                state_intercept[a] = data[:, s, v]
            else:
                msg = f"state element ({v}, {s}) at period {t} has no source"
                raise StateLayoutError(msg)
        current = np.array(current, dtype=int)
        variables = np.array([elements[a][0] for a in current], dtype=int)
        transition[current], known = self._equations(variables, t, prev_index, data)
        state_intercept[current] = known + constant[variables][:, None]
        state_cov[current, current] = omega[variables]

        # observed monthly values: a selector when in the state, else their equation
        monthly = np.flatnonzero(self.dataset.observed[t, : self.n_monthly])
        positions = np.array([index.get((j, t), -1) for j in monthly], dtype=int)
        design = np.zeros((monthly.size, m))
        obs_intercept = np.zeros((monthly.size, columns))
        obs_variance = np.zeros(monthly.size)
        selected = positions >= 0
        design[np.flatnonzero(selected), positions[selected]] = 1.0
        implied = np.flatnonzero(~selected)
        if implied.size:
            variables = monthly[implied]
            design[implied], known = self._equations(variables, t, index, data)
            obs_intercept[implied] = known + constant[variables][:, None]
            obs_variance[implied] = omega[variables]
        quarterly_rows, quarterly_values = self._quarterly_rows(t, index, data)

        return PeriodSystem(
            time=t,
            elements=elements,
            design=np.vstack([design, quarterly_rows]),
            obs_intercept=np.vstack([obs_intercept, np.zeros((quarterly_rows.shape[0], columns))]),
            obs_variance=np.concatenate([obs_variance, np.zeros(quarterly_rows.shape[0])]),
            observations=np.vstack([data[:, t, monthly].T, quarterly_values]),
            transition=transition,
            state_intercept=state_intercept,
            state_cov=state_cov,
        )


def adaptive_augment(
    params: VarParameters,
    fsv: FsvState,
    dataset: MixedFrequencyDataset,
    init_scale: float = DEFAULT_INIT_SCALE,
    variant: str = SmootherVariant.ADAPTIVE,
) -> list[PeriodSystem]:
    """
    Per-period systems for the observed data, with the state enlarged by the
    monthly values that are missing (or needed as missing lags).
    """
    builder = PeriodSystemBuilder(params, fsv, dataset, init_scale)
    return builder.build([dataset.values], variant)
