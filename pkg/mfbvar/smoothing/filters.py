"""
file: mfbvar/smoothing/filters.py
Kalman filters over a list of PeriodSystem.

``univariate_filter`` processes the observations of a period one element at a
time (the observation noise is diagonal); ``kalman_filter_reference`` is the
textbook multivariate filter kept as an oracle and for the companion layout.
"""
import logging
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import scipy.linalg

from mfbvar.inherits.helpers import symmetrize
from mfbvar.smoothing.constants import DEGENERATE_INNOVATION
from mfbvar.smoothing.constants import SINGULARITY_TOLERANCE
from mfbvar.smoothing.exceptions import FilterSingularityError
from mfbvar.smoothing.kernels import sequential_update
from mfbvar.smoothing.periods import PeriodSystem
from mfbvar.varmodel.exceptions import NonFiniteInputError

logger = logging.getLogger(__name__)

LOG_2PI = np.log(2.0 * np.pi)


@dataclass
class FilterOutput:
    """
    Predicted (a_t, P_t) and filtered (a_{t|t}, P_{t|t}) moments per period.

    States are m x C, one column per data column. The per-element lists hold,
    for the univariate filter, the innovation v (k x C), its variance F (k,),
    the gain K = P z (k x m) and a mask of processed elements; the
    multivariate filter stores its period-level innovations instead.
    """

    periods: list[PeriodSystem]
    predicted_state: list[np.ndarray] = field(default_factory=list)
    predicted_cov: list[np.ndarray] = field(default_factory=list)
    filtered_state: list[np.ndarray] = field(default_factory=list)
    filtered_cov: list[np.ndarray] = field(default_factory=list)
    innovations: list[np.ndarray] = field(default_factory=list)
    innovation_var: list[np.ndarray] = field(default_factory=list)
    gains: list[np.ndarray] = field(default_factory=list)
    processed: list[np.ndarray] = field(default_factory=list)
    element_states: list[list[np.ndarray]] | None = None
    element_covs: list[list[np.ndarray]] | None = None
    loglik: np.ndarray | None = None
    univariate: bool = True

    @property
    def n_periods(self) -> int:
        return len(self.periods)

    @property
    def log_likelihood(self) -> float:
        """Log-likelihood of the first data column."""
        return float(self.loglik[0])


def _check_finite(period: PeriodSystem):
    arrays = (period.design, period.obs_intercept, period.observations, period.obs_variance,
              period.state_intercept, period.state_cov)
    if not all(np.all(np.isfinite(array)) for array in arrays):
        msg = f"non-finite system or data at period {period.time}"
        raise NonFiniteInputError(msg)


def _predict(period: PeriodSystem, state: np.ndarray | None, cov: np.ndarray | None):
    if period.transition is None:
        return period.state_intercept.copy(), period.state_cov.copy()
    a = period.state_intercept + period.transition @ state
    P = symmetrize(period.transition @ cov @ period.transition.T + period.state_cov)
    return a, P


def univariate_filter(periods: list[PeriodSystem], store_elements: bool = False) -> FilterOutput:
    """
    Sequential processing of each observed element:

        v = y_i - c_i - z_i a,  F = z_i P z_i' + g_i,
        a <- a + P z_i v / F,   P <- P - P z_i z_i' P / F

    A zero-variance element whose F vanishes is skipped when its innovation is
    zero too (the datum is already implied by the state); otherwise the filter
    stops with FilterSingularityError(period, element). The element loop runs
    in ``kernels.sequential_update``; P is symmetrized once per prediction.
    """
    n_columns = periods[0].n_columns
    out = FilterOutput(periods=periods, loglik=np.zeros(n_columns), univariate=True)
    if store_elements:
        out.element_states, out.element_covs = [], []
    a = P = None
    for period in periods:
        _check_finite(period)
        a, P = _predict(period, a, P)
        a, P = np.ascontiguousarray(a), np.ascontiguousarray(P)
        out.predicted_state.append(a.copy())
        out.predicted_cov.append(P.copy())
        n_obs, m = period.n_observed, period.state_dim
        innovations = np.zeros((n_obs, n_columns))
        variances = np.zeros(n_obs)
        gains = np.zeros((n_obs, m))
        processed = np.zeros(n_obs, dtype=bool)
        stored = n_obs + 1 if store_elements else 0
        states = np.zeros((stored, m, n_columns))
        covs = np.zeros((stored, m, m))
        singular = sequential_update(
            a, P, np.ascontiguousarray(period.design), period.observations - period.obs_intercept,
            np.asarray(period.obs_variance, dtype=float), SINGULARITY_TOLERANCE, DEGENERATE_INNOVATION,
            innovations, variances, gains, processed, out.loglik, states, covs,
        )
        if singular >= 0:
            raise FilterSingularityError(period.time, int(singular))
        if not processed.all():
            logger.debug("skipped %d degenerate elements at period %d", n_obs - processed.sum(), period.time)
        out.innovations.append(innovations)
        out.innovation_var.append(variances)
        out.gains.append(gains)
        out.processed.append(processed)
        out.filtered_state.append(a.copy())
        out.filtered_cov.append(P.copy())
        if store_elements:
            out.element_states.append(list(states))
            out.element_covs.append(list(covs))
    if not np.all(np.isfinite(out.loglik)):
        msg = "log-likelihood is not finite"
        raise NonFiniteInputError(msg)
    return out


def kalman_filter_reference(periods: list[PeriodSystem]) -> FilterOutput:
    """
    Multivariate predict/update with a Cholesky solve of
    F_t = Z_t P_t Z_t' + diag(g_t). Periods without observations pass the
    prediction through unchanged.
    """
    n_columns = periods[0].n_columns
    out = FilterOutput(periods=periods, loglik=np.zeros(n_columns), univariate=False)
    a = P = None
    for period in periods:
        _check_finite(period)
        a, P = _predict(period, a, P)
        out.predicted_state.append(a.copy())
        out.predicted_cov.append(P.copy())
        Z = period.design
        if period.n_observed == 0:
            out.innovations.append(np.zeros((0, n_columns)))
            out.innovation_var.append(np.zeros((0, 0)))
            out.gains.append(np.zeros((P.shape[0], 0)))
            out.processed.append(np.zeros(0, dtype=bool))
            out.filtered_state.append(a.copy())
            out.filtered_cov.append(P.copy())
            continue
        V = period.observations - period.obs_intercept - Z @ a
        PZt = P @ Z.T
        F = symmetrize(Z @ PZt + np.diag(period.obs_variance))
        try:
            factor = scipy.linalg.cho_factor(F, lower=True, check_finite=False)
        except np.linalg.LinAlgError as exc:
            raise FilterSingularityError(period.time, message=str(exc)) from exc
        diagonal = np.diag(factor[0])
        if np.any(diagonal**2 <= SINGULARITY_TOLERANCE * max(np.trace(P), 1.0)):
            raise FilterSingularityError(period.time)
        FinvV = scipy.linalg.cho_solve(factor, V, check_finite=False)
        gain = scipy.linalg.cho_solve(factor, PZt.T, check_finite=False).T
        a = a + gain @ V
        P = symmetrize(P - gain @ PZt.T)
        log_det = 2.0 * np.sum(np.log(diagonal))
        out.loglik -= 0.5 * (Z.shape[0] * LOG_2PI + log_det + np.sum(V * FinvV, axis=0))
        out.innovations.append(V)
        out.innovation_var.append(F)
        out.gains.append(gain)
        out.processed.append(np.ones(Z.shape[0], dtype=bool))
        out.filtered_state.append(a.copy())
        out.filtered_cov.append(P.copy())
    return out
