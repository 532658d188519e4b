"""
file: mfbvar/smoothing/smoothers.py
Backward smoothing passes matching the filters in filters.py.
"""
import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from mfbvar.smoothing.exceptions import MissingIntermediatesError
from mfbvar.smoothing.filters import FilterOutput
from mfbvar.smoothing.kernels import sequential_backward

logger = logging.getLogger(__name__)

PINV_RCOND = 1e-10


@dataclass
class SmootherOutput:
    """Smoothed states alpha_hat_t (m x C) and the vectors r_{t,0}."""

    smoothed_state: list[np.ndarray]
    backward: list[np.ndarray]

    def state(self, k: int, column: int = 0) -> np.ndarray:
        return self.smoothed_state[k][:, column]


def _check_intermediates(filter_out: FilterOutput, univariate: bool):
    lists = (filter_out.predicted_state, filter_out.predicted_cov, filter_out.innovations,
             filter_out.innovation_var, filter_out.gains, filter_out.processed)
    if any(len(items) != filter_out.n_periods for items in lists):
        msg = "filter output does not hold the intermediates of every period"
        raise MissingIntermediatesError(msg)
    if filter_out.univariate != univariate:
        kind = "univariate" if univariate else "multivariate"
        msg = f"the {kind} smoother needs the intermediates of the {kind} filter"
        raise MissingIntermediatesError(msg)


def univariate_smoother(filter_out: FilterOutput) -> SmootherOutput:
    """
    r_{t,i-1} = r_{t,i} + z_i (v_i - K_i' r_{t,i}) / F_i over processed
    elements in reverse, then alpha_hat_t = a_t + P_t r_{t,0} and
    r_{t-1} = T_t' r_{t,0}.
    """
    _check_intermediates(filter_out, univariate=True)
    periods = filter_out.periods
    n_columns = periods[0].n_columns
    smoothed = [None] * len(periods)
    backward = [None] * len(periods)
    r = np.zeros((periods[-1].state_dim, n_columns))
    for k in range(len(periods) - 1, -1, -1):
        period = periods[k]
        r = np.ascontiguousarray(r, dtype=float)
        sequential_backward(
            r, np.ascontiguousarray(period.design), filter_out.innovations[k], filter_out.innovation_var[k],
            filter_out.gains[k], filter_out.processed[k],
        )
        smoothed[k] = filter_out.predicted_state[k] + filter_out.predicted_cov[k] @ r
        backward[k] = r
        if period.transition is not None:
            r = period.transition.T @ r
    return SmootherOutput(smoothed, backward)


def reference_smoother(filter_out: FilterOutput) -> SmootherOutput:
    """Period-level version of the same recursion for the multivariate filter."""
    _check_intermediates(filter_out, univariate=False)
    periods = filter_out.periods
    n_columns = periods[0].n_columns
    smoothed = [None] * len(periods)
    backward = [None] * len(periods)
    r = np.zeros((periods[-1].state_dim, n_columns))
    for k in range(len(periods) - 1, -1, -1):
        period = periods[k]
        P = filter_out.predicted_cov[k]
        if period.n_observed:
            Z = period.design
            factor = scipy.linalg.cho_factor(filter_out.innovation_var[k], lower=True, check_finite=False)
            residual = filter_out.innovations[k] - Z @ (P @ r)
            r = Z.T @ scipy.linalg.cho_solve(factor, residual, check_finite=False) + r
        smoothed[k] = filter_out.predicted_state[k] + P @ r
        backward[k] = r
        if period.transition is not None:
            r = period.transition.T @ r
    return SmootherOutput(smoothed, backward)


def fixed_interval_smoother(filter_out: FilterOutput) -> SmootherOutput:
    """
    Rauch-Tung-Striebel pass on filtered moments, using a pseudo-inverse of the
    predicted covariance (which is singular whenever the state holds lags).
    """
    periods = filter_out.periods
    last = len(periods) - 1
    smoothed = [None] * len(periods)
    smoothed[last] = filter_out.filtered_state[last].copy()
    for k in range(last - 1, -1, -1):
        transition = periods[k + 1].transition
        gain = filter_out.filtered_cov[k] @ transition.T @ np.linalg.pinv(
            filter_out.predicted_cov[k + 1], rcond=PINV_RCOND, hermitian=True,
        )
        smoothed[k] = filter_out.filtered_state[k] + gain @ (
            smoothed[k + 1] - filter_out.predicted_state[k + 1]
        )
    return SmootherOutput(smoothed, backward=[])
