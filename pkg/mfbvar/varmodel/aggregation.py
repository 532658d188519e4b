"""
Triangular aggregation of latent monthly values and observation selection.
"""
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from mfbvar.varmodel.constants import AGGREGATION_WINDOW
from mfbvar.varmodel.constants import MIN_AGGREGATION_LAGS
from mfbvar.varmodel.constants import TRIANGULAR_WEIGHTS
from mfbvar.varmodel.exceptions import AggregationLagError
from mfbvar.varmodel.exceptions import DimensionMismatchError
from mfbvar.varmodel.exceptions import SelectionPatternError


def aggregate_quarterly(latent_window) -> float:
    """
    Quarterly value implied by the last five latent months (oldest first).
    """
    window = np.asarray(latent_window, dtype=float)
    if window.shape != (AGGREGATION_WINDOW,):
        msg = f"aggregation needs exactly {AGGREGATION_WINDOW} monthly values, got shape {window.shape}"
        raise DimensionMismatchError(msg)
    # weights are symmetric, so oldest-first and newest-first agree
    return float(TRIANGULAR_WEIGHTS @ window)


def aggregate_path(latent: np.ndarray) -> np.ndarray:
    """
    Apply the aggregation at every period of a T x n_q latent path.

    The first four rows have no complete window and come back as NaN.
    """
    latent = np.asarray(latent, dtype=float)
    if latent.ndim == 1:
        latent = latent[:, None]
    out = np.full(latent.shape, np.nan)
    if latent.shape[0] >= AGGREGATION_WINDOW:
        windows = sliding_window_view(latent, AGGREGATION_WINDOW, axis=0)
        out[AGGREGATION_WINDOW - 1:] = windows @ TRIANGULAR_WEIGHTS
    return out


def build_aggregation_matrix(n_quarterly: int, n_lags: int) -> np.ndarray:
    """
    Lambda_qq mapping (x_{q,t}, ..., x_{q,t-p+1}) to the quarterly observations.

    One block-banded row per quarterly series; lags beyond the fifth get zeros.
    """
    if n_lags < MIN_AGGREGATION_LAGS:
        msg = (
            f"triangular aggregation spans {AGGREGATION_WINDOW} months; "
            f"the lag order must be at least {MIN_AGGREGATION_LAGS}, got {n_lags}"
        )
        raise AggregationLagError(msg)
    if n_quarterly < 0:
        msg = "number of quarterly series cannot be negative"
        raise DimensionMismatchError(msg)
    matrix = np.zeros((n_quarterly, n_lags * n_quarterly))
    for k in range(n_quarterly):
        for lag, weight in enumerate(TRIANGULAR_WEIGHTS):
            matrix[k, lag * n_quarterly + k] = weight
    return matrix


def _selector(indices, size: int) -> np.ndarray:
    indices = np.asarray(indices, dtype=int).ravel()
    if indices.size and (indices.min() < 0 or indices.max() >= size):
        msg = f"selection indices {indices.tolist()} out of range for {size} series"
        raise SelectionPatternError(msg)
    if np.any(np.diff(indices) <= 0):
        msg = f"selection indices {indices.tolist()} must be sorted and unique"
        raise SelectionPatternError(msg)
    selection = np.zeros((indices.size, size))
    selection[np.arange(indices.size), indices] = 1.0
    return selection


def make_selection(monthly_observed, quarterly_observed, n_monthly: int, n_quarterly: int):
    """
    Selection matrices S_{m,t} and S_{q,t} for one period's observation pattern.
    """
    return _selector(monthly_observed, n_monthly), _selector(quarterly_observed, n_quarterly)
