"""
file: mfbvar/priors/minnesota.py
Minnesota prior variances and the series scales they are built from.
"""
import logging

import numpy as np

from mfbvar.priors.configs import MinnesotaConfig
from mfbvar.priors.constants import DOGMATIC_VARIANCE
from mfbvar.priors.constants import SCALE_AR_ORDER
from mfbvar.priors.exceptions import PriorConfigurationError
from mfbvar.varmodel.structures import MixedFrequencyDataset

logger = logging.getLogger(__name__)


def minnesota_sd(i: int, j: int, lag: int, cfg: MinnesotaConfig) -> float:
    """
    Prior standard deviation of Pi_lag[i, j] (0-based i, j; lag from 1).
    """
    if lag < 1:
        msg = f"lags start at 1, got {lag}"
        raise PriorConfigurationError(msg)
    decay = cfg.lambda1 / lag**cfg.lambda3
    if i == j:
        return float(decay)
    return float(decay * cfg.lambda2 * cfg.scales[i] / cfg.scales[j])


def build_prior_diagonal(i: int, cfg: MinnesotaConfig, n_lags: int) -> np.ndarray:
    """
    Diagonal of D_i in the regressor order (1, x_{t-1}, ..., x_{t-p}).
    """
    n = cfg.n_vars
    lags = np.arange(1, n_lags + 1, dtype=float)
    decay = cfg.lambda1 / lags**cfg.lambda3
    ratio = cfg.lambda2 * cfg.scales[i] / cfg.scales
    ratio[i] = 1.0
    sd = np.concatenate([[cfg.intercept_scale * cfg.scales[i]], np.outer(decay, ratio).ravel()])
    variances = sd**2
    if variances.min() < DOGMATIC_VARIANCE:
        logger.warning(
            "equation %d: prior variances down to %.2e make the Minnesota prior dogmatic",
            i, variances.min(),
        )
    return variances


def build_prior_diagonals(cfg: MinnesotaConfig, n_lags: int) -> np.ndarray:
    """All equations at once, n x (np + 1)."""
    return np.vstack([build_prior_diagonal(i, cfg, n_lags) for i in range(cfg.n_vars)])


def ar_residual_sd(series: np.ndarray, order: int = SCALE_AR_ORDER) -> float:
    """
    Residual sd of an AR(order) with intercept fitted by least squares;
    rows with a missing value are dropped.
    """
    series = np.asarray(series, dtype=float)
    if series.size <= order:
        return float("nan")
    lagged = np.column_stack(
        [np.ones(series.size - order)]
        + [series[order - lag : series.size - lag] for lag in range(1, order + 1)]
    )
    target = series[order:]
    keep = ~np.isnan(target) & ~np.isnan(lagged).any(axis=1)
    if keep.sum() <= order + 1:
        return float("nan")
    coef = np.linalg.lstsq(lagged[keep], target[keep], rcond=None)[0]
    residuals = target[keep] - lagged[keep] @ coef
    return float(np.sqrt(residuals @ residuals / (keep.sum() - order - 1)))


def series_scales(dataset: MixedFrequencyDataset, order: int = SCALE_AR_ORDER) -> np.ndarray:
    """
    s_i for every series: monthly series over the balanced interior,
    quarterly series on their quarterly observations. Series too short for
    the AR fit fall back to their sample sd.
    """
    end = max(dataset.balanced_end, 0) + 1
    scales = np.empty(dataset.n_vars)
    for i in range(dataset.n_vars):
        if i < dataset.n_monthly:
            series = dataset.values[:end, i]
        else:
            column = dataset.values[:, i]
            series = column[~np.isnan(column)]
        scale = ar_residual_sd(series, order)
        if not np.isfinite(scale) or scale <= 0:
            scale = float(np.nanstd(series))
            logger.warning("series %s is too short for an AR(%d) scale; using its sd", dataset.series_ids[i], order)
        if not np.isfinite(scale) or scale <= 0:
            msg = f"cannot measure the scale of series {dataset.series_ids[i]}"
            raise PriorConfigurationError(msg)
        scales[i] = scale
    return scales
