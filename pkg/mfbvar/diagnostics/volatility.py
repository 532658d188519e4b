"""
file: mfbvar/diagnostics/volatility.py
Implied conditional volatility of a series (GDP in practice) and its
quarterly aggregate:

    sigma2_t = sum_k lambda_k^2 omega^f_{t,k} + omega^nu_t
"""
import logging
from dataclasses import dataclass

import numpy as np

from mfbvar.diagnostics.constants import SQUARED_TRIANGULAR_WEIGHTS
from mfbvar.diagnostics.constants import AggregationMode
from mfbvar.varmodel.constants import AGGREGATION_WINDOW
from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE
from mfbvar.varmodel.constants import TRIANGULAR_WEIGHTS
from mfbvar.volatility.exceptions import VolatilityInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GdpVolatility:
    monthly_variance: np.ndarray
    # periods (indices into the monthly path) of the quarterly values
    quarter_ends: np.ndarray
    quarterly_sd: np.ndarray


def gdp_volatility(
    loading,
    factor_variance,
    idio_variance,
    quarter_phase: int = DEFAULT_QUARTER_PHASE,
    mode: str = AggregationMode.VARIANCE,
) -> GdpVolatility:
    """
    ``loading`` has one entry per factor, ``factor_variance`` is T x r and
    ``idio_variance`` has length T; variances, not log-variances. Quarterly
    values exist at quarter-ends with five months of history.
    """
    loading = np.atleast_1d(np.asarray(loading, dtype=float))
    idio_variance = np.asarray(idio_variance, dtype=float)
    factor_variance = np.asarray(factor_variance, dtype=float)
    if factor_variance.ndim == 1:
        factor_variance = factor_variance[:, None]
    if factor_variance.shape != (len(idio_variance), loading.size):
        msg = (
            f"factor volatility of shape {factor_variance.shape} for {loading.size} loadings"
            f" and {len(idio_variance)} periods"
        )
        raise VolatilityInputError(msg)
    if np.any(factor_variance < 0) or np.any(idio_variance < 0):
        msg = "volatilities must be non-negative"
        raise VolatilityInputError(msg)
    if mode not in {choice for choice, _ in AggregationMode.CHOICES}:
        msg = f"unknown aggregation mode '{mode}'"
        raise VolatilityInputError(msg)

    monthly = factor_variance @ loading**2 + idio_variance
    periods = np.arange(len(monthly))
    quarter_ends = periods[(periods % 3 == quarter_phase) & (periods >= AGGREGATION_WINDOW - 1)]
    # row j holds period t - j
    windows = np.stack([monthly[quarter_ends - j] for j in range(AGGREGATION_WINDOW)], axis=1)
    if mode == AggregationMode.VARIANCE:
        quarterly = np.sqrt(windows @ SQUARED_TRIANGULAR_WEIGHTS)
    else:
        quarterly = np.sqrt(windows) @ TRIANGULAR_WEIGHTS
    return GdpVolatility(monthly, quarter_ends, quarterly)
