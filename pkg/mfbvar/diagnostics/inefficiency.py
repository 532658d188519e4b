"""
file: mfbvar/diagnostics/inefficiency.py
Inefficiency factors IF = 1 + 2 * sum_j rho_j of stored chains, and their
group-wise summary table.
"""
import logging
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import pandas as pd
import scipy.fft

from mfbvar.diagnostics.constants import AUTOCORRELATION_CUTOFF
from mfbvar.diagnostics.constants import IF_PERCENTILES
from mfbvar.diagnostics.constants import IF_RULE_OF_THUMB
from mfbvar.diagnostics.constants import MAX_LAG_DIVISOR
from mfbvar.diagnostics.constants import MIN_CHAIN_LENGTH
from mfbvar.diagnostics.constants import ParameterGroup
from mfbvar.diagnostics.exceptions import ChainTooShortError
from mfbvar.diagnostics.exceptions import ConstantChainError
from mfbvar.diagnostics.exceptions import UnknownGroupError
from mfbvar.gibbs.constants import DrawName

logger = logging.getLogger(__name__)


def autocorrelation(draws: np.ndarray) -> np.ndarray:
    """Sample autocorrelations of every column of ``draws`` (N x k) by FFT."""
    n = draws.shape[0]
    centered = draws - draws.mean(axis=0)
    size = scipy.fft.next_fast_len(2 * n)
    spectrum = scipy.fft.rfft(centered, n=size, axis=0)
    autocovariance = scipy.fft.irfft(spectrum * np.conj(spectrum), n=size, axis=0)[:n] / n
    return autocovariance / autocovariance[0]


def inefficiency_factors(draws: np.ndarray) -> np.ndarray:
    """
    IF of every column of ``draws`` (N x k).

    The sum runs up to and including the first lag whose autocorrelation
    falls below 0.01, and never past N // 50. The result is floored at
    1 / log10(N).
    """
    draws = np.asarray(draws, dtype=float)
    if draws.ndim == 1:
        draws = draws[:, None]
    n = draws.shape[0]
    if n < MIN_CHAIN_LENGTH:
        msg = f"chain of length {n} is shorter than {MIN_CHAIN_LENGTH}"
        raise ChainTooShortError(msg)
    constant = np.flatnonzero(np.var(draws, axis=0) == 0)
    if constant.size:
        msg = f"constant chain in column(s) {constant.tolist()}; autocorrelation undefined"
        raise ConstantChainError(msg)

    rho = autocorrelation(draws)
    max_lag = max(n // MAX_LAG_DIVISOR, 1)
    window = rho[1 : max_lag + 1]
    below = window < AUTOCORRELATION_CUTOFF
    # number of lags summed per column
    stop = np.where(below.any(axis=0), np.argmax(below, axis=0) + 1, max_lag)
    included = np.arange(max_lag)[:, None] < stop[None, :]
    factors = 1.0 + 2.0 * np.sum(np.where(included, window, 0.0), axis=0)
    return np.maximum(factors, 1.0 / np.log10(n))


def inefficiency_factor(chain) -> float:
    return float(inefficiency_factors(np.asarray(chain, dtype=float).reshape(-1, 1))[0])


def _flatten(draws: np.ndarray) -> np.ndarray:
    return draws.reshape(draws.shape[0], -1)


def group_draws(store, group: str) -> np.ndarray:
    """Draws x parameters matrix of one parameter group."""
    if group == ParameterGroup.LATENT_GDP:
        if DrawName.LATENT not in store:
            return np.empty((store.n_draws, 0))
        return _flatten(store.get(DrawName.LATENT)[:, :, store.n_monthly:])
    if group == ParameterGroup.REGRESSION:
        return _flatten(store.get(DrawName.PI))
    if group == ParameterGroup.FACTORS:
        return _flatten(store.get(DrawName.FACTORS))
    if group == ParameterGroup.LOADINGS:
        return _flatten(store.get(DrawName.LOADINGS))
    if group == ParameterGroup.LOGVOL:
        return np.hstack([_flatten(store.get(DrawName.IDIO_LOGVOL)), _flatten(store.get(DrawName.FACTOR_LOGVOL))])
    if group == ParameterGroup.SV_MU:
        return _flatten(store.get(DrawName.IDIO_MU))
    if group == ParameterGroup.SV_PHI:
        return np.hstack([_flatten(store.get(DrawName.IDIO_PHI)), _flatten(store.get(DrawName.FACTOR_PHI))])
    if group == ParameterGroup.SV_SIGMA2:
        return np.hstack([
            _flatten(store.get(DrawName.IDIO_SIGMA)) ** 2,
            _flatten(store.get(DrawName.FACTOR_SIGMA)) ** 2,
        ])
    msg = f"unknown parameter group '{group}' (known: {', '.join(ParameterGroup.ORDER)})"
    raise UnknownGroupError(msg)


@dataclass
class IfSummary:
    """Per-parameter inefficiency factors by group"""
    factors: dict[str, np.ndarray] = field(default_factory=dict)

    def table(self) -> pd.DataFrame:
        rows = []
        for group, values in self.factors.items():
            if values.size == 0:
                continue
            rows.append({
                "group": group,
                "n_params": values.size,
                "min": values.min(),
                **{f"p{q}": value for q, value in zip(IF_PERCENTILES, np.percentile(values, IF_PERCENTILES))},
                "max": values.max(),
                "share_above_20": float(np.mean(values > IF_RULE_OF_THUMB)),
            })
        columns = ["group", "n_params", "min", *(f"p{q}" for q in IF_PERCENTILES), "max", "share_above_20"]
        return pd.DataFrame(rows, columns=columns)


def group_factors(draws: np.ndarray) -> np.ndarray:
    """IFs of the non-constant columns; constant ones (restricted loadings) are skipped."""
    if draws.shape[1] == 0:
        return np.empty(0)
    varying = np.var(draws, axis=0) > 0
    skipped = int(np.sum(~varying))
    if skipped:
        logger.debug("skipping %d constant parameters", skipped)
    if not varying.any():
        return np.empty(0)
    return inefficiency_factors(draws[:, varying])


def summarize_if(store, groups=ParameterGroup.ORDER) -> IfSummary:
    if store.n_draws == 0:
        msg = "cannot summarize an empty chain store"
        raise ChainTooShortError(msg)
    summary = IfSummary()
    for group in groups:
        summary.factors[group] = group_factors(group_draws(store, group))
        logger.debug("group %s: %d inefficiency factors", group, summary.factors[group].size)
    return summary
