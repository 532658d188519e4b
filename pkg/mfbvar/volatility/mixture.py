"""
file: mfbvar/volatility/mixture.py
Normal-mixture representation of log chi^2_1 and the indicator draw.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from mfbvar.volatility.constants import LOG_OFFSET
from mfbvar.volatility.constants import MIXTURE_MEANS
from mfbvar.volatility.constants import MIXTURE_PROBABILITIES
from mfbvar.volatility.constants import MIXTURE_VARIANCES
from mfbvar.volatility.exceptions import VolatilityInputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MixtureTable:
    probabilities: np.ndarray
    means: np.ndarray
    variances: np.ndarray

    def __post_init__(self):
        shapes = {np.shape(self.probabilities), np.shape(self.means), np.shape(self.variances)}
        if len(shapes) != 1 or len(shapes.pop()) != 1:
            msg = "mixture probabilities, means and variances must be vectors of one length"
            raise VolatilityInputError(msg)
        if abs(np.sum(self.probabilities) - 1.0) > 1e-10 or np.any(self.probabilities < 0):
            msg = "mixture probabilities must be non-negative and sum to one"
            raise VolatilityInputError(msg)
        if np.any(self.variances <= 0):
            msg = "mixture variances must be positive"
            raise VolatilityInputError(msg)

    @property
    def n_components(self) -> int:
        return self.probabilities.size

    @property
    def mean(self) -> float:
        return float(self.probabilities @ self.means)

    @property
    def variance(self) -> float:
        second = self.probabilities @ (self.variances + self.means**2)
        return float(second - self.mean**2)

    def log_weights(self, y_star: np.ndarray, logvol: np.ndarray) -> np.ndarray:
        """Unnormalised log p(s = j | y*, h), stacked on a trailing axis."""
        residual = (y_star - logvol)[..., None] - self.means
        return (
            np.log(self.probabilities, where=self.probabilities > 0,
                   out=np.full(self.n_components, -np.inf))
            - 0.5 * np.log(self.variances)
            - 0.5 * residual**2 / self.variances
        )


MIXTURE_TABLE = MixtureTable(MIXTURE_PROBABILITIES, MIXTURE_MEANS, MIXTURE_VARIANCES)


def log_squared(residuals: np.ndarray, offset: float = LOG_OFFSET) -> np.ndarray:
    """y* = log(e^2 + offset)"""
    return np.log(np.square(residuals) + offset)


def indicator_probabilities(y_star, logvol, table: MixtureTable = MIXTURE_TABLE) -> np.ndarray:
    weights = table.log_weights(np.asarray(y_star, dtype=float), np.asarray(logvol, dtype=float))
    return np.exp(weights - logsumexp(weights, axis=-1, keepdims=True))


def sample_mixture_indicators(
    y_star: np.ndarray,
    logvol: np.ndarray,
    rng: np.random.Generator,
    table: MixtureTable = MIXTURE_TABLE,
) -> np.ndarray:
    """
    Inverse-CDF draw of the component of every observation from its exact
    categorical posterior.
    """
    y_star = np.asarray(y_star, dtype=float)
    logvol = np.asarray(logvol, dtype=float)
    if y_star.shape != logvol.shape:
        msg = f"y* has shape {y_star.shape} but the log-volatilities {logvol.shape}"
        raise VolatilityInputError(msg)
    cumulative = np.cumsum(indicator_probabilities(y_star, logvol, table), axis=-1)
    uniforms = rng.random(y_star.shape)
    indicators = (uniforms[..., None] > cumulative).sum(axis=-1)
    return np.minimum(indicators, table.n_components - 1)
