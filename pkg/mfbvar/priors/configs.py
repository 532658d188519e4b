"""
file: mfbvar/priors/configs.py
Hyperparameter containers for the Minnesota and FSV priors.
"""
import logging
from dataclasses import dataclass

import numpy as np

from mfbvar.priors.constants import DEFAULT_INTERCEPT_SCALE
from mfbvar.priors.constants import DEFAULT_LAMBDA1
from mfbvar.priors.constants import DEFAULT_LAMBDA2
from mfbvar.priors.constants import DEFAULT_LAMBDA3
from mfbvar.priors.constants import DEFAULT_LOADING_VARIANCE
from mfbvar.priors.constants import DEFAULT_MU_MEAN
from mfbvar.priors.constants import DEFAULT_MU_VARIANCE
from mfbvar.priors.constants import DEFAULT_PHI_A
from mfbvar.priors.constants import DEFAULT_PHI_B
from mfbvar.priors.constants import DEFAULT_SIGMA_SCALE
from mfbvar.priors.constants import LARGE_MODEL_LAMBDA1
from mfbvar.priors.constants import LARGE_MODEL_THRESHOLD
from mfbvar.priors.constants import LoadingRestriction
from mfbvar.priors.exceptions import PriorConfigurationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinnesotaConfig:
    """
    sd(Pi_l[i, j]) = lambda1 / l**lambda3                  if i == j
                   = lambda1 lambda2 / l**lambda3 s_i/s_j  otherwise

    The intercept of equation i has sd intercept_scale * s_i. Prior means are 0.
    """

    scales: np.ndarray
    lambda1: float = DEFAULT_LAMBDA1
    lambda2: float = DEFAULT_LAMBDA2
    lambda3: float = DEFAULT_LAMBDA3
    intercept_scale: float = DEFAULT_INTERCEPT_SCALE

    def __post_init__(self):
        scales = np.asarray(self.scales, dtype=float)
        object.__setattr__(self, "scales", scales)
        if scales.ndim != 1 or not np.all(scales > 0):
            msg = "series scales must be a vector of positive numbers"
            raise PriorConfigurationError(msg)
        if self.lambda1 <= 0 or self.lambda2 <= 0:
            msg = f"lambda1 and lambda2 must be positive, got {self.lambda1}, {self.lambda2}"
            raise PriorConfigurationError(msg)
        if self.lambda3 < 0:
            msg = f"lambda3 must be non-negative, got {self.lambda3}"
            raise PriorConfigurationError(msg)
        if self.intercept_scale <= 0:
            msg = "intercept scale must be positive"
            raise PriorConfigurationError(msg)

    @property
    def n_vars(self) -> int:
        return self.scales.size

    @classmethod
    def for_model(cls, scales, **overrides) -> "MinnesotaConfig":
        """Defaults with the tighter lambda1 used for very large systems."""
        scales = np.asarray(scales, dtype=float)
        if "lambda1" not in overrides and scales.size > LARGE_MODEL_THRESHOLD:
            overrides["lambda1"] = LARGE_MODEL_LAMBDA1
        return cls(scales=scales, **overrides)


@dataclass(frozen=True)
class FsvPriorConfig:
    """
    mu ~ N(mu_mean, mu_variance); (phi + 1) / 2 ~ Beta(phi_a, phi_b);
    sigma^2 ~ sigma_scale * chi^2(1); every free loading ~ N(0, loading_variance).
    """

    mu_mean: float = DEFAULT_MU_MEAN
    mu_variance: float = DEFAULT_MU_VARIANCE
    phi_a: float = DEFAULT_PHI_A
    phi_b: float = DEFAULT_PHI_B
    sigma_scale: float = DEFAULT_SIGMA_SCALE
    loading_variance: float = DEFAULT_LOADING_VARIANCE
    loading_restriction: str = LoadingRestriction.LOWER_TRIANGULAR

    def __post_init__(self):
        positive = {
            "mu_variance": self.mu_variance,
            "phi_a": self.phi_a,
            "phi_b": self.phi_b,
            "sigma_scale": self.sigma_scale,
            "loading_variance": self.loading_variance,
        }
        for name, value in positive.items():
            if not value > 0:
                msg = f"{name} must be positive, got {value}"
                raise PriorConfigurationError(msg)
        if self.loading_restriction not in {choice for choice, _ in LoadingRestriction.CHOICES}:
            msg = f"unknown loading restriction '{self.loading_restriction}'"
            raise PriorConfigurationError(msg)

    def loading_mask(self, n_vars: int, n_factors: int) -> np.ndarray:
        """True where a loading is free."""
        mask = np.ones((n_vars, n_factors), dtype=bool)
        if self.loading_restriction == LoadingRestriction.LOWER_TRIANGULAR:
            mask[np.triu_indices(n_vars, 1, n_factors)] = False
        return mask
