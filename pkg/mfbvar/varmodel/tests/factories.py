import factory
import numpy as np

from mfbvar.smoothing.benchmarks import random_var_parameters
from mfbvar.varmodel.structures import VarParameters


class VarParametersFactory(factory.Factory):
    """
    Stationary random VAR; pass ``seed`` to vary the coefficients.
    """

    n_monthly = 2
    n_quarterly = 1
    n_lags = 5
    seed = factory.Sequence(lambda n: n)

    class Meta:
        model = VarParameters

    @classmethod
    def _build(cls, model_class, n_monthly, n_quarterly, n_lags, seed):
        rng = np.random.default_rng(seed)
        return random_var_parameters(n_monthly, n_quarterly, n_lags, rng)

    @classmethod
    def _create(cls, model_class, **kwargs):
        return cls._build(model_class, **kwargs)
