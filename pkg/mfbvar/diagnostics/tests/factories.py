import factory
import numpy as np
import pandas as pd

from mfbvar.gibbs.constants import DrawName
from mfbvar.gibbs.stores import ChainStore


class ChainStoreFactory(factory.Factory):
    """
    A store of independent random draws with the shapes the sampler keeps.
    Loadings are centred away from zero so their sign is identifiable.
    """

    n_draws = 60
    n_monthly = 2
    n_quarterly = 1
    n_factors = 1
    n_lags = 5
    n_periods = 30
    seed = factory.Sequence(lambda n: n)

    class Meta:
        model = ChainStore

    @classmethod
    def _build(cls, model_class, n_draws, n_monthly, n_quarterly, n_factors, n_lags, n_periods, seed):
        rng = np.random.default_rng(seed)
        n, r, fsv_periods = n_monthly + n_quarterly, n_factors, n_periods - n_lags
        store = model_class(
            {"mcmc": {"n_lags": n_lags, "n_factors": r}},
            seed=seed,
            series_ids=[f"m{i}" for i in range(n_monthly)] + [f"q{i}" for i in range(n_quarterly)],
            n_monthly=n_monthly,
            quarter_phase=2,
            periods=[str(p) for p in pd.period_range("2015-01", periods=n_periods, freq="M")],
        )
        for d in range(n_draws):
            store.append(d, {
                DrawName.PI: rng.normal(size=(n, n * n_lags + 1)),
                DrawName.LOADINGS: 1.0 + 0.1 * rng.normal(size=(n, r)),
                DrawName.FACTORS: rng.normal(size=(fsv_periods, r)),
                DrawName.IDIO_LOGVOL: rng.normal(size=(fsv_periods, n)),
                DrawName.FACTOR_LOGVOL: rng.normal(size=(fsv_periods, r)),
                DrawName.IDIO_MU: rng.normal(size=n),
                DrawName.IDIO_PHI: rng.uniform(0.8, 0.99, size=n),
                DrawName.IDIO_SIGMA: rng.uniform(0.1, 0.3, size=n),
                DrawName.FACTOR_PHI: rng.uniform(0.8, 0.99, size=r),
                DrawName.FACTOR_SIGMA: rng.uniform(0.1, 0.3, size=r),
                DrawName.LATENT: rng.normal(size=(n_periods, n)),
                DrawName.LOGLIK: np.array(rng.normal()),
            })
        return store

    @classmethod
    def _create(cls, model_class, **kwargs):
        return cls._build(model_class, **kwargs)


def ar1_chain(rho: float, length: int, rng: np.random.Generator) -> np.ndarray:
    shocks = rng.standard_normal(length)
    chain = np.empty(length)
    chain[0] = shocks[0] / np.sqrt(1 - rho**2)
    for t in range(1, length):
        chain[t] = rho * chain[t - 1] + shocks[t]
    return chain
