import factory
from factory import Faker
from factory.django import DjangoModelFactory

from mfbvar.gibbs.configs import McmcConfig
from mfbvar.gibbs.configs import RunConfig
from mfbvar.gibbs.models import ChainRun


class McmcConfigFactory(factory.Factory):
    """A run short enough for tests: 12 iterations, 4 retained draws"""

    iterations = 12
    burn_in = 4
    thin = 2
    n_lags = 5
    n_factors = 1
    seed = 3

    class Meta:
        model = McmcConfig


class RunConfigFactory(factory.Factory):
    mcmc = factory.SubFactory(McmcConfigFactory)

    class Meta:
        model = RunConfig


class ChainRunFactory(DjangoModelFactory[ChainRun]):
    label = Faker("slug")
    seed = 3
    chain = 0
    config = factory.LazyFunction(lambda: RunConfigFactory().to_dict())

    class Meta:
        model = ChainRun
