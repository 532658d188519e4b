import numpy as np
import pytest

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.volatility.constants import LOG_CHI2_MEAN
from mfbvar.volatility.constants import LOG_CHI2_VARIANCE
from mfbvar.volatility.exceptions import VolatilityInputError
from mfbvar.volatility.mixture import MIXTURE_TABLE
from mfbvar.volatility.mixture import MixtureTable
from mfbvar.volatility.mixture import indicator_probabilities
from mfbvar.volatility.mixture import log_squared
from mfbvar.volatility.mixture import sample_mixture_indicators


class TestMixtureTable:
    def test_probabilities_sum_to_one(self):
        assert MIXTURE_TABLE.probabilities.sum() == pytest.approx(1.0, abs=1e-12)
        assert MIXTURE_TABLE.n_components == 10

    def test_log_chi2_moments(self):
        assert MIXTURE_TABLE.mean == pytest.approx(LOG_CHI2_MEAN, rel=0.01)
        assert MIXTURE_TABLE.variance == pytest.approx(LOG_CHI2_VARIANCE, rel=0.01)

    def test_rejects_bad_probabilities(self):
        with pytest.raises(VolatilityInputError):
            MixtureTable(np.array([0.5, 0.6]), np.zeros(2), np.ones(2))

    def test_rejects_ragged_table(self):
        with pytest.raises(VolatilityInputError):
            MixtureTable(np.array([1.0]), np.zeros(2), np.ones(2))


def test_log_squared_offset():
    assert log_squared(np.array([0.0]))[0] == pytest.approx(np.log(1e-8))
    assert log_squared(np.array([2.0]))[0] == pytest.approx(np.log(4.0), abs=1e-8)


class TestIndicators:
    def test_dominant_component(self):
        table = MixtureTable(np.full(3, 1 / 3), np.array([-2.0, 0.0, 3.0]), np.full(3, 1e-4))
        probabilities = indicator_probabilities(np.array([3.5]), np.array([0.5]), table)
        assert probabilities[0, 2] == pytest.approx(1.0)
        draws = sample_mixture_indicators(np.full(50, 3.5), np.full(50, 0.5), keyed_generator(3), table)
        assert np.all(draws == 2)

    def test_single_component(self):
        table = MixtureTable(np.array([1.0, 0.0]), np.array([0.0, 1.0]), np.ones(2))
        draws = sample_mixture_indicators(np.linspace(-5, 5, 100), np.zeros(100), keyed_generator(0), table)
        assert np.all(draws == 0)

    def test_frequencies_match_probabilities(self):
        size = 10_000
        draws = sample_mixture_indicators(np.full(size, -1.0), np.zeros(size), keyed_generator(5))
        probabilities = indicator_probabilities(np.array([-1.0]), np.array([0.0]))[0]
        frequencies = np.bincount(draws, minlength=10) / size
        mc_sd = np.sqrt(probabilities * (1 - probabilities) / size)
        assert np.all(np.abs(frequencies - probabilities) <= 4 * mc_sd + 1e-12)

    def test_probabilities_normalised(self):
        rng = keyed_generator(9)
        probabilities = indicator_probabilities(rng.normal(size=(20, 3)), rng.normal(size=(20, 3)))
        assert probabilities.shape == (20, 3, 10)
        np.testing.assert_allclose(probabilities.sum(axis=-1), 1.0)

    def test_shape_mismatch(self):
        with pytest.raises(VolatilityInputError):
            sample_mixture_indicators(np.zeros(3), np.zeros(4), keyed_generator(0))
