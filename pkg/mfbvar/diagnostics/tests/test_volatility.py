import numpy as np
import pytest

from mfbvar.diagnostics.constants import AggregationMode
from mfbvar.diagnostics.volatility import gdp_volatility
from mfbvar.volatility.exceptions import VolatilityInputError

T = 24


def test_zero_loading_gives_idiosyncratic_variance():
    idio = np.linspace(0.5, 2.0, T)
    result = gdp_volatility([0.0], np.full(T, 3.0), idio)
    np.testing.assert_allclose(result.monthly_variance, idio)


def test_direct_formula():
    result = gdp_volatility(2.0, np.ones(T), np.ones(T))
    np.testing.assert_allclose(result.monthly_variance, 5.0)


def test_several_factors():
    result = gdp_volatility([1.0, 2.0], np.column_stack([np.ones(T), np.full(T, 0.5)]), np.zeros(T))
    np.testing.assert_allclose(result.monthly_variance, 3.0)


def test_constant_variance_quarterly_scale():
    result = gdp_volatility([0.0], np.zeros(T), np.full(T, 4.0))
    np.testing.assert_allclose(result.quarterly_sd**2, 19.0 * 4.0 / 81.0)


def test_standard_deviation_mode():
    result = gdp_volatility([0.0], np.zeros(T), np.full(T, 4.0), mode=AggregationMode.STANDARD_DEVIATION)
    np.testing.assert_allclose(result.quarterly_sd, 2.0)


def test_quarter_ends():
    result = gdp_volatility([0.0], np.zeros(12), np.ones(12), quarter_phase=2)
    assert result.quarter_ends.tolist() == [5, 8, 11]
    result = gdp_volatility([0.0], np.zeros(12), np.ones(12), quarter_phase=1)
    assert result.quarter_ends.tolist() == [4, 7, 10]


def test_monthly_variance_bounded_below_by_idiosyncratic():
    rng = np.random.default_rng(0)
    idio = rng.uniform(0.1, 1.0, T)
    result = gdp_volatility(rng.normal(size=2), rng.uniform(0.0, 2.0, (T, 2)), idio)
    assert np.all(result.monthly_variance >= idio)


def test_no_factors():
    result = gdp_volatility(np.empty(0), np.empty((T, 0)), np.ones(T))
    np.testing.assert_allclose(result.monthly_variance, 1.0)


@pytest.mark.parametrize(
    ("factor", "idio"),
    [(np.full(T, -1.0), np.ones(T)), (np.ones(T), np.full(T, -0.1))],
)
def test_negative_inputs(factor, idio):
    with pytest.raises(VolatilityInputError):
        gdp_volatility([1.0], factor, idio)


def test_misaligned_paths():
    with pytest.raises(VolatilityInputError):
        gdp_volatility([1.0], np.ones(T - 1), np.ones(T))
