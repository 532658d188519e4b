import numpy as np
import pytest

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.smoothing.benchmarks import simulate_mixed_frequency
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.smoothing.periods import PeriodSystemBuilder
from mfbvar.smoothing.periods import adaptive_augment
from mfbvar.varmodel.exceptions import CompactFormUndefinedError
from mfbvar.varmodel.exceptions import DatasetValidationError
from mfbvar.varmodel.structures import MixedFrequencyDataset
from mfbvar.varmodel.structures import VarParameters


def state_dims(periods):
    return [period.state_dim for period in periods]


class TestAdaptiveAugment:
    def test_balanced_data_keeps_compact_form(self, balanced_system):
        periods = adaptive_augment(balanced_system.params, balanced_system.fsv, balanced_system.dataset)
        assert set(state_dims(periods)) == {1 * 6}
        assert len(periods) == 36 - 5 + 1
        assert periods[0].time == 4
        assert periods[0].transition is None

    def test_two_missing_periods(self, small_system):
        periods = adaptive_augment(small_system.params, small_system.fsv, small_system.dataset)
        assert state_dims(periods)[-3:] == [6, 7, 8]
        assert periods[-1].elements[-2:] == ((0, 29), (0, 28))

    def test_all_monthly_missing(self):
        system = simulate_mixed_frequency(3, 1, 5, 30, keyed_generator(5), tail_missing=[1, 1, 1])
        periods = adaptive_augment(system.params, system.fsv, system.dataset)
        assert state_dims(periods)[-1] == 6 + 3

    def test_companion_layout(self, small_system):
        builder = PeriodSystemBuilder(small_system.params, small_system.fsv, small_system.dataset)
        periods = builder.build([small_system.dataset.values], SmootherVariant.COMPANION)
        assert periods[0].state_dim == 6
        assert set(state_dims(periods[1:])) == {3 * 5}
        assert periods[1].elements[:3] == ((0, 5), (1, 5), (2, 5))

    def test_companion_drops_lags_without_weight(self, small_system):
        params = small_system.params
        lags = params.lags.copy()
        lags[1:, :, :2] = 0.0
        sparse = VarParameters(params.intercept, lags, n_monthly=2)
        builder = PeriodSystemBuilder(sparse, small_system.fsv, small_system.dataset)
        periods = builder.build([small_system.dataset.values], SmootherVariant.COMPANION)
        assert builder.companion_lags == [1, 1, 5]
        assert set(state_dims(periods[1:])) == {2 + 5}

    def test_interior_gap_is_local(self, balanced_system):
        values = balanced_system.dataset.values.copy()
        values[12, 1] = np.nan
        dataset = MixedFrequencyDataset(values, n_monthly=3)
        periods = adaptive_augment(balanced_system.params, balanced_system.fsv, dataset)
        dims = dict(zip([period.time for period in periods], state_dims(periods)))
        assert dims[11] == 6
        assert all(dims[t] == 7 for t in range(12, 18))
        assert dims[18] == 6
        assert periods[-1].transition.shape == (6, 6)
        leaving = next(period for period in periods if period.time == 18)
        assert leaving.transition.shape == (6, 7)

    def test_monthly_rows_have_idiosyncratic_noise(self, balanced_system):
        periods = adaptive_augment(balanced_system.params, balanced_system.fsv, balanced_system.dataset)
        period = periods[3]
        omega = balanced_system.fsv.idio_variance(period.time)
        np.testing.assert_allclose(period.obs_variance[:3], omega[:3])
        if period.n_observed > 3:
            assert period.obs_variance[3] == 0.0


class TestBuilderValidation:
    def test_gap_inside_presample(self, small_system):
        values = small_system.dataset.values.copy()
        values[2, 1] = np.nan
        dataset = MixedFrequencyDataset(values, n_monthly=2)
        with pytest.raises(DatasetValidationError):
            PeriodSystemBuilder(small_system.params, small_system.fsv, dataset)

    def test_early_quarterly_value(self, small_system):
        values = small_system.dataset.values.copy()
        values[2, 2] = 0.1
        dataset = MixedFrequencyDataset(values, n_monthly=2)
        with pytest.raises(DatasetValidationError, match="period 4"):
            PeriodSystemBuilder(small_system.params, small_system.fsv, dataset)

    def test_no_quarterly_series(self, small_system):
        dataset = MixedFrequencyDataset(small_system.dataset.values[:, :3], n_monthly=3)
        params = small_system.params
        monthly_only = VarParameters(params.intercept, params.lags, n_monthly=3)
        with pytest.raises(CompactFormUndefinedError):
            PeriodSystemBuilder(monthly_only, small_system.fsv, dataset)
