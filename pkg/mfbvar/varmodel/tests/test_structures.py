import numpy as np
import pytest

from mfbvar.varmodel.exceptions import DatasetValidationError
from mfbvar.varmodel.exceptions import DimensionMismatchError
from mfbvar.varmodel.exceptions import NonFiniteInputError
from mfbvar.varmodel.structures import FsvState
from mfbvar.varmodel.structures import MixedFrequencyDataset
from mfbvar.varmodel.structures import VarParameters
from mfbvar.varmodel.tests.factories import VarParametersFactory


class TestVarParameters:
    def test_rows_round_trip(self):
        params = VarParametersFactory(n_monthly=3, n_quarterly=1, n_lags=5)
        rebuilt = VarParameters.from_rows(params.coefficient_rows(), n_monthly=3)
        np.testing.assert_array_equal(rebuilt.lags, params.lags)
        np.testing.assert_array_equal(rebuilt.intercept, params.intercept)

    def test_row_layout(self):
        params = VarParametersFactory(n_monthly=1, n_quarterly=1, n_lags=2)
        rows = params.coefficient_rows()
        assert rows.shape == (2, 5)
        assert rows[1, 0] == params.intercept[1]
        np.testing.assert_array_equal(rows[1, 3:], params.lags[1, 1])

    def test_partitions(self):
        params = VarParametersFactory(n_monthly=2, n_quarterly=1, n_lags=5)
        assert params.pi_mm.shape == (2, 10)
        assert params.pi_qq.shape == (1, 5)
        np.testing.assert_array_equal(params.pi_qm[:, 2:4], params.lags[1, 2:, :2])

    def test_padding_keeps_process(self):
        params = VarParametersFactory(n_monthly=2, n_quarterly=1, n_lags=2)
        padded = params.padded(5)
        assert padded.n_lags == 5
        assert not padded.lags[2:].any()
        assert padded.spectral_radius() == pytest.approx(params.spectral_radius())

    def test_bad_shapes(self):
        with pytest.raises(DimensionMismatchError):
            VarParameters(np.zeros(2), np.zeros((1, 3, 3)), n_monthly=2)

    def test_non_finite(self):
        lags = np.zeros((1, 2, 2))
        lags[0, 0, 1] = np.nan
        with pytest.raises(NonFiniteInputError):
            VarParameters(np.zeros(2), lags, n_monthly=1)


class TestFsvState:
    def test_constant_state(self):
        state = FsvState.constant(3, 1, 10, idio_logvol=np.log(2.0), start=5)
        np.testing.assert_allclose(state.idio_variance(7), 2.0)
        np.testing.assert_allclose(state.factor_shift(14), 0.0)
        with pytest.raises(DimensionMismatchError):
            state.row(4)

    def test_persistence_bound(self):
        state = FsvState.constant(2, 1, 4)
        state.idio_phi[0] = 1.0
        with pytest.raises(DatasetValidationError):
            state.validate()

    def test_copy_is_independent(self):
        state = FsvState.constant(2, 1, 4)
        clone = state.copy()
        clone.idio_logvol[0, 0] = 5.0
        assert state.idio_logvol[0, 0] == 0.0


class TestMixedFrequencyDataset:
    def _values(self):
        values = np.ones((12, 3))
        values[:, 2] = np.nan
        values[[5, 8, 11], 2] = 0.5
        return values

    def test_balanced_end(self):
        values = self._values()
        values[10:, 0] = np.nan
        values[11, 1] = np.nan
        dataset = MixedFrequencyDataset(values, n_monthly=2)
        assert dataset.balanced_end == 9
        monthly, quarterly = dataset.observation_pattern(11)
        assert monthly.size == 0
        np.testing.assert_array_equal(quarterly, [0])

    def test_balanced_end_skips_interior_gap(self):
        values = self._values()
        values[4, 1] = np.nan
        values[11, 0] = np.nan
        dataset = MixedFrequencyDataset(values, n_monthly=2)
        assert dataset.balanced_end == 10

    def test_balanced_panel(self):
        dataset = MixedFrequencyDataset(self._values(), n_monthly=2)
        assert dataset.balanced_end == 11
        np.testing.assert_array_equal(dataset.observation_counts(), [12, 12, 3])

    def test_off_quarter_value(self):
        values = self._values()
        values[6, 2] = 1.0
        with pytest.raises(DatasetValidationError, match="period 6"):
            MixedFrequencyDataset(values, n_monthly=2)

    def test_quarter_phase(self):
        values = self._values()
        with pytest.raises(DatasetValidationError):
            MixedFrequencyDataset(values, n_monthly=2, quarter_phase=0)

    def test_destandardize(self):
        dataset = MixedFrequencyDataset(
            self._values(), n_monthly=2, means=np.array([1.0, 2.0, 3.0]), scales=np.array([2.0, 1.0, 0.5]),
        )
        np.testing.assert_allclose(dataset.destandardize(np.zeros(3)), [1.0, 2.0, 3.0])
        np.testing.assert_allclose(dataset.destandardize(np.ones(3)), [3.0, 3.0, 3.5])
