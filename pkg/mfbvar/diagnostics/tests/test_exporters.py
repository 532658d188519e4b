import numpy as np
import pandas as pd
import pytest

from mfbvar.diagnostics.constants import ExportFormat
from mfbvar.diagnostics.constants import ExportSelector
from mfbvar.diagnostics.exceptions import BinaryFormatError
from mfbvar.diagnostics.exceptions import UnknownSelectorError
from mfbvar.diagnostics.exporters import export
from mfbvar.diagnostics.exporters import factor_volatility_bands
from mfbvar.diagnostics.exporters import gdp_volatility_bands
from mfbvar.diagnostics.exporters import loading_boxes
from mfbvar.diagnostics.exporters import pi_posterior_mean
from mfbvar.diagnostics.exporters import read_binary
from mfbvar.diagnostics.exporters import write_binary
from mfbvar.gibbs.constants import DrawName

from .factories import ChainStoreFactory


class TestBinaryFormat:
    @pytest.mark.parametrize("shape", [(7,), (3, 4), (2, 3, 5)])
    def test_round_trip_is_bitwise(self, tmp_path, shape):
        array = np.random.default_rng(0).normal(size=shape)
        reloaded = read_binary(write_binary(array, tmp_path / "a.bin"))
        assert reloaded.shape == shape
        assert reloaded.tobytes() == array.tobytes()

    def test_layout(self, tmp_path):
        array = np.arange(6.0).reshape(2, 3)
        raw = write_binary(array, tmp_path / "a.bin").read_bytes()
        assert raw[:4] == b"MFBV"
        assert int.from_bytes(raw[4:6], "little") == 1
        assert int.from_bytes(raw[6:8], "little") == 2
        assert np.frombuffer(raw[8:24], dtype="<u8").tolist() == [2, 3]
        # column-major payload
        np.testing.assert_array_equal(np.frombuffer(raw[24:], dtype="<f8"), [0.0, 3.0, 1.0, 4.0, 2.0, 5.0])

    def test_bad_magic(self, tmp_path):
        path = write_binary(np.ones(3), tmp_path / "a.bin")
        path.write_bytes(b"XXXX" + path.read_bytes()[4:])
        with pytest.raises(BinaryFormatError):
            read_binary(path)

    def test_bad_version(self, tmp_path):
        path = write_binary(np.ones(3), tmp_path / "a.bin")
        raw = path.read_bytes()
        path.write_bytes(raw[:4] + (2).to_bytes(2, "little") + raw[6:])
        with pytest.raises(BinaryFormatError):
            read_binary(path)

    def test_truncated_payload(self, tmp_path):
        path = write_binary(np.ones(3), tmp_path / "a.bin")
        path.write_bytes(path.read_bytes()[:-1])
        with pytest.raises(BinaryFormatError):
            read_binary(path)


class TestSummaries:
    def test_pi_posterior_mean_shape(self):
        store = ChainStoreFactory(n_monthly=2, n_quarterly=1, n_lags=5)
        table = pi_posterior_mean(store)
        assert table.shape == (3, 3 * 5 + 1)
        assert list(table.index) == ["m0", "m1", "q0"]
        assert table.columns[:3].tolist() == ["const", "L1.m0", "L1.m1"]
        np.testing.assert_allclose(table.to_numpy(), store.get(DrawName.PI).mean(axis=0))

    def test_factor_volatility_bands(self):
        store = ChainStoreFactory(n_factors=2, n_periods=30, n_lags=5)
        bands = factor_volatility_bands(store)
        assert len(bands) == 2 * 25
        assert bands["period"].iloc[0] == "2015-06"
        assert (bands["p10"] <= bands["p50"]).all()
        assert (bands["p50"] <= bands["p90"]).all()
        assert (bands["p10"] > 0).all()

    def test_gdp_volatility_bands(self):
        store = ChainStoreFactory(n_periods=30, n_lags=5)
        bands = gdp_volatility_bands(store)
        monthly = bands[bands["measure"] == "monthly_variance"]
        quarterly = bands[bands["measure"] == "quarterly_sd"]
        assert len(monthly) == 25
        months = pd.PeriodIndex(quarterly["period"], freq="M").month
        assert set(months % 3) == {0}
        assert (quarterly["p10"] <= quarterly["p90"]).all()

    def test_loading_boxes(self):
        store = ChainStoreFactory()
        store._draws["loadings"] = [-x if i % 2 else x for i, x in enumerate(store._draws["loadings"])]
        boxes = loading_boxes(store)
        assert len(boxes) == 3
        assert (boxes["whisker_low"] <= boxes["q1"]).all()
        assert (boxes["q1"] <= boxes["median"]).all()
        assert (boxes["median"] <= boxes["q3"]).all()
        assert (boxes["q3"] <= boxes["whisker_high"]).all()
        assert (boxes["median"] > 0.5).all()


class TestExport:
    @pytest.mark.parametrize("fmt", [ExportFormat.CSV, ExportFormat.BINARY])
    @pytest.mark.parametrize("what", [choice for choice, _ in ExportSelector.CHOICES])
    def test_every_selector(self, tmp_path, what, fmt):
        path = export(ChainStoreFactory(), what, fmt, tmp_path)
        assert path.exists()
        assert path.stat().st_size > 0

    def test_pi_mean_binary(self, tmp_path):
        store = ChainStoreFactory()
        path = export(store, ExportSelector.PI_MEAN, ExportFormat.BINARY, tmp_path)
        np.testing.assert_allclose(read_binary(path), pi_posterior_mean(store).to_numpy())

    def test_raw_draws(self, tmp_path):
        store = ChainStoreFactory()
        path = export(store, DrawName.IDIO_PHI, ExportFormat.BINARY, tmp_path)
        np.testing.assert_array_equal(read_binary(path), store.get(DrawName.IDIO_PHI))
        frame = pd.read_csv(export(store, DrawName.LOADINGS, ExportFormat.CSV, tmp_path), index_col=0)
        assert frame.shape == (60, 3)

    def test_unknown_selector(self, tmp_path):
        with pytest.raises(UnknownSelectorError):
            export(ChainStoreFactory(), "everything", ExportFormat.CSV, tmp_path)

    def test_unknown_format(self, tmp_path):
        with pytest.raises(UnknownSelectorError):
            export(ChainStoreFactory(), ExportSelector.PI_MEAN, "parquet", tmp_path)
