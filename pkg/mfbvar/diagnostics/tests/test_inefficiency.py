import numpy as np
import pytest

from mfbvar.diagnostics.constants import ParameterGroup
from mfbvar.diagnostics.exceptions import ChainTooShortError
from mfbvar.diagnostics.exceptions import ConstantChainError
from mfbvar.diagnostics.exceptions import UnknownGroupError
from mfbvar.diagnostics.inefficiency import IfSummary
from mfbvar.diagnostics.inefficiency import autocorrelation
from mfbvar.diagnostics.inefficiency import group_draws
from mfbvar.diagnostics.inefficiency import inefficiency_factor
from mfbvar.diagnostics.inefficiency import inefficiency_factors
from mfbvar.diagnostics.inefficiency import summarize_if

from .factories import ChainStoreFactory
from .factories import ar1_chain


class TestInefficiencyFactor:
    def test_autocorrelation_of_ar1(self):
        chain = ar1_chain(0.5, 50_000, np.random.default_rng(0))
        rho = autocorrelation(chain[:, None])[:4, 0]
        np.testing.assert_allclose(rho, [1.0, 0.5, 0.25, 0.125], atol=0.02)

    def test_iid_chain(self):
        chain = np.random.default_rng(1).standard_normal(10_000)
        assert 0.8 <= inefficiency_factor(chain) <= 1.3

    @pytest.mark.parametrize(("length", "tolerance"), [(1_000, 0.35), (10_000, 0.2), (100_000, 0.1)])
    def test_iid_chain_converges_to_one(self, length, tolerance):
        chain = np.random.default_rng(length).standard_normal(length)
        assert inefficiency_factor(chain) == pytest.approx(1.0, abs=tolerance)

    def test_ar1_closed_form(self):
        chain = ar1_chain(0.9, 100_000, np.random.default_rng(2))
        assert inefficiency_factor(chain) == pytest.approx(19.0, rel=0.25)

    def test_antithetic_chain_below_one(self):
        rng = np.random.default_rng(3)
        chain = np.where(np.arange(1_000) % 2 == 0, 1.0, -1.0) + 1e-3 * rng.standard_normal(1_000)
        value = inefficiency_factor(chain)
        assert 0.0 <= value < 1.0

    def test_columns_match_single_chains(self):
        rng = np.random.default_rng(4)
        draws = np.column_stack([ar1_chain(rho, 5_000, rng) for rho in (0.0, 0.5, 0.9)])
        expected = [inefficiency_factor(draws[:, j]) for j in range(3)]
        np.testing.assert_allclose(inefficiency_factors(draws), expected)

    def test_short_chain(self):
        with pytest.raises(ChainTooShortError):
            inefficiency_factor(np.arange(49.0))

    def test_constant_chain(self):
        with pytest.raises(ConstantChainError):
            inefficiency_factor(np.ones(100))


class TestSummary:
    def test_single_parameter_group(self):
        summary = IfSummary({"only": np.array([7.5])})
        row = summary.table().iloc[0]
        for column in ("min", "p50", "p75", "p95", "p99", "max"):
            assert row[column] == 7.5
        assert row["share_above_20"] == 0.0

    def test_percentiles_match_direct_quantiles(self):
        rng = np.random.default_rng(5)
        draws = np.column_stack([ar1_chain(rho, 2_000, rng) for rho in np.linspace(0.0, 0.97, 12)])
        factors = inefficiency_factors(draws)
        row = IfSummary({"mixed": factors}).table().iloc[0]
        np.testing.assert_allclose(
            [row["p50"], row["p75"], row["p95"], row["p99"]], np.percentile(factors, [50, 75, 95, 99]),
        )
        assert row["min"] == factors.min()
        assert row["max"] == factors.max()
        assert row["share_above_20"] == pytest.approx(np.mean(factors > 20))
        assert np.mean(factors > 20) > 0

    def test_summarize_store(self):
        store = ChainStoreFactory(n_draws=80)
        table = summarize_if(store).table()
        assert list(table["group"]) == list(ParameterGroup.ORDER)
        regression = table.set_index("group").loc[ParameterGroup.REGRESSION]
        assert regression["n_params"] == 3 * 16
        assert (table["min"] <= table["p50"]).all()
        assert (table["p99"] <= table["max"]).all()

    def test_latent_gdp_uses_quarterly_columns(self):
        store = ChainStoreFactory(n_monthly=2, n_quarterly=1, n_periods=30)
        assert group_draws(store, ParameterGroup.LATENT_GDP).shape == (60, 30)

    def test_constant_parameters_skipped(self):
        store = ChainStoreFactory()
        store._draws["loadings"] = [np.zeros((3, 1)) for _ in range(store.n_draws)]
        summary = summarize_if(store, [ParameterGroup.LOADINGS])
        assert summary.factors[ParameterGroup.LOADINGS].size == 0
        assert summary.table().empty

    def test_unknown_group(self):
        with pytest.raises(UnknownGroupError):
            summarize_if(ChainStoreFactory(), ["volatility of volatility"])
