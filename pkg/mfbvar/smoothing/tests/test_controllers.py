import numpy as np
import pytest
from scipy.stats import ks_2samp

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.smoothing.controllers import FilterFactory
from mfbvar.smoothing.controllers import SimulationSmootherController
from mfbvar.smoothing.controllers import simulation_smoother
from mfbvar.smoothing.exceptions import StateLayoutError
from mfbvar.smoothing.filters import univariate_filter
from mfbvar.varmodel.aggregation import aggregate_path
from mfbvar.varmodel.structures import MixedFrequencyDataset

VARIANTS = [choice for choice, _ in SmootherVariant.CHOICES]


def assert_reproduces_data(latent, dataset, atol=1e-8):
    observed = dataset.observed
    implied = np.column_stack([
        latent[:, : dataset.n_monthly], aggregate_path(latent[:, dataset.n_monthly:]),
    ])
    np.testing.assert_allclose(implied[observed], dataset.values[observed], atol=atol)


class TestFilterFactory:
    def test_modes(self):
        assert FilterFactory.create(SmootherVariant.ADAPTIVE_UNIVARIATE)[0] is univariate_filter
        assert FilterFactory.create(SmootherVariant.COMPANION)[0] is not univariate_filter

    def test_unknown_variant(self):
        with pytest.raises(StateLayoutError, match="unknown smoother variant"):
            FilterFactory.create("square-root")


class TestSimulationSmoother:
    @pytest.mark.parametrize("variant", VARIANTS)
    def test_draw_reproduces_observations(self, small_system, variant):
        draw = simulation_smoother(
            small_system.params, small_system.fsv, small_system.dataset, keyed_generator(1), variant,
        )
        assert draw.shape == small_system.dataset.values.shape
        assert not np.isnan(draw).any()
        assert_reproduces_data(draw, small_system.dataset)

    def test_smoothed_mean_reproduces_observations(self, small_system):
        controller = SimulationSmootherController(small_system.params, small_system.fsv, small_system.dataset)
        assert_reproduces_data(controller.smoothed_mean(), small_system.dataset)

    def test_variants_draw_identically(self, small_system):
        draws = [
            simulation_smoother(
                small_system.params, small_system.fsv, small_system.dataset, keyed_generator(3), variant,
            )
            for variant in VARIANTS
        ]
        for draw in draws[1:]:
            np.testing.assert_allclose(draw, draws[0], atol=1e-6)

    def test_interior_gap_draws_agree(self, balanced_system):
        values = balanced_system.dataset.values.copy()
        values[[9, 14], [0, 2]] = np.nan
        dataset = MixedFrequencyDataset(values, n_monthly=3)
        draws = [
            simulation_smoother(balanced_system.params, balanced_system.fsv, dataset, keyed_generator(8), variant)
            for variant in VARIANTS
        ]
        for draw in draws:
            assert_reproduces_data(draw, dataset)
            np.testing.assert_allclose(draw, draws[0], atol=1e-6)
        assert np.isfinite(draws[0][[9, 14], [0, 2]]).all()

    def test_same_seed_same_draw(self, small_system):
        first = simulation_smoother(small_system.params, small_system.fsv, small_system.dataset, keyed_generator(9))
        again = simulation_smoother(small_system.params, small_system.fsv, small_system.dataset, keyed_generator(9))
        np.testing.assert_array_equal(first, again)
        other = simulation_smoother(small_system.params, small_system.fsv, small_system.dataset, keyed_generator(10))
        assert not np.allclose(first, other)

    def test_likelihood_agrees_across_variants(self, small_system):
        values = [
            SimulationSmootherController(
                small_system.params, small_system.fsv, small_system.dataset, variant,
            ).log_likelihood()
            for variant in VARIANTS
        ]
        assert values == pytest.approx([values[0]] * 3, rel=1e-8)

    def test_draw_mean_matches_smoothed_mean(self, small_system):
        controller = SimulationSmootherController(
            small_system.params, small_system.fsv, small_system.dataset, SmootherVariant.COMPANION,
        )
        draws = np.stack([controller.draw(keyed_generator(4, i)) for i in range(400)])
        mean = controller.smoothed_mean()
        spread = draws.std(axis=0) / np.sqrt(draws.shape[0])
        latent = ~small_system.dataset.observed
        latent[:, 2] = True
        gap = np.abs(draws.mean(axis=0) - mean)[latent]
        assert np.mean(gap <= 3 * spread[latent] + 1e-10) >= 0.95

    @pytest.mark.slow
    def test_adaptive_matches_companion_distribution(self, small_system):
        def sample(variant, key):
            controller = SimulationSmootherController(
                small_system.params, small_system.fsv, small_system.dataset, variant,
            )
            return np.stack([controller.draw(keyed_generator(key, i)) for i in range(5000)])

        adaptive = sample(SmootherVariant.ADAPTIVE_UNIVARIATE, 1)
        companion = sample(SmootherVariant.COMPANION, 2)
        latent = ~small_system.dataset.observed
        latent[:, 2] = True
        pvalues = [
            ks_2samp(adaptive[:, t, v], companion[:, t, v]).pvalue
            for t, v in zip(*np.nonzero(latent))
        ]
        assert np.mean(np.array(pvalues) > 0.001) >= 0.95
