import numpy as np
import pytest
from scipy.stats import norm

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.smoothing.benchmarks import simulate_mixed_frequency
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.smoothing.exceptions import FilterSingularityError
from mfbvar.smoothing.exceptions import MissingIntermediatesError
from mfbvar.smoothing.filters import kalman_filter_reference
from mfbvar.smoothing.filters import univariate_filter
from mfbvar.smoothing.periods import PeriodSystem
from mfbvar.smoothing.periods import PeriodSystemBuilder
from mfbvar.smoothing.smoothers import fixed_interval_smoother
from mfbvar.smoothing.smoothers import reference_smoother
from mfbvar.smoothing.smoothers import univariate_smoother
from mfbvar.varmodel.structures import MixedFrequencyDataset


def local_level(observations, state_var=1.0, obs_var=0.5, init_var=2.0):
    """Scalar random walk observed with noise; NaN drops the observation."""
    periods = []
    for t, y in enumerate(observations):
        observed = not np.isnan(y)
        periods.append(PeriodSystem(
            time=t,
            elements=((0, t),),
            design=np.ones((int(observed), 1)),
            obs_intercept=np.zeros((int(observed), 1)),
            obs_variance=np.full(int(observed), obs_var),
            observations=np.full((int(observed), 1), y),
            transition=None if t == 0 else np.eye(1),
            state_intercept=np.zeros((1, 1)),
            state_cov=np.array([[init_var if t == 0 else state_var]]),
        ))
    return periods


def mixed_periods(
    seed, n_monthly=4, n_quarterly=1, n_lags=5, n_periods=48, variant=SmootherVariant.ADAPTIVE, interior_gaps=0,
):
    """Simulated ragged-edge systems; ``interior_gaps`` monthly cells past the presample are blanked."""
    rng = keyed_generator(seed)
    tail = rng.integers(0, 3, size=n_monthly)
    system = simulate_mixed_frequency(n_monthly, n_quarterly, n_lags, n_periods, rng, tail_missing=tail)
    dataset = system.dataset
    if interior_gaps:
        values = dataset.values.copy()
        rows = rng.integers(n_lags, n_periods - 3, size=interior_gaps)
        values[rows, rng.integers(0, n_monthly, size=interior_gaps)] = np.nan
        dataset = MixedFrequencyDataset(values, n_monthly=n_monthly, quarter_phase=dataset.quarter_phase)
    builder = PeriodSystemBuilder(system.params, system.fsv, dataset)
    return builder.build([dataset.values], variant)


class TestReferenceFilter:
    def test_one_step_closed_form(self):
        out = kalman_filter_reference(local_level([0.7]))
        assert out.log_likelihood == pytest.approx(norm.logpdf(0.7, scale=np.sqrt(2.5)))

    def test_all_missing(self):
        out = kalman_filter_reference(local_level([np.nan] * 4))
        assert out.log_likelihood == 0.0
        for predicted, filtered in zip(out.predicted_state, out.filtered_state):
            np.testing.assert_array_equal(predicted, filtered)


class TestUnivariateFilter:
    def test_scalar_case_matches_reference(self):
        data = [0.3, np.nan, -1.2, 0.4, 2.0]
        univariate = univariate_filter(local_level(data))
        reference = kalman_filter_reference(local_level(data))
        assert univariate.log_likelihood == pytest.approx(reference.log_likelihood, rel=1e-12)
        np.testing.assert_allclose(univariate.filtered_state[-1], reference.filtered_state[-1])

    def test_missing_element_leaves_state(self):
        out = univariate_filter(local_level([0.3, np.nan]), store_elements=True)
        assert len(out.element_states[1]) == 1
        np.testing.assert_array_equal(out.filtered_cov[1], out.predicted_cov[1])

    @pytest.mark.parametrize("seed", range(100))
    def test_matches_reference(self, seed):
        periods = mixed_periods(
            seed,
            n_monthly=2 + seed % 9,
            n_quarterly=1 + seed % 2,
            n_lags=(5, 6, 8)[seed % 3],
            n_periods=48 + (7 * seed) % 73,
            interior_gaps=seed % 3,
        )
        univariate = univariate_filter(periods)
        reference = kalman_filter_reference(periods)
        assert univariate.log_likelihood == pytest.approx(reference.log_likelihood, rel=1e-8)
        for mine, theirs in zip(univariate.filtered_state, reference.filtered_state):
            np.testing.assert_allclose(mine, theirs, atol=1e-8)

    def test_information_never_decreases(self):
        periods = mixed_periods(3)
        out = univariate_filter(periods, store_elements=True)
        for covs in out.element_covs:
            for before, after in zip(covs, covs[1:]):
                assert np.linalg.eigvalsh(before - after).min() > -1e-9

    def test_variants_share_likelihood(self):
        adaptive = kalman_filter_reference(mixed_periods(5))
        companion = kalman_filter_reference(mixed_periods(5, variant=SmootherVariant.COMPANION))
        assert adaptive.log_likelihood == pytest.approx(companion.log_likelihood, rel=1e-8)

    def test_interior_gaps_share_likelihood(self):
        adaptive = univariate_filter(mixed_periods(6, interior_gaps=4))
        companion = kalman_filter_reference(mixed_periods(6, variant=SmootherVariant.COMPANION, interior_gaps=4))
        assert adaptive.log_likelihood == pytest.approx(companion.log_likelihood, rel=1e-8)

    def test_singular_element(self):
        period = PeriodSystem(
            time=4,
            elements=((0, 4),),
            design=np.ones((1, 1)),
            obs_intercept=np.zeros((1, 1)),
            obs_variance=np.zeros(1),
            observations=np.ones((1, 1)),
            transition=None,
            state_intercept=np.zeros((1, 1)),
            state_cov=np.zeros((1, 1)),
        )
        with pytest.raises(FilterSingularityError) as excinfo:
            univariate_filter([period])
        assert (excinfo.value.period, excinfo.value.element) == (4, 0)

    def test_implied_element_is_skipped(self):
        period = PeriodSystem(
            time=0,
            elements=((0, 0),),
            design=np.ones((1, 1)),
            obs_intercept=np.zeros((1, 1)),
            obs_variance=np.zeros(1),
            observations=np.full((1, 1), 2.0),
            transition=None,
            state_intercept=np.full((1, 1), 2.0),
            state_cov=np.zeros((1, 1)),
        )
        out = univariate_filter([period])
        assert out.log_likelihood == 0.0
        assert not out.processed[0].any()


class TestSmoothers:
    def test_terminal_identity(self):
        periods = mixed_periods(1)
        filtered = univariate_filter(periods)
        smoothed = univariate_smoother(filtered)
        np.testing.assert_allclose(smoothed.smoothed_state[-1], filtered.filtered_state[-1], atol=1e-9)

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_rts(self, seed):
        periods = mixed_periods(seed, n_monthly=3, n_periods=36)
        smoothed = univariate_smoother(univariate_filter(periods))
        oracle = fixed_interval_smoother(kalman_filter_reference(periods))
        for mine, theirs in zip(smoothed.smoothed_state, oracle.smoothed_state):
            np.testing.assert_allclose(mine, theirs, atol=1e-7)

    def test_reference_smoother_agrees(self):
        periods = mixed_periods(2)
        univariate = univariate_smoother(univariate_filter(periods))
        reference = reference_smoother(kalman_filter_reference(periods))
        for mine, theirs in zip(univariate.smoothed_state, reference.smoothed_state):
            np.testing.assert_allclose(mine, theirs, atol=1e-8)

    def test_missing_intermediates(self):
        periods = mixed_periods(0)
        with pytest.raises(MissingIntermediatesError):
            univariate_smoother(kalman_filter_reference(periods))
