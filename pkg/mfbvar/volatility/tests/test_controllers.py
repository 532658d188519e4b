import numpy as np
import pytest
from scipy.stats import ks_2samp

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.priors.configs import FsvPriorConfig
from mfbvar.smoothing.benchmarks import simulate_logvol
from mfbvar.varmodel.structures import FsvState
from mfbvar.volatility.controllers import FsvController
from mfbvar.volatility.exceptions import VolatilityInputError


def residuals_of(system):
    """True VAR innovations of the synthetic estimation periods."""
    fsv = system.fsv
    shocks = fsv.common_component()
    idio = np.exp(fsv.idio_logvol / 2) * keyed_generator(99).standard_normal(shocks.shape)
    return shocks + idio


def sweep(controller, residuals, rng):
    controller.sv_params(rng)
    controller.loadings(residuals, rng)
    controller.factors(residuals, rng)
    controller.indicators_step(residuals, rng)
    controller.logvol(rng)


class TestFsvController:
    def test_sweeps_keep_state_valid(self, balanced_system):
        state = balanced_system.fsv.copy()
        controller = FsvController(state)
        residuals = residuals_of(balanced_system)
        rng = keyed_generator(3)
        for _ in range(5):
            sweep(controller, residuals, rng)
        state.validate()
        assert controller.get_name() == "fsv"
        assert controller.y_star.shape == (state.n_periods, state.n_vars + state.n_factors)
        assert controller.acceptance["phi"].shape == (state.n_vars + state.n_factors,)

    def test_deterministic(self, balanced_system):
        residuals = residuals_of(balanced_system)
        states = []
        for _ in range(2):
            controller = FsvController(balanced_system.fsv.copy())
            rng = keyed_generator(5)
            for _ in range(3):
                sweep(controller, residuals, rng)
            states.append(controller.state)
        np.testing.assert_array_equal(states[0].idio_logvol, states[1].idio_logvol)
        np.testing.assert_array_equal(states[0].loadings, states[1].loadings)

    def test_without_factors(self):
        state = FsvState.constant(2, 0, 30)
        controller = FsvController(state)
        residuals = keyed_generator(6).standard_normal((30, 2))
        rng = keyed_generator(7)
        for _ in range(3):
            sweep(controller, residuals, rng)
        assert state.factor_logvol.shape == (30, 0)
        assert np.all(np.isfinite(state.idio_logvol))

    def test_logvol_needs_indicators(self, balanced_system):
        with pytest.raises(VolatilityInputError):
            FsvController(balanced_system.fsv.copy()).logvol(keyed_generator(0))

    def test_residual_shape(self, balanced_system):
        controller = FsvController(balanced_system.fsv.copy())
        with pytest.raises(VolatilityInputError):
            controller.loadings(np.zeros((3, 3)), keyed_generator(0))


def prior_state(prior, n_vars, n_factors, n_periods, rng):
    """FSV parameters, loadings and paths drawn from the prior."""
    k = n_vars + n_factors
    mu = prior.mu_mean + np.sqrt(prior.mu_variance) * rng.standard_normal(n_vars)
    phi = 2.0 * rng.beta(prior.phi_a, prior.phi_b, size=k) - 1.0
    sigma = np.sqrt(prior.sigma_scale) * np.abs(rng.standard_normal(k))
    loadings = np.sqrt(prior.loading_variance) * rng.standard_normal((n_vars, n_factors))
    loadings *= prior.loading_mask(n_vars, n_factors)
    factor_logvol = simulate_logvol(n_periods, np.zeros(n_factors), phi[:n_factors], sigma[:n_factors], rng)
    idio_logvol = simulate_logvol(n_periods, mu, phi[n_factors:], sigma[n_factors:], rng)
    return FsvState(
        loadings=loadings,
        factors=np.exp(factor_logvol / 2) * rng.standard_normal((n_periods, n_factors)),
        idio_logvol=idio_logvol,
        factor_logvol=factor_logvol,
        idio_mu=mu,
        idio_phi=phi[n_factors:],
        idio_sigma=sigma[n_factors:],
        factor_phi=phi[:n_factors],
        factor_sigma=sigma[:n_factors],
    )


def summary(state):
    return np.concatenate([
        state.idio_mu, state.idio_phi, state.idio_sigma, state.factor_phi, state.factor_sigma,
        state.loadings[:, 0],
    ])


@pytest.mark.slow
def test_successive_conditional_matches_prior():
    """
    Alternating data | parameters and parameters | data keeps the FSV block
    at its prior.
    """
    prior = FsvPriorConfig()
    rng = keyed_generator(2718)
    n_vars, n_factors, n_periods = 3, 1, 40
    independent = np.array([
        summary(prior_state(prior, n_vars, n_factors, n_periods, rng)) for _ in range(5000)
    ])

    controller = FsvController(prior_state(prior, n_vars, n_factors, n_periods, rng), prior)
    state = controller.state
    successive = []
    for sweep_index in range(21_000):
        noise = np.exp(state.idio_logvol / 2) * rng.standard_normal((n_periods, n_vars))
        residuals = state.common_component() + noise
        controller.indicators_step(residuals, rng)
        controller.sv_params(rng)
        controller.loadings(residuals, rng)
        controller.factors(residuals, rng)
        controller.indicators_step(residuals, rng)
        controller.logvol(rng)
        if sweep_index >= 1000 and sweep_index % 20 == 0:
            successive.append(summary(state))
    successive = np.array(successive)

    p_values = [ks_2samp(successive[:, i], independent[:, i]).pvalue for i in range(independent.shape[1])]
    assert min(p_values) > 0.001
