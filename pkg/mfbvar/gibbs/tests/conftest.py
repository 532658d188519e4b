import numpy as np
import pytest

from mfbvar.regression.controllers import RegressionController
from mfbvar.regression.exceptions import SamplerFailureError


@pytest.fixture
def fail_regression_at(monkeypatch):
    """Make the regression block fail at one iteration of every chain."""

    def patch(iteration):
        original = RegressionController.draw

        def draw(self, latent, fsv, seed, keys=()):
            if keys[1] == iteration:
                raise SamplerFailureError(0, np.inf, "injected")
            return original(self, latent, fsv, seed, keys)

        monkeypatch.setattr(RegressionController, "draw", draw)

    return patch
