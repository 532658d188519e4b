import numpy as np

# ten-component normal mixture approximating log chi^2_1
MIXTURE_PROBABILITIES = np.array([
    0.00609, 0.04775, 0.13057, 0.20674, 0.22715, 0.18842, 0.12047, 0.05591, 0.01575, 0.00115,
])
MIXTURE_MEANS = np.array([
    1.92677, 1.34744, 0.73504, 0.02266, -0.85173, -1.97278, -3.46788, -5.55246, -8.68384, -14.65,
])
MIXTURE_VARIANCES = np.array([
    0.11265, 0.17788, 0.26768, 0.40611, 0.62699, 0.98583, 1.57469, 2.54498, 4.16591, 7.33342,
])

# moments of log chi^2_1: digamma(1/2) + log 2 and pi^2 / 2
LOG_CHI2_MEAN = -1.2703628454614782
LOG_CHI2_VARIANCE = np.pi**2 / 2

LOG_OFFSET = 1e-8
PHI_PROPOSAL_SD = 0.1
MIN_PATH_LENGTH = 10

DEFAULT_IDIO_PHI = 0.9
DEFAULT_IDIO_SIGMA = 0.2


class VolatilityBlock:
    """Sub-steps of the FSV block, used to key random streams and timings"""
    SV_PARAMS = "sv_params"
    LOADINGS = "loadings"
    FACTORS = "factors"
    INDICATORS = "indicators"
    LOGVOL = "logvol"

    CHOICES = (
        (SV_PARAMS, "SV parameters"),
        (LOADINGS, "Factor loadings"),
        (FACTORS, "Latent factors"),
        (INDICATORS, "Mixture indicators"),
        (LOGVOL, "Log-volatility paths"),
    )
