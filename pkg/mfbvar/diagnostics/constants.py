# mfbvar/diagnostics/constants.py
import numpy as np

MIN_CHAIN_LENGTH = 50
# autocorrelation sum stops at the first lag below this, or at N // MAX_LAG_DIVISOR
AUTOCORRELATION_CUTOFF = 0.01
MAX_LAG_DIVISOR = 50
IF_RULE_OF_THUMB = 20.0
IF_PERCENTILES = (50, 75, 95, 99)

BAND_PERCENTILES = (10, 50, 90)
WHISKER_IQR = 1.5

# squared (1, 2, 3, 2, 1) / 9, aggregating monthly variances of independent innovations
SQUARED_TRIANGULAR_WEIGHTS = np.array([1.0, 4.0, 9.0, 4.0, 1.0]) / 81.0

BINARY_MAGIC = b"MFBV"
BINARY_VERSION = 1


class ParameterGroup:
    """Rows of the inefficiency factor table"""
    LATENT_GDP = "latent_gdp"
    REGRESSION = "regression"
    FACTORS = "factors"
    LOADINGS = "loadings"
    LOGVOL = "logvol"
    SV_MU = "sv_mu"
    SV_PHI = "sv_phi"
    SV_SIGMA2 = "sv_sigma2"

    CHOICES = (
        (LATENT_GDP, "Latent monthly GDP"),
        (REGRESSION, "Regression parameters"),
        (FACTORS, "Latent factor"),
        (LOADINGS, "Factor loadings"),
        (LOGVOL, "Log-volatilities"),
        (SV_MU, "SV means"),
        (SV_PHI, "SV AR parameters"),
        (SV_SIGMA2, "SV innovation variances"),
    )
    ORDER = tuple(choice for choice, _ in CHOICES)


class AggregationMode:
    """How monthly volatilities are brought to the quarterly scale"""
    VARIANCE = "variance"
    STANDARD_DEVIATION = "sd"

    CHOICES = (
        (VARIANCE, "Squared triangular weights on variances"),
        (STANDARD_DEVIATION, "Triangular weights on standard deviations"),
    )


class ExportSelector:
    PI_MEAN = "pi_mean"
    FACTOR_VOLATILITY = "factor_vol"
    GDP_VOLATILITY = "gdp_vol"
    LOADING_BOXES = "loadings_box"
    INEFFICIENCY = "if_summary"

    CHOICES = (
        (PI_MEAN, "Posterior means of the coefficient rows"),
        (FACTOR_VOLATILITY, "Factor volatility (sd) percentile bands"),
        (GDP_VOLATILITY, "Implied GDP volatility bands, monthly and quarterly"),
        (LOADING_BOXES, "Box-plot statistics of sign-identified loadings"),
        (INEFFICIENCY, "Inefficiency factor summary"),
    )


class ExportFormat:
    CSV = "csv"
    BINARY = "binary"

    CHOICES = (
        (CSV, "Delimited text"),
        (BINARY, "Little-endian binary array"),
    )
