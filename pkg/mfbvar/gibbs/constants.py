# mfbvar/gibbs/constants.py

DEFAULT_ITERATIONS = 30000
DEFAULT_BURN_IN = 10000
DEFAULT_THIN = 20
DEFAULT_LAGS = 6
DEFAULT_FACTORS = 1

DRAWS_FILE = "draws.npz"
METADATA_FILE = "metadata.json"
CHECKPOINT_FILE = "checkpoint.pkl"


class GibbsBlock:
    """Blocks of one sweep, in execution order"""
    SV_PARAMS = "sv_params"
    LOADINGS = "loadings"
    FACTORS = "factors"
    REGRESSION = "regression"
    LATENT = "latent"
    INDICATORS = "indicators"
    LOGVOL = "logvol"

    CHOICES = (
        (SV_PARAMS, "SV parameters (phi, mu, sigma)"),
        (LOADINGS, "Factor loadings"),
        (FACTORS, "Latent factors"),
        (REGRESSION, "VAR coefficients"),
        (LATENT, "Latent monthly path"),
        (INDICATORS, "Mixture indicators"),
        (LOGVOL, "Log-volatility paths"),
    )
    ORDER = tuple(choice for choice, _ in CHOICES)


class RunStatus:
    PENDING = "pending"
    RUNNING = "running"
    FINISHED = "finished"
    FAILED = "failed"

    CHOICES = (
        (PENDING, "Pending"),
        (RUNNING, "Running"),
        (FINISHED, "Finished"),
        (FAILED, "Failed"),
    )


class DrawName:
    """Arrays kept for every retained draw"""
    PI = "pi"
    LOADINGS = "loadings"
    FACTORS = "factors"
    IDIO_LOGVOL = "idio_logvol"
    FACTOR_LOGVOL = "factor_logvol"
    IDIO_MU = "idio_mu"
    IDIO_PHI = "idio_phi"
    IDIO_SIGMA = "idio_sigma"
    FACTOR_PHI = "factor_phi"
    FACTOR_SIGMA = "factor_sigma"
    LATENT = "latent"
    LOGLIK = "loglik"

    CHOICES = (
        (PI, "Coefficient rows (c_i, Pi_1[i], ..., Pi_p[i])"),
        (LOADINGS, "Factor loadings"),
        (FACTORS, "Latent factors"),
        (IDIO_LOGVOL, "Idiosyncratic log-volatilities"),
        (FACTOR_LOGVOL, "Factor log-volatilities"),
        (IDIO_MU, "Idiosyncratic SV levels"),
        (IDIO_PHI, "Idiosyncratic SV persistence"),
        (IDIO_SIGMA, "Idiosyncratic SV innovation sd"),
        (FACTOR_PHI, "Factor SV persistence"),
        (FACTOR_SIGMA, "Factor SV innovation sd"),
        (LATENT, "Latent monthly path"),
        (LOGLIK, "Data log-likelihood"),
    )
