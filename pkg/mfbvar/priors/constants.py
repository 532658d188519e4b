# mfbvar/priors/constants.py

# Minnesota hyperparameters
DEFAULT_LAMBDA1 = 0.2
LARGE_MODEL_LAMBDA1 = 0.1
LARGE_MODEL_THRESHOLD = 100
DEFAULT_LAMBDA2 = 0.5
DEFAULT_LAMBDA3 = 2.0
# intercept sd as a multiple of the series scale
DEFAULT_INTERCEPT_SCALE = 10.0
SCALE_AR_ORDER = 4
# below this the prior is effectively dogmatic
DOGMATIC_VARIANCE = 1e-12

# FSV hyperparameters
DEFAULT_MU_MEAN = 0.0
DEFAULT_MU_VARIANCE = 10.0
DEFAULT_PHI_A = 10.0
DEFAULT_PHI_B = 3.0
DEFAULT_SIGMA_SCALE = 1.0
DEFAULT_LOADING_VARIANCE = 1.0


class LoadingRestriction:
    LOWER_TRIANGULAR = "lower_triangular"
    NONE = "none"

    CHOICES = (
        (LOWER_TRIANGULAR, "Lower triangular (zero above the diagonal)"),
        (NONE, "Unrestricted"),
    )
