# mfbvar/regression/constants.py

# relative jitter for the single Cholesky retry
PRECISION_JITTER = 1e-10


class SamplerPolicy:
    """Which algorithm draws the rows of Pi"""
    AUTO = "auto"
    RUE = "rue"
    BHATTACHARYA = "bhattacharya"

    CHOICES = (
        (AUTO, "Bhattacharya when np + 1 exceeds the sample, Rue otherwise"),
        (RUE, "Always Rue (precision Cholesky)"),
        (BHATTACHARYA, "Always Bhattacharya (data-space solve)"),
    )
