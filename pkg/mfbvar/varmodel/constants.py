import numpy as np

# (1, 2, 3, 2, 1) / 9 mapping five latent months to one quarterly growth rate
TRIANGULAR_WEIGHTS = np.array([1.0, 2.0, 3.0, 2.0, 1.0]) / 9.0
AGGREGATION_WINDOW = 5
MIN_AGGREGATION_LAGS = AGGREGATION_WINDOW

DEFAULT_QUARTER_PHASE = 2
QUARTER_PHASES = (0, 1, 2)

MIN_OBSERVATIONS = 20


class SeriesFrequency:
    """Sampling frequency of an observed series"""
    MONTHLY = "monthly"
    QUARTERLY = "quarterly"

    CHOICES = (
        (MONTHLY, "Monthly"),
        (QUARTERLY, "Quarterly"),
    )
