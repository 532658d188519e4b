DEFAULT_INIT_SCALE = 100.0
SINGULARITY_TOLERANCE = 1e-12
# an exactly-degenerate element is accepted only when its innovation is this small
DEGENERATE_INNOVATION = 1e-8
VARIANT_TOLERANCE = 1e-6
MIN_REPETITIONS = 3


class SmootherVariant:
    """Simulation smoother state layouts"""
    COMPANION = "companion"
    ADAPTIVE = "adaptive"
    ADAPTIVE_UNIVARIATE = "adaptive-univariate"

    CHOICES = (
        (COMPANION, "Companion form"),
        (ADAPTIVE, "Adaptive compact form"),
        (ADAPTIVE_UNIVARIATE, "Adaptive compact form, univariate filtering"),
    )


class FilterMode:
    MULTIVARIATE = "multivariate"
    UNIVARIATE = "univariate"

    CHOICES = (
        (MULTIVARIATE, "Multivariate"),
        (UNIVARIATE, "Univariate"),
    )
