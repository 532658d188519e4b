from django.apps import AppConfig


class VolatilityConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "mfbvar.volatility"
    label = "volatility"
    verbose_name = "Factor stochastic volatility"
