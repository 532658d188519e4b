from django.apps import AppConfig


class PriorsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "mfbvar.priors"
    label = "priors"
    verbose_name = "Priors"
