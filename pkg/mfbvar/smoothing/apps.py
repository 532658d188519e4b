from django.apps import AppConfig


class SmoothingConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "mfbvar.smoothing"
    label = "smoothing"
    verbose_name = "Filtering and simulation smoothing"
