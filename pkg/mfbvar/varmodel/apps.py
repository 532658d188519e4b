from django.apps import AppConfig


class VarModelConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "mfbvar.varmodel"
    label = "varmodel"
    verbose_name = "Mixed-frequency VAR model"
