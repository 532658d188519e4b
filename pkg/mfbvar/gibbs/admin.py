from django.contrib import admin
from django.utils.translation import gettext_lazy as _

from .models import ChainRun


@admin.register(ChainRun)
class ChainRunAdmin(admin.ModelAdmin):
    """Admin interface for estimation runs."""
    list_display = ("id", "label", "chain", "status", "n_draws", "created")
    list_filter = ("status",)
    search_fields = ("label", "config_hash")
    readonly_fields = ("config_hash", "n_draws", "block_seconds", "created", "updated")
    fieldsets = (
        (None, {
            "fields": ("label", "status", "seed", "chain", "n_draws")
        }),
        (_("Storage"), {
            "fields": ("output_dir", "checkpoint_path"),
        }),
        (_("Configuration"), {
            "fields": ("config", "config_hash", "block_seconds"),
            "classes": ("collapse",),
        }),
        (_("Failure"), {
            "fields": ("error",),
            "classes": ("collapse",),
        }),
    )
