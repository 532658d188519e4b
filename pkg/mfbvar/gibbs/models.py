"""
Records of estimation runs
"""
from django.db import models
from django.utils.translation import gettext_lazy as _

from mfbvar.gibbs.constants import RunStatus
from mfbvar.inherits.helpers import config_hash
from mfbvar.inherits.models import BaseIntModel


class ChainRun(BaseIntModel):
    """One chain of one estimation, and where its draws live"""
    label = models.CharField(max_length=255, blank=True)
    status = models.CharField(max_length=20, choices=RunStatus.CHOICES, default=RunStatus.PENDING)
    seed = models.BigIntegerField(default=0)
    chain = models.PositiveIntegerField(default=0)
    config = models.JSONField(default=dict)
    config_hash = models.CharField(max_length=64, blank=True)
    output_dir = models.CharField(max_length=1024, blank=True)
    checkpoint_path = models.CharField(max_length=1024, blank=True)
    n_draws = models.PositiveIntegerField(default=0)
    block_seconds = models.JSONField(default=dict, blank=True)
    error = models.TextField(blank=True)

    class Meta:
        verbose_name = _("Chain Run")
        verbose_name_plural = _("Chain Runs")
        ordering = ["-created"]
        indexes = [models.Index(fields=["config_hash", "chain"], name="gibbs_chain_hash_idx")]

    def __str__(self):
        return f"{self.label or self.config_hash[:12]} chain {self.chain} ({self.status})"

    def attach(self, config, output_dir):
        """Copy the identity of the chain a controller is about to run."""
        self.config = config.to_dict()
        self.config_hash = config_hash(self.config)
        self.seed = config.mcmc.seed
        self.chain = config.mcmc.chain
        self.output_dir = str(output_dir)
        self.save()

    def mark_running(self):
        self.status = RunStatus.RUNNING
        self.error = ""
        self.save(update_fields=["status", "error", "updated"])

    def mark_finished(self, store, output_dir):
        self.status = RunStatus.FINISHED
        self.n_draws = store.n_draws
        self.block_seconds = store.block_totals()
        self.output_dir = str(output_dir)
        self.save()

    def mark_failed(self, error, checkpoint=None):
        self.status = RunStatus.FAILED
        self.error = str(error)
        self.checkpoint_path = str(checkpoint or "")
        self.save()
