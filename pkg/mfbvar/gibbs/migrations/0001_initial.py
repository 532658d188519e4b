# Generated by Django 5.2 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="ChainRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("created", models.DateTimeField(auto_now_add=True)),
                ("updated", models.DateTimeField(auto_now=True)),
                ("label", models.CharField(blank=True, max_length=255)),
                (
                    "status",
                    models.CharField(
                        choices=[
                            ("pending", "Pending"),
                            ("running", "Running"),
                            ("finished", "Finished"),
                            ("failed", "Failed"),
                        ],
                        default="pending",
                        max_length=20,
                    ),
                ),
                ("seed", models.BigIntegerField(default=0)),
                ("chain", models.PositiveIntegerField(default=0)),
                ("config", models.JSONField(default=dict)),
                ("config_hash", models.CharField(blank=True, max_length=64)),
                ("output_dir", models.CharField(blank=True, max_length=1024)),
                ("checkpoint_path", models.CharField(blank=True, max_length=1024)),
                ("n_draws", models.PositiveIntegerField(default=0)),
                ("block_seconds", models.JSONField(blank=True, default=dict)),
                ("error", models.TextField(blank=True)),
            ],
            options={
                "verbose_name": "Chain Run",
                "verbose_name_plural": "Chain Runs",
                "ordering": ["-created"],
                "indexes": [
                    models.Index(fields=["config_hash", "chain"], name="gibbs_chain_hash_idx"),
                ],
            },
        ),
    ]
