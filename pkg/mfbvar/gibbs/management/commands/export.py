"""
# Posterior means of the coefficient rows as CSV next to the chain
./manage.py export --chain data/chains/panel/chain_0 --what pi_mean

# Raw log-volatility draws in the binary layout
./manage.py export --chain data/chains/panel/chain_0 --what idio_logvol --format binary --out exports/
"""
from django.core.management.base import BaseCommand

from mfbvar.diagnostics.constants import AggregationMode
from mfbvar.diagnostics.constants import ExportFormat
from mfbvar.diagnostics.constants import ExportSelector
from mfbvar.diagnostics.exporters import export
from mfbvar.gibbs.stores import ChainStore
from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError
from mfbvar.inherits.helpers import as_command_error


class Command(BaseCommand):
    help = "Export posterior summaries or raw draws of a stored chain"

    def add_arguments(self, parser):
        parser.add_argument("--chain", required=True, help="Directory of a saved chain store")
        parser.add_argument(
            "--what",
            required=True,
            help=f"One of {', '.join(c for c, _ in ExportSelector.CHOICES)} or a stored draw name",
        )
        parser.add_argument(
            "--format", dest="fmt", default=ExportFormat.CSV, help="csv (default) or binary",
        )
        parser.add_argument("--out", help="Output directory (default: the chain directory)")
        parser.add_argument(
            "--mode", default=AggregationMode.VARIANCE, help="GDP volatility aggregation: variance or sd",
        )

    def handle(self, *args, **options):
        try:
            store = ChainStore.load(options["chain"])
            path = export(store, options["what"], options["fmt"], options["out"] or options["chain"], options["mode"])
        except (BaseValidationError, BaseNumericalError) as exc:
            raise as_command_error(exc) from exc
        self.stdout.write(self.style.SUCCESS(f"Exported {options['what']} to {path}"))
