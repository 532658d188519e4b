"""
# Summaries of one stored chain as CSV tables
./manage.py diagnose --chain data/chains/chain_0 --out reports/chain_0

# Quarterly GDP volatility from triangular weights on standard deviations
./manage.py diagnose --chain data/chains/chain_0 --out reports/chain_0 --mode sd
"""
from django.core.management.base import BaseCommand

from mfbvar.diagnostics.constants import AggregationMode
from mfbvar.diagnostics.controllers import DiagnosticsController
from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError
from mfbvar.inherits.helpers import as_command_error


class Command(BaseCommand):
    help = "Inefficiency factors, volatility bands and loading summaries of a stored chain"

    def add_arguments(self, parser):
        parser.add_argument("--chain", required=True, help="Directory of a saved chain store")
        parser.add_argument("--out", required=True, help="Directory for the summary tables")
        parser.add_argument(
            "--mode",
            choices=[choice for choice, _ in AggregationMode.CHOICES],
            default=AggregationMode.VARIANCE,
            help="Quarterly aggregation of the implied volatility (default: variance)",
        )

    def handle(self, *args, **options):
        try:
            controller = DiagnosticsController.from_directory(options["chain"], options["mode"])
            paths = controller.run(options["out"])
        except (BaseValidationError, BaseNumericalError) as exc:
            raise as_command_error(exc) from exc
        for selector, path in paths.items():
            self.stdout.write(f"{selector}: {path}")
        self.stdout.write(self.style.SUCCESS(f"{len(paths)} summaries written to {options['out']}"))
