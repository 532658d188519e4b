"""
# Time the three simulation smoothers over the sweep in bench.ini
./manage.py bench --spec bench.ini --out bench.csv

# Quick sweep without a spec file
./manage.py bench --n-vars 20 --lags 1,5,13 --repetitions 3
"""
import logging

from django.core.management.base import BaseCommand
from django.core.management.base import CommandError

from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError
from mfbvar.inherits.helpers import as_command_error
from mfbvar.smoothing.benchmarks import BenchSpec
from mfbvar.smoothing.benchmarks import bench_smoothers
from mfbvar.smoothing.constants import MIN_REPETITIONS

logger = logging.getLogger(__name__)


def _int_list(raw: str) -> list[int]:
    return [int(item) for item in raw.split(",") if item.strip()]


class Command(BaseCommand):
    help = "Time the simulation smoother variants on synthetic mixed-frequency systems"

    def add_arguments(self, parser):
        parser.add_argument("--spec", help="INI file with a [bench] section")
        parser.add_argument("--out", help="Write the timing table to this CSV file")
        parser.add_argument("--n-vars", type=_int_list, default=[20], help="Comma separated variable counts")
        parser.add_argument("--lags", type=_int_list, default=[1, 5, 13], help="Comma separated lag lengths")
        parser.add_argument("--quarterly", type=int, default=1, help="Number of quarterly series (default: 1)")
        parser.add_argument("--periods", type=int, default=120)
        parser.add_argument("--repetitions", type=int, default=MIN_REPETITIONS)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--workers", type=int, default=1)

    def handle(self, *args, **options):
        try:
            if options["spec"]:
                spec = BenchSpec.from_file(options["spec"])
            else:
                spec = BenchSpec(
                    n_vars=options["n_vars"],
                    n_lags=options["lags"],
                    n_quarterly=options["quarterly"],
                    n_periods=options["periods"],
                    repetitions=options["repetitions"],
                    seed=options["seed"],
                    workers=options["workers"],
                )
            table = bench_smoothers(spec)
        except (BaseValidationError, BaseNumericalError) as exc:
            logger.error("benchmark failed: %s", exc)
            raise as_command_error(exc) from exc
        except OSError as exc:
            raise CommandError(str(exc), returncode=2) from exc

        if options["out"]:
            table.to_csv(options["out"], index=False)
            self.stdout.write(self.style.SUCCESS(f"Timing table saved to {options['out']}"))
        else:
            self.stdout.write(table.to_csv(index=False))
