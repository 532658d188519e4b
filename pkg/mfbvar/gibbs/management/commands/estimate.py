"""
# One chain from a run file, with two flags overridden
./manage.py estimate --config run.ini --iters 2000 --burn 500

# Everything from flags
./manage.py estimate --data panel.csv --meta series.csv --as-of 2020-06-01 \
    --lags 6 --factors 1 --seed 7 --out data/chains/panel

# Four chains on the Celery workers
./manage.py estimate --config run.ini --chains 4 --async

# Continue a chain that stopped at a block failure
./manage.py estimate --resume data/chains/panel/chain_0/checkpoint.pkl
"""
import logging
from dataclasses import replace

from django.core.management.base import BaseCommand

from mfbvar.gibbs.configs import load_run_config
from mfbvar.gibbs.controllers import GibbsController
from mfbvar.gibbs.exceptions import McmcConfigurationError
from mfbvar.gibbs.models import ChainRun
from mfbvar.gibbs.tasks import execute_run
from mfbvar.gibbs.tasks import load_dataset
from mfbvar.gibbs.tasks import run_chain
from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError
from mfbvar.inherits.helpers import as_command_error
from mfbvar.inherits.helpers import config_hash
from mfbvar.regression.constants import SamplerPolicy
from mfbvar.smoothing.constants import SmootherVariant

logger = logging.getLogger(__name__)

# flag -> (target, field) of the run configuration
FLAG_FIELDS = {
    "data": ("io", "data"),
    "meta": ("io", "meta"),
    "as_of": ("io", "as_of"),
    "out": ("io", "out"),
    "iters": ("mcmc", "iterations"),
    "burn": ("mcmc", "burn_in"),
    "thin": ("mcmc", "thin"),
    "lags": ("mcmc", "n_lags"),
    "factors": ("mcmc", "n_factors"),
    "seed": ("mcmc", "seed"),
    "sampler": ("mcmc", "sampler"),
    "workers": ("mcmc", "workers"),
    "smoother": ("mcmc", "smoother"),
}


class Command(BaseCommand):
    help = "Estimate the mixed-frequency VAR with factor stochastic volatility by Gibbs sampling"

    def add_arguments(self, parser):
        parser.add_argument("--config", help="INI run file with [model], [prior], [mcmc] and [io] sections")
        parser.add_argument("--data", help="Monthly panel (CSV, header row of series ids)")
        parser.add_argument("--meta", help="Series metadata (CSV)")
        parser.add_argument("--as-of", dest="as_of", help="Mask values not yet published on this date")
        parser.add_argument("--iters", type=int, help="Total number of iterations")
        parser.add_argument("--burn", type=int, help="Burn-in iterations")
        parser.add_argument("--thin", type=int, help="Keep every k-th iteration after burn-in")
        parser.add_argument("--lags", type=int, help="VAR lag order (at least 5)")
        parser.add_argument("--factors", type=int, help="Number of volatility factors")
        parser.add_argument("--seed", type=int)
        parser.add_argument("--sampler", choices=[choice for choice, _ in SamplerPolicy.CHOICES])
        parser.add_argument("--smoother", choices=[choice for choice, _ in SmootherVariant.CHOICES])
        parser.add_argument("--workers", type=int, help="Threads for the equation-by-equation regression")
        parser.add_argument("--out", help="Output root; chain k is written to <out>/chain_k")
        parser.add_argument("--chains", type=int, default=1, help="Number of independent chains (default: 1)")
        parser.add_argument("--async", dest="run_async", action="store_true", help="Dispatch chains to Celery")
        parser.add_argument("--resume", help="Continue from a checkpoint file")
        parser.add_argument("--label", default="", help="Label stored with the run records")

    def handle(self, *args, **options):
        try:
            if options["resume"]:
                runs = [self.resume(options)]
            else:
                runs = self.estimate(options)
        except (BaseValidationError, BaseNumericalError) as exc:
            logger.error("estimation failed: %s", exc)
            raise as_command_error(exc) from exc

        for run in runs:
            self.stdout.write(f"chain {run.chain}: {run.status}, {run.n_draws} draws in {run.output_dir}")
        if options["run_async"]:
            self.stdout.write(self.style.SUCCESS(f"Dispatched {len(runs)} chain(s)"))
        else:
            self.stdout.write(self.style.SUCCESS(f"Finished {len(runs)} chain(s)"))

    def resume(self, options) -> ChainRun:
        run = ChainRun.objects.create(label=options["label"] or "resumed")
        if options["run_async"]:
            run_chain.delay(run.pk, options["resume"])
            run.refresh_from_db()
        else:
            execute_run(run, resume=options["resume"])
        return run

    def estimate(self, options) -> list[ChainRun]:
        overrides = {target: options[flag] for flag, target in FLAG_FIELDS.items()}
        config = load_run_config(options["config"], overrides)
        if options["chains"] < 1:
            msg = f"--chains must be positive, got {options['chains']}"
            raise McmcConfigurationError(msg)

        dataset = None if options["run_async"] else load_dataset(config)
        runs = []
        for offset in range(options["chains"]):
            chain_config = replace(config, mcmc=replace(config.mcmc, chain=config.mcmc.chain + offset))
            payload = chain_config.to_dict()
            run = ChainRun.objects.create(
                label=options["label"],
                seed=chain_config.mcmc.seed,
                chain=chain_config.mcmc.chain,
                config=payload,
                config_hash=config_hash(payload),
                output_dir=str(GibbsController.default_output_dir(chain_config)),
            )
            if options["run_async"]:
                run_chain.delay(run.pk)
                run.refresh_from_db()
            else:
                execute_run(run, dataset)
            runs.append(run)
        return runs
