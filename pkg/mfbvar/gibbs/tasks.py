import logging

from celery import shared_task

from mfbvar.gibbs.configs import RunConfig
from mfbvar.gibbs.controllers import GibbsController
from mfbvar.gibbs.exceptions import BlockFailureError
from mfbvar.gibbs.exceptions import McmcConfigurationError
from mfbvar.gibbs.stores import ChainStore
from mfbvar.inherits.exceptions import BaseValidationError
from mfbvar.ingest.readers import ingest
from mfbvar.varmodel.structures import MixedFrequencyDataset

from .models import ChainRun

logger = logging.getLogger(__name__)


def load_dataset(config: RunConfig) -> MixedFrequencyDataset:
    io = config.io
    if not io.get("data") or not io.get("meta"):
        msg = "a run needs data and metadata files ([io] data, meta)"
        raise McmcConfigurationError(msg)
    return ingest(io["data"], io["meta"], io.get("as_of"), quarter_phase=config.quarter_phase)


def execute_run(run: ChainRun, dataset: MixedFrequencyDataset | None = None, resume=None) -> ChainStore:
    """Run (or resume) the chain of ``run`` and keep its record current."""
    run.mark_running()
    try:
        if resume:
            controller = GibbsController.from_checkpoint(resume, run.output_dir or None)
        else:
            config = RunConfig.from_dict(run.config)
            controller = GibbsController(config, dataset or load_dataset(config), run.output_dir or None)
        run.attach(controller.config, controller.output_dir)
        store = controller.run()
        store.save(controller.output_dir)
    except BlockFailureError as exc:
        run.mark_failed(exc, exc.checkpoint)
        raise
    except BaseValidationError as exc:
        run.mark_failed(exc)
        raise
    except Exception as exc:
        logger.exception("run %s chain %d failed", run.pk, run.chain)
        run.mark_failed(exc)
        raise
    run.mark_finished(store, controller.output_dir)
    return store


@shared_task()
def run_chain(run_id: int, resume: str | None = None) -> dict:
    """Estimate one chain of a ChainRun on a worker."""
    run = ChainRun.objects.get(pk=run_id)
    store = execute_run(run, resume=resume)
    logger.info("run %s chain %d stored %d draws", run_id, run.chain, store.n_draws)
    return {"run": run_id, "chain": run.chain, "draws": store.n_draws}
