import pytest
from celery.result import EagerResult

from mfbvar.gibbs.constants import DRAWS_FILE
from mfbvar.gibbs.constants import METADATA_FILE
from mfbvar.gibbs.constants import GibbsBlock
from mfbvar.gibbs.constants import RunStatus
from mfbvar.gibbs.exceptions import BlockFailureError
from mfbvar.gibbs.exceptions import McmcConfigurationError
from mfbvar.gibbs.stores import ChainStore
from mfbvar.gibbs.tasks import execute_run
from mfbvar.gibbs.tasks import load_dataset
from mfbvar.gibbs.tasks import run_chain
from mfbvar.inherits.helpers import config_hash

from .factories import ChainRunFactory
from .factories import RunConfigFactory

pytestmark = pytest.mark.django_db


def test_execute_run_records_the_chain(mixed_dataset, tmp_path):
    run = ChainRunFactory(output_dir=str(tmp_path / "chain_0"))
    store = execute_run(run, mixed_dataset)
    run.refresh_from_db()
    assert run.status == RunStatus.FINISHED
    assert run.n_draws == store.n_draws == 4
    assert set(run.block_seconds) == set(GibbsBlock.ORDER)
    assert run.config_hash == config_hash(run.config)
    assert (tmp_path / "chain_0" / DRAWS_FILE).exists()
    assert (tmp_path / "chain_0" / METADATA_FILE).exists()
    assert ChainStore.load(run.output_dir).iterations == [5, 7, 9, 11]


def test_execute_run_records_a_block_failure(mixed_dataset, tmp_path, fail_regression_at):
    fail_regression_at(7)
    run = ChainRunFactory(output_dir=str(tmp_path / "chain_0"))
    with pytest.raises(BlockFailureError):
        execute_run(run, mixed_dataset)
    run.refresh_from_db()
    assert run.status == RunStatus.FAILED
    assert "iteration 7, block regression" in run.error
    assert run.checkpoint_path.endswith("checkpoint.pkl")


def test_execute_run_records_an_unexpected_failure(mixed_dataset, tmp_path, monkeypatch):
    def full_disk(*args, **kwargs):
        raise OSError("no space left on device")

    monkeypatch.setattr(ChainStore, "save", full_disk)
    run = ChainRunFactory(output_dir=str(tmp_path / "chain_0"))
    with pytest.raises(OSError, match="no space"):
        execute_run(run, mixed_dataset)
    run.refresh_from_db()
    assert run.status == RunStatus.FAILED
    assert "no space left on device" in run.error


def test_resumed_run_finishes(mixed_dataset, tmp_path, fail_regression_at, monkeypatch):
    fail_regression_at(7)
    failed = ChainRunFactory(output_dir=str(tmp_path / "chain_0"))
    with pytest.raises(BlockFailureError):
        execute_run(failed, mixed_dataset)
    monkeypatch.undo()

    resumed = ChainRunFactory(label="resumed", output_dir="")
    execute_run(resumed, resume=failed.checkpoint_path)
    resumed.refresh_from_db()
    assert resumed.status == RunStatus.FINISHED
    assert resumed.n_draws == 4
    assert resumed.output_dir == str(tmp_path / "chain_0")


def test_run_chain_task_reads_the_panel(settings, panel_files, tmp_path):
    settings.CELERY_TASK_ALWAYS_EAGER = True
    data, meta = panel_files
    config = RunConfigFactory(io={"data": str(data), "meta": str(meta), "out": str(tmp_path / "out")})
    run = ChainRunFactory(config=config.to_dict())
    task_result = run_chain.delay(run.pk)
    assert isinstance(task_result, EagerResult)
    run.refresh_from_db()
    assert task_result.result == {"run": run.pk, "chain": 0, "draws": 4}
    assert run.status == RunStatus.FINISHED
    assert run.output_dir == str(tmp_path / "out" / "chain_0")


def test_load_dataset_needs_both_files():
    with pytest.raises(McmcConfigurationError):
        load_dataset(RunConfigFactory(io={"data": "panel.csv"}))
