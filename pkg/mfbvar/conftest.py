import numpy as np
import pytest

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.ingest.readers import write_dataset
from mfbvar.smoothing.benchmarks import SyntheticSystem
from mfbvar.smoothing.benchmarks import simulate_mixed_frequency


@pytest.fixture(autouse=True)
def _media_storage(settings, tmpdir) -> None:
    settings.MEDIA_ROOT = tmpdir.strpath
    settings.MFBVAR = {**settings.MFBVAR, "OUTPUT_DIR": tmpdir.strpath}


@pytest.fixture
def rng() -> np.random.Generator:
    return keyed_generator(20240101)


@pytest.fixture
def small_system() -> SyntheticSystem:
    """n_m=2, n_q=1, p=5, T=30 with the first monthly series missing for two periods"""
    return simulate_mixed_frequency(
        2, 1, 5, 30, keyed_generator(7), tail_missing=[2, 0],
    )


@pytest.fixture
def balanced_system() -> SyntheticSystem:
    return simulate_mixed_frequency(3, 1, 5, 36, keyed_generator(11))


@pytest.fixture
def mixed_dataset():
    """n_m=2, n_q=1, T=72: enough quarter-ends for a full Gibbs run"""
    return simulate_mixed_frequency(2, 1, 5, 72, keyed_generator(5)).dataset


@pytest.fixture
def panel_files(tmp_path, mixed_dataset):
    return write_dataset(mixed_dataset, tmp_path / "panel.csv", tmp_path / "series.csv")
