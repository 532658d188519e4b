from io import StringIO

import numpy as np
import pandas as pd
import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.smoothing.benchmarks import BenchSpec
from mfbvar.smoothing.benchmarks import bench_smoothers
from mfbvar.smoothing.benchmarks import simulate_mixed_frequency
from mfbvar.smoothing.exceptions import BenchSpecError


class TestBenchSpec:
    def test_needs_three_repetitions(self):
        with pytest.raises(BenchSpecError, match="repetitions"):
            BenchSpec(n_vars=[5], n_lags=[1], repetitions=2)

    def test_unknown_variant(self):
        with pytest.raises(BenchSpecError, match="kalman"):
            BenchSpec(n_vars=[5], n_lags=[1], variants=["kalman"])

    def test_empty_sweep(self):
        with pytest.raises(BenchSpecError):
            BenchSpec(n_vars=[], n_lags=[1])

    def test_from_file(self, tmp_path):
        path = tmp_path / "bench.ini"
        path.write_text("[bench]\nn_vars = 6, 8\nn_lags = 1,5\nvariants = adaptive\nrepetitions = 4\n")
        spec = BenchSpec.from_file(path)
        assert spec.n_vars == [6, 8]
        assert spec.n_lags == [1, 5]
        assert spec.variants == ["adaptive"]
        assert spec.repetitions == 4

    def test_unknown_setting(self, tmp_path):
        path = tmp_path / "bench.ini"
        path.write_text("[bench]\nn_vars = 6\nn_lags = 1\nthreads = 2\n")
        with pytest.raises(BenchSpecError, match="threads"):
            BenchSpec.from_file(path)

    def test_tail_missing_bounds(self):
        tail = BenchSpec(n_vars=[30], n_lags=[1], snapshot_day=1).tail_missing(29)
        assert tail.min() >= 0
        assert tail.max() <= 2


def test_synthetic_data_layout():
    system = simulate_mixed_frequency(3, 1, 5, 30, keyed_generator(0), tail_missing=[0, 1, 2])
    dataset = system.dataset
    assert dataset.balanced_end == 27
    assert not dataset.observed[:4, 3].any()
    np.testing.assert_array_equal(np.flatnonzero(dataset.observed[:, 3]), np.arange(5, 30, 3))
    assert system.fsv.start == 5
    assert system.fsv.n_periods == 25
    assert system.params.spectral_radius() < 1.0


def test_bench_table():
    spec = BenchSpec(n_vars=[4], n_lags=[1, 6], n_periods=40, repetitions=3)
    table = bench_smoothers(spec)
    assert isinstance(table, pd.DataFrame)
    assert len(table) == 2 * 3
    assert (table["seconds"] > 0).all()
    assert set(table["n_lags"]) == {1, 6}


def test_bench_command():
    out = StringIO()
    call_command("bench", "--n-vars", "4", "--lags", "5", "--periods", "40", stdout=out)
    table = pd.read_csv(StringIO(out.getvalue()))
    assert list(table["variant"]) == ["companion", "adaptive", "adaptive-univariate"]


def test_bench_command_rejects_bad_spec():
    with pytest.raises(CommandError) as excinfo:
        call_command("bench", "--n-vars", "4", "--lags", "5", "--repetitions", "1")
    assert excinfo.value.returncode == 2


@pytest.mark.slow
@pytest.mark.parametrize("n_vars", [20, 34])
def test_scaling_ordering(n_vars):
    spec = BenchSpec(n_vars=[n_vars], n_lags=[1, 13], n_periods=120, repetitions=3)
    table = bench_smoothers(spec).set_index(["variant", "n_lags"])["seconds"]
    assert table["adaptive-univariate", 13] / table["adaptive-univariate", 1] < 3.0
    assert table["companion", 13] / table["companion", 1] > 10.0
    for p in (1, 13):
        assert table["adaptive-univariate", p] < table["adaptive", p] < table["companion", p]
