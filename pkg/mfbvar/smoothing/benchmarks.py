"""
file: mfbvar/smoothing/benchmarks.py
Synthetic mixed-frequency data and the smoother timing harness.
"""
import configparser
import logging
import time
from dataclasses import dataclass
from dataclasses import field

import numpy as np
import pandas as pd

from mfbvar.inherits.helpers import keyed_generator
from mfbvar.smoothing.constants import MIN_REPETITIONS
from mfbvar.smoothing.constants import VARIANT_TOLERANCE
from mfbvar.smoothing.constants import SmootherVariant
from mfbvar.smoothing.controllers import SimulationSmootherController
from mfbvar.smoothing.exceptions import BenchmarkCorrectnessError
from mfbvar.smoothing.exceptions import BenchSpecError
from mfbvar.varmodel.aggregation import aggregate_path
from mfbvar.varmodel.constants import AGGREGATION_WINDOW
from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE
from mfbvar.varmodel.constants import MIN_AGGREGATION_LAGS
from mfbvar.varmodel.structures import FsvState
from mfbvar.varmodel.structures import MixedFrequencyDataset
from mfbvar.varmodel.structures import VarParameters
from mfbvar.varmodel.systems import simulate_var

logger = logging.getLogger(__name__)

STATIONARITY_BOUND = 0.95
SIMULATION_BURN_IN = 100


@dataclass
class SyntheticSystem:
    dataset: MixedFrequencyDataset
    params: VarParameters
    fsv: FsvState
    latent: np.ndarray


def random_var_parameters(
    n_monthly: int, n_quarterly: int, n_lags: int, rng: np.random.Generator,
    own_persistence: float = 0.5, cross_scale: float = 0.1,
) -> VarParameters:
    """
    Stationary VAR with Minnesota-shaped coefficients, shrunk until the
    companion spectral radius is below STATIONARITY_BOUND.
    """
    n = n_monthly + n_quarterly
    decay = 1.0 / np.arange(1, n_lags + 1) ** 2
    lags = rng.standard_normal((n_lags, n, n)) * cross_scale / np.sqrt(n) * decay[:, None, None]
    lags[0] += own_persistence * np.eye(n)
    params = VarParameters(0.1 * rng.standard_normal(n), lags, n_monthly)
    while params.spectral_radius() >= STATIONARITY_BOUND:
        params = VarParameters(params.intercept, 0.9 * params.lags, n_monthly)
    return params


def simulate_logvol(periods: int, mu, phi, sigma, rng: np.random.Generator) -> np.ndarray:
    mu, phi, sigma = (np.atleast_1d(np.asarray(value, dtype=float)) for value in (mu, phi, sigma))
    path = np.zeros((periods, mu.size))
    path[0] = mu + sigma / np.sqrt(1.0 - phi**2) * rng.standard_normal(mu.size)
    for t in range(1, periods):
        path[t] = mu + phi * (path[t - 1] - mu) + sigma * rng.standard_normal(mu.size)
    return path


def simulate_mixed_frequency(
    n_monthly: int,
    n_quarterly: int,
    n_lags: int,
    n_periods: int,
    rng: np.random.Generator,
    n_factors: int = 1,
    tail_missing=None,
    params: VarParameters | None = None,
    quarter_phase: int = DEFAULT_QUARTER_PHASE,
    loading_scale: float = 0.5,
    factor_vol_sigma: float = 0.2,
) -> SyntheticSystem:
    """
    Draw an FSV-VAR path and observe it at mixed frequency.

    ``tail_missing[j]`` is the number of trailing periods monthly series j is
    missing. ``factor_vol_sigma`` is the innovation sd of the factor
    log-volatilities. The returned FsvState holds the true paths for
    t = p .. T-1.
    """
    n = n_monthly + n_quarterly
    if params is None:
        params = random_var_parameters(n_monthly, n_quarterly, n_lags, rng)
    p = params.n_lags
    total = n_periods + SIMULATION_BURN_IN

    loadings = loading_scale * rng.standard_normal((n, n_factors))
    loadings[np.triu_indices(n, 1, n_factors)] = 0.0
    idio_mu = np.full(n, -1.0)
    idio_phi = np.full(n, 0.95)
    idio_sigma = np.full(n, 0.2)
    factor_phi = np.full(n_factors, 0.95)
    factor_sigma = np.full(n_factors, factor_vol_sigma)
    idio_logvol = simulate_logvol(total, idio_mu, idio_phi, idio_sigma, rng)
    factor_logvol = simulate_logvol(total, np.zeros(n_factors), factor_phi, factor_sigma, rng)
    factors = np.exp(factor_logvol / 2) * rng.standard_normal((total, n_factors))
    shocks = factors @ loadings.T + np.exp(idio_logvol / 2) * rng.standard_normal((total, n))
    latent = simulate_var(params, shocks, np.zeros((p, n)))[SIMULATION_BURN_IN:]

    values = np.full((n_periods, n), np.nan)
    values[:, :n_monthly] = latent[:, :n_monthly]
    aggregated = aggregate_path(latent[:, n_monthly:])
    quarter_ends = np.arange(n_periods) % 3 == quarter_phase
    quarter_ends[: AGGREGATION_WINDOW - 1] = False
    values[quarter_ends, n_monthly:] = aggregated[quarter_ends]
    if tail_missing is not None:
        for j, missing in enumerate(np.asarray(tail_missing, dtype=int)):
            if missing:
                values[n_periods - missing:, j] = np.nan

    keep = slice(SIMULATION_BURN_IN + p, total)
    fsv = FsvState(
        loadings=loadings,
        factors=factors[keep],
        idio_logvol=idio_logvol[keep],
        factor_logvol=factor_logvol[keep],
        idio_mu=idio_mu,
        idio_phi=idio_phi,
        idio_sigma=idio_sigma,
        factor_phi=factor_phi,
        factor_sigma=factor_sigma,
        start=p,
    )
    dataset = MixedFrequencyDataset(values, n_monthly, quarter_phase=quarter_phase)
    return SyntheticSystem(dataset, params, fsv, latent)


@dataclass
class BenchSpec:
    """
    Sweep definition of the smoother benchmark.

    ``snapshot_day`` places the as-of date inside the month following the
    sample: monthly series published later than that day lose one more
    trailing period.
    """

    n_vars: list[int]
    n_lags: list[int]
    variants: list[str] = field(default_factory=lambda: [choice for choice, _ in SmootherVariant.CHOICES])
    n_quarterly: int = 1
    snapshot_day: int = 15
    repetitions: int = MIN_REPETITIONS
    n_periods: int = 120
    n_factors: int = 1
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not self.n_vars or not self.n_lags or not self.variants:
            msg = "benchmark sweeps over variables, lags and variants must be nonempty"
            raise BenchSpecError(msg)
        if self.repetitions < MIN_REPETITIONS:
            msg = f"at least {MIN_REPETITIONS} repetitions are required, got {self.repetitions}"
            raise BenchSpecError(msg)
        known = {choice for choice, _ in SmootherVariant.CHOICES}
        unknown = sorted(set(self.variants) - known)
        if unknown:
            msg = f"unknown smoother variants: {', '.join(unknown)}"
            raise BenchSpecError(msg)
        if min(self.n_lags) < 1:
            msg = "lag lengths must be positive"
            raise BenchSpecError(msg)
        if min(self.n_vars) <= self.n_quarterly:
            msg = "every system needs at least one monthly variable"
            raise BenchSpecError(msg)
        if not 1 <= self.snapshot_day <= 31:
            msg = "snapshot day must lie in [1, 31]"
            raise BenchSpecError(msg)
        if self.n_periods <= 3 * max(max(self.n_lags), MIN_AGGREGATION_LAGS):
            msg = "too few periods for the longest lag length"
            raise BenchSpecError(msg)

    @classmethod
    def from_file(cls, path) -> "BenchSpec":
        """
        Read a ``[bench]`` section, list values comma separated:

            [bench]
            n_vars = 20, 34
            n_lags = 1, 5, 9, 13
            variants = companion, adaptive, adaptive-univariate
            repetitions = 3
        """
        parser = configparser.ConfigParser()
        if not parser.read(path):
            msg = f"cannot read benchmark spec {path}"
            raise BenchSpecError(msg)
        if not parser.has_section("bench"):
            msg = f"{path} has no [bench] section"
            raise BenchSpecError(msg)
        section = parser["bench"]
        lists = {"n_vars": int, "n_lags": int, "variants": str}
        scalars = {"n_quarterly", "snapshot_day", "repetitions", "n_periods", "n_factors", "seed", "workers"}
        values = {}
        for key, raw in section.items():
            if key in lists:
                values[key] = [lists[key](item.strip()) for item in raw.split(",") if item.strip()]
            elif key in scalars:
                values[key] = section.getint(key)
            else:
                msg = f"unknown benchmark setting '{key}'"
                raise BenchSpecError(msg)
        try:
            return cls(**values)
        except TypeError as exc:
            raise BenchSpecError(str(exc)) from exc

    def tail_missing(self, n_monthly: int) -> np.ndarray:
        """
        Trailing missing periods per monthly series from synthetic release
        delays (months in {1, 2}, day in [1, 28]).
        """
        rng = keyed_generator(self.seed, n_monthly, 0)
        months = rng.integers(1, 3, size=n_monthly)
        days = rng.integers(1, 29, size=n_monthly)
        return np.minimum(months - 1 + (days > self.snapshot_day), 2)


def _time_draw(controller: SimulationSmootherController, seed: int, repetitions: int) -> float:
    timings = []
    for repetition in range(repetitions):
        rng = keyed_generator(seed, repetition)
        started = time.perf_counter()
        controller.draw(rng)
        timings.append(time.perf_counter() - started)
    return float(np.median(timings))


def bench_smoothers(spec: BenchSpec) -> pd.DataFrame:
    """
    Median seconds per simulation-smoother draw for every variant x n x p.

    Before timing, every variant draws once with the same key and the draws
    are compared; a disagreement beyond VARIANT_TOLERANCE aborts with
    BenchmarkCorrectnessError.
    """
    rows = []
    for n in spec.n_vars:
        n_monthly = n - spec.n_quarterly
        for p in spec.n_lags:
            rng = keyed_generator(spec.seed, n, p)
            params = random_var_parameters(n_monthly, spec.n_quarterly, p, rng)
            # triangular aggregation needs five lags; the companion state drops the zero ones
            params = params.padded(max(p, MIN_AGGREGATION_LAGS))
            system = simulate_mixed_frequency(
                n_monthly, spec.n_quarterly, params.n_lags, spec.n_periods, rng,
                n_factors=spec.n_factors, tail_missing=spec.tail_missing(n_monthly), params=params,
            )
            controllers = {
                variant: SimulationSmootherController(system.params, system.fsv, system.dataset, variant)
                for variant in spec.variants
            }
            draws = {
                variant: controller.draw(keyed_generator(spec.seed, n, p, 1))
                for variant, controller in controllers.items()
            }
            reference = draws[spec.variants[0]]
            for variant, draw in draws.items():
                gap = float(np.max(np.abs(draw - reference)))
                if gap > VARIANT_TOLERANCE:
                    msg = f"{variant} and {spec.variants[0]} draws differ by {gap:.3e} at n={n}, p={p}"
                    raise BenchmarkCorrectnessError(msg)
            for variant, controller in controllers.items():
                seconds = _time_draw(controller, spec.seed, spec.repetitions)
                logger.info("bench n=%d p=%d %s: %.4fs", n, p, variant, seconds)
                rows.append({
                    "variant": variant,
                    "n_vars": n,
                    "n_quarterly": spec.n_quarterly,
                    "n_lags": p,
                    "seconds": seconds,
                    "repetitions": spec.repetitions,
                    "workers": spec.workers,
                })
    return pd.DataFrame(rows)
