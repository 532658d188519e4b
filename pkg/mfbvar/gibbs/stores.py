"""
file: mfbvar/gibbs/stores.py
Append-only storage of the retained draws of one chain.
"""
import json
import logging
from collections import defaultdict
from pathlib import Path

import numpy as np

from mfbvar.gibbs.constants import DRAWS_FILE
from mfbvar.gibbs.constants import METADATA_FILE
from mfbvar.gibbs.exceptions import CheckpointError
from mfbvar.inherits.helpers import config_hash
from mfbvar.varmodel.constants import DEFAULT_QUARTER_PHASE

logger = logging.getLogger(__name__)


class ChainStore:
    """
    One record per retained draw, each tagged with its iteration index,
    plus wall-clock timings of every block for every iteration.

    On disk: ``draws.npz`` holds one array per draw name with the draw
    index on the leading axis; ``metadata.json`` holds the rest.
    """

    def __init__(
        self,
        config: dict | None = None,
        seed: int = 0,
        chain: int = 0,
        series_ids=(),
        n_monthly: int | None = None,
        quarter_phase: int = DEFAULT_QUARTER_PHASE,
        periods=(),
    ):
        self.config = config or {}
        self.seed = seed
        self.chain = chain
        self.series_ids = list(series_ids)
        self.n_monthly = len(self.series_ids) if n_monthly is None else n_monthly
        self.quarter_phase = quarter_phase
        self.periods = list(periods)
        self.iterations: list[int] = []
        self._draws: dict[str, list[np.ndarray]] = defaultdict(list)
        self.timings: list[dict[str, float]] = []
        self.acceptance: list[float] = []

    @property
    def config_hash(self) -> str:
        return config_hash(self.config)

    @property
    def n_quarterly(self) -> int:
        return len(self.series_ids) - self.n_monthly

    @property
    def n_lags(self) -> int:
        return int(self.config.get("mcmc", {}).get("n_lags", 0))

    @property
    def n_draws(self) -> int:
        return len(self.iterations)

    @property
    def names(self) -> list[str]:
        return sorted(self._draws)

    def __contains__(self, name: str) -> bool:
        return name in self._draws

    def append(self, iteration: int, draws: dict[str, np.ndarray]) -> None:
        if self.iterations and iteration <= self.iterations[-1]:
            msg = f"draw of iteration {iteration} after iteration {self.iterations[-1]}"
            raise CheckpointError(msg)
        if self._draws and set(draws) != set(self._draws):
            msg = f"draw names {sorted(draws)} differ from stored names {self.names}"
            raise CheckpointError(msg)
        self.iterations.append(iteration)
        for name, value in draws.items():
            self._draws[name].append(np.array(value, dtype=float, copy=True))

    def record_iteration(self, timings: dict[str, float], acceptance: float | None = None) -> None:
        self.timings.append(dict(timings))
        if acceptance is not None:
            self.acceptance.append(float(acceptance))

    def get(self, name: str) -> np.ndarray:
        """Stacked draws, shape (n_draws, ...)."""
        if name not in self._draws:
            msg = f"no draws named '{name}' (stored: {', '.join(self.names)})"
            raise KeyError(msg)
        return np.stack(self._draws[name])

    def block_totals(self) -> dict[str, float]:
        totals: dict[str, float] = defaultdict(float)
        for timing in self.timings:
            for block, seconds in timing.items():
                totals[block] += seconds
        return dict(totals)

    def metadata(self) -> dict:
        return {
            "config": self.config,
            "config_hash": self.config_hash,
            "seed": self.seed,
            "chain": self.chain,
            "series_ids": self.series_ids,
            "n_monthly": self.n_monthly,
            "quarter_phase": self.quarter_phase,
            "periods": self.periods,
            "iterations": self.iterations,
            "block_totals": self.block_totals(),
            "timings": self.timings,
            "phi_acceptance": self.acceptance,
        }

    def save(self, directory) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        np.savez(directory / DRAWS_FILE, **{name: self.get(name) for name in self.names})
        with open(directory / METADATA_FILE, "w") as handle:
            json.dump(self.metadata(), handle, indent=2)
        logger.info("saved %d draws of chain %d to %s", self.n_draws, self.chain, directory)
        return directory

    @classmethod
    def load(cls, directory) -> "ChainStore":
        directory = Path(directory)
        try:
            with open(directory / METADATA_FILE) as handle:
                metadata = json.load(handle)
            archive = np.load(directory / DRAWS_FILE)
        except (OSError, ValueError) as exc:
            msg = f"cannot load a chain store from {directory}: {exc}"
            raise CheckpointError(msg) from exc
        store = cls(
            metadata["config"], metadata["seed"], metadata["chain"], metadata.get("series_ids", ()),
            metadata.get("n_monthly"),
            metadata.get("quarter_phase", DEFAULT_QUARTER_PHASE),
            metadata.get("periods", ()),
        )
        store.iterations = list(metadata["iterations"])
        store.timings = list(metadata["timings"])
        store.acceptance = list(metadata.get("phi_acceptance", []))
        with archive:
            for name in archive.files:
                store._draws[name] = list(archive[name])
        return store
