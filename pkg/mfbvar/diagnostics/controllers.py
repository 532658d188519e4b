"""
file: mfbvar/diagnostics/controllers.py
Writes every posterior summary of a stored chain as delimited text.
"""
import logging
from pathlib import Path

from mfbvar.diagnostics.constants import AggregationMode
from mfbvar.diagnostics.constants import ExportFormat
from mfbvar.diagnostics.constants import ExportSelector
from mfbvar.diagnostics.exceptions import ChainTooShortError
from mfbvar.diagnostics.exporters import export
from mfbvar.gibbs.constants import DrawName
from mfbvar.gibbs.stores import ChainStore
from mfbvar.inherits.controllers import BaseController

logger = logging.getLogger(__name__)


class DiagnosticsController(BaseController):
    """
    Usage:
        controller = DiagnosticsController.from_directory("data/chains/chain_0")
        paths = controller.run("reports/")
    """

    name = "diagnostics"

    def __init__(self, store: ChainStore, mode: str = AggregationMode.VARIANCE):
        self.store = store
        self.mode = mode

    def get_name(self):
        return f"{self.name}[chain {self.store.chain}]"

    @classmethod
    def from_directory(cls, directory, mode: str = AggregationMode.VARIANCE) -> "DiagnosticsController":
        return cls(ChainStore.load(directory), mode)

    def selectors(self) -> list[str]:
        """Summaries that make sense for this chain."""
        selectors = [ExportSelector.PI_MEAN, ExportSelector.INEFFICIENCY]
        if self.store.get(DrawName.LOADINGS).shape[-1] > 0:
            selectors += [ExportSelector.FACTOR_VOLATILITY, ExportSelector.LOADING_BOXES]
        if self.store.n_quarterly > 0:
            selectors.append(ExportSelector.GDP_VOLATILITY)
        return selectors

    def run(self, output_dir) -> dict[str, Path]:
        if self.store.n_draws == 0:
            msg = "the chain store holds no draws"
            raise ChainTooShortError(msg)
        paths = {}
        for selector in self.selectors():
            try:
                paths[selector] = export(self.store, selector, ExportFormat.CSV, output_dir, self.mode)
            except ChainTooShortError as exc:
                logger.warning("%s: skipping %s: %s", self.get_name(), selector, exc)
        logger.info("%s: wrote %d summaries to %s", self.get_name(), len(paths), output_dir)
        return paths
