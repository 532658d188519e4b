from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError


class McmcConfigurationError(BaseValidationError):
    pass


class CheckpointError(BaseValidationError):
    pass


class BlockFailureError(BaseNumericalError):
    def __init__(self, iteration: int, block: str, checkpoint: str | None, message: str = ""):
        self.iteration = iteration
        self.block = block
        self.checkpoint = checkpoint
        where = f"iteration {iteration}, block {block}"
        saved = f" (checkpoint {checkpoint})" if checkpoint else ""
        super().__init__(f"{where} failed{saved}: {message}".rstrip(": "))
