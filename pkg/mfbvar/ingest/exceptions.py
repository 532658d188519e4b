from mfbvar.inherits.exceptions import BaseValidationError


class IngestValidationError(BaseValidationError):
    pass
