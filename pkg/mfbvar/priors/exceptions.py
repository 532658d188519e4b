from mfbvar.inherits.exceptions import BaseValidationError


class PriorConfigurationError(BaseValidationError):
    pass
