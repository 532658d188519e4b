from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError


class DimensionMismatchError(BaseValidationError):
    pass


class AggregationLagError(BaseValidationError):
    pass


class SelectionPatternError(BaseValidationError):
    pass


class CompactFormUndefinedError(BaseValidationError):
    """Raised when there are no quarterly series to put in the state."""


class DatasetValidationError(BaseValidationError):
    pass


class NonFiniteInputError(BaseNumericalError):
    pass
