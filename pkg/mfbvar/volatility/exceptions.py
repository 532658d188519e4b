from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError


class StationarityError(BaseValidationError):
    pass


class VolatilityInputError(BaseValidationError):
    pass


class VolatilityNumericalError(BaseNumericalError):
    pass
