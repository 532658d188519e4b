from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError


class FilterSingularityError(BaseNumericalError):
    def __init__(self, period: int, element: int | None = None, message: str = ""):
        self.period = period
        self.element = element
        where = f"period {period}" if element is None else f"period {period}, element {element}"
        super().__init__(f"singular innovation variance at {where}. {message}".strip())


class MissingIntermediatesError(BaseValidationError):
    pass


class StateLayoutError(BaseValidationError):
    pass


class BenchmarkCorrectnessError(BaseNumericalError):
    pass


class BenchSpecError(BaseValidationError):
    pass
