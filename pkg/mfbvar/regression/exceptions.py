from mfbvar.inherits.exceptions import BaseNumericalError
from mfbvar.inherits.exceptions import BaseValidationError


class SamplerFailureError(BaseNumericalError):
    def __init__(self, equation: int, condition: float, message: str = ""):
        self.equation = equation
        self.condition = condition
        super().__init__(
            f"equation {equation}: posterior solve failed (condition number {condition:.3e}). {message}".strip(),
        )


class EquationSystemError(BaseValidationError):
    pass
