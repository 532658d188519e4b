"""
Base exceptions for the estimation engine

Validation errors mean the caller handed us something unusable (exit code 2 on
the command line); numerical errors mean the mathematics broke down on valid
input (exit code 3).
"""


class BaseValidationError(ValueError):
    pass


class BaseNumericalError(ArithmeticError):
    pass
