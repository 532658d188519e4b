from mfbvar.inherits.exceptions import BaseValidationError


class ChainTooShortError(BaseValidationError):
    pass


class ConstantChainError(BaseValidationError):
    pass


class UnknownGroupError(BaseValidationError):
    pass


class UnknownSelectorError(BaseValidationError):
    pass


class BinaryFormatError(BaseValidationError):
    pass
