"""
Exception hierarchy for the isosym toolkit.

Every error raised by the package derives from IsosymError, which is a
ValueError so callers that only know about bad-input errors still catch it.
Each class carries a stable machine-readable ``code`` used in CLI messages
and JSON error payloads.
"""

from typing import Optional


class IsosymError(ValueError):
    """
    Base class for all toolkit errors.

    Attributes:
        code (str): Stable machine-readable error code.
    """

    code = "isosym-error"

    def __init__(self, message: str, code: Optional[str] = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self) -> str:
        return f"[{self.code}] {super().__str__()}"


class DimensionMismatchError(IsosymError):
    """Operands of a binary operation have different dimensions."""

    code = "dim-mismatch"


class DimensionTooLargeError(IsosymError):
    """A result (Kronecker product, superoperator, input) exceeds its cap."""

    code = "dim-too-large"


class OrderTooLargeError(IsosymError):
    """A transform order exceeds the exact binomial guard."""

    code = "order-too-large"


class IllConditionedSplittingError(IsosymError):
    """The core-nilpotent basis cannot be separated reliably."""

    code = "ill-conditioned-splitting"


class GenerationFailedError(IsosymError):
    """A generator exhausted its seed retries without a certified instance."""

    code = "generation-failed"


class MatrixFormatError(IsosymError):
    """
    Malformed matrix or report JSON.

    Attributes:
        field (str): JSON path of the offending field, e.g. ``data[3][1]``.
    """

    code = "parse-error"

    def __init__(self, message: str, field: str = ""):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class ConfigurationError(IsosymError):
    """Invalid settings, CLI options or suite configuration."""

    code = "config-error"
