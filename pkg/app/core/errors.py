"""Exception hierarchy shared by the services, the CLI and the API."""
from typing import Optional


class WorkbenchError(Exception):
    """Base error. Carries the CLI exit code and the HTTP status used by the API."""

    exit_code: int = 1
    http_status: int = 500

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InputError(WorkbenchError):
    """Malformed operands: non-units, dimension mismatch, negative degree."""

    exit_code = 4
    http_status = 400


class FieldMismatchError(InputError):
    """Operands live over different fields."""


class ExpressionSyntaxError(InputError):
    """Parse failure at a known position of the source text."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class GeneralPositionError(InputError):
    """A tuple of vectors is not in general position."""

    def __init__(self, message: str, offending: object = None):
        super().__init__(message)
        self.offending = offending


class UnsupportedPlaceError(InputError):
    """Invalid place for a Hilbert or tame symbol."""


class SamplingError(WorkbenchError):
    """The field has too few units for the requested instance."""

    exit_code = 5
    http_status = 422


class BudgetExceededError(WorkbenchError):
    """A model build would exceed the configured size budget."""

    exit_code = 3
    http_status = 413


class UnknownSuiteError(WorkbenchError):
    """No verification suite is registered under the requested name."""

    exit_code = 2
    http_status = 404


class InvariantViolationError(WorkbenchError):
    """Internal consistency check failed. Always a bug."""

    exit_code = 1
    http_status = 500
