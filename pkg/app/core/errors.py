"""
Exception hierarchy for the engine and the command layer.

Every error carries a human readable ``detail`` and the process exit code the
command layer should return when the error escapes a command.
"""

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


class EngineError(Exception):
    """Base class; mirrors the (status, detail) pair of an HTTP error."""

    exit_code: int = EXIT_USAGE

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class DomainError(EngineError):
    """An operation was called outside its mathematical domain."""


class NotPassable(DomainError):
    """A Clifford constant cannot be moved through a coordinate variable with a pure sign."""


class NotEigen(EngineError):
    """A polynomial is not a simultaneous eigenvector of the Cartan operators."""


class UsageError(EngineError):
    """Bad command line or unsupported suite parameters."""
