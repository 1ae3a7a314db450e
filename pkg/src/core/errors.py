"""
Error hierarchy shared by every mclab module.

Each error carries a stable ``error_code`` (used in ErrorResponse documents)
and the process ``exit_code`` the command line maps it to.
"""
from typing import Any, Dict, Optional


class MclabError(Exception):
    """Base class for all expected mclab failures."""

    error_code = "MCLAB_ERROR"
    exit_code = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}


class ParseError(MclabError):
    """Input file is malformed or violates a type invariant."""

    error_code = "PARSE_ERROR"
    exit_code = 2


class BudgetExceededError(MclabError):
    """An exhaustive search ran past its check budget."""

    error_code = "BUDGET_EXCEEDED"
    exit_code = 3


class PreconditionError(MclabError):
    """An operation was called outside its domain."""

    error_code = "PRECONDITION_FAILED"
    exit_code = 4


class IndexOutOfRangeError(PreconditionError):
    error_code = "INDEX_OUT_OF_RANGE"


class NotRealizableError(PreconditionError):
    error_code = "NOT_REALIZABLE"


class EmptyClassError(PreconditionError):
    error_code = "EMPTY_CLASS"


class InvalidOrientationError(PreconditionError):
    error_code = "INVALID_ORIENTATION"


class VerificationError(MclabError):
    """A constructed object failed its own certification."""

    error_code = "VERIFICATION_FAILED"
    exit_code = 5


class CompressionError(VerificationError):
    """A compression stage could not produce a certified result."""

    error_code = "COMPRESSION_FAILED"
