"""Shared exception types for the package."""


class DdqError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DdqError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PreconditionError(DdqError, ValueError):
    """A checked precondition failed; the message names the failing condition."""


class ParseError(DdqError, ValueError):
    """Malformed textual input; carries the zero-based column of the offence."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (column {position + 1})"
        super().__init__(message)
        self.position = position


class SearchExhausted(DdqError, RuntimeError):
    """A bounded witness search finished without reaching a verdict.

    This is deliberately distinct from "no witness exists": callers must not
    treat exhaustion as a proof.
    """
