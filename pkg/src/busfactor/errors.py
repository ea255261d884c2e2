"""Exception types shared across the package."""


class BusFactorError(Exception):
    """Base class for all package errors."""


class DomainError(BusFactorError, ValueError):
    """An argument lies outside the domain of an operation."""


class NotFoundError(BusFactorError, KeyError):
    """A node or task identifier is not registered."""

    def __str__(self):
        return Exception.__str__(self)


class ParseError(BusFactorError, ValueError):
    """Malformed edge-list input."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class GenerationError(BusFactorError, RuntimeError):
    """Synthetic graph generation could not satisfy its constraints."""


class GuardError(BusFactorError, RuntimeError):
    """An exact solver refused an instance above its size guard."""
