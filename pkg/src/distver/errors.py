"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DistverError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(DistverError, ValueError):
    """Unsupported field order, infeasible ensemble parameters, bad query."""


class DomainError(DistverError, ValueError):
    """Operands outside the domain of an operation (length mismatch, 1/0, ...)."""


class ValidationError(DistverError):
    """A code object violates a structural invariant."""


class SamplingError(DistverError):
    """A randomized sampler ran out of retries."""


class InfeasibleError(DistverError):
    """Exhaustive enumeration refused because it exceeds the budget."""


class NumericalError(DistverError):
    """Root finding failed (no sign change in the search bracket)."""


class FormatError(DistverError):
    """A code file could not be parsed."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
