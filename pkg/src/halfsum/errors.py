"""Shared exception types."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ResourceLimitError(RuntimeError):
    """The input is too large for the chosen evaluation method."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, never bad input."""
