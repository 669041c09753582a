"""Exception types shared across the toolkit.

The CLI maps these onto its exit-code contract: inconclusive searches are
ordinary results (never exceptions), bad inputs raise ``ValueError``
subclasses, and ``InvariantViolation`` marks internal guarantees that must
never fail on valid inputs (a bug trap, not a user error).
"""

from __future__ import annotations


class SymindepError(Exception):
    """Base class for toolkit errors."""


class InvalidArgumentError(SymindepError, ValueError):
    """An argument violates an operation's preconditions."""


class SizeLimitError(SymindepError):
    """A configured budget (horizon, table size, assignment count) was exceeded."""


class UnsupportedOperationError(SymindepError):
    """The operation is not defined for this subshift kind or family kind."""


class HorizonExhaustedError(SymindepError):
    """A search ran out of room before succeeding; inconclusive, not a disproof."""

    def __init__(self, message: str, *, step: int | None = None):
        super().__init__(message)
        self.step = step


class InputTooShortError(SymindepError):
    """A finite prefix ran out before a scheduled read; carries where and when."""

    def __init__(self, message: str, *, level: int | None = None, position: int | None = None):
        super().__init__(message)
        self.level = level
        self.position = position


class InvariantViolation(SymindepError):
    """A guarantee established by the underlying mathematics failed to hold."""
