"""Shared exception types."""

from __future__ import annotations


class PawncountError(Exception):
    """Base class for all package-specific errors."""


class GuardExceeded(PawncountError):
    """A size guard was exceeded; ``hint`` names a viable alternative route."""

    def __init__(self, message: str, hint: str | None = None):
        super().__init__(message)
        self.hint = hint


class NonConverged(PawncountError):
    """Power iteration failed to converge within the iteration budget."""

    def __init__(self, message: str, iterations: int):
        super().__init__(message)
        self.iterations = iterations


class IllegalMatrix(PawncountError):
    """Matrix violates the pattern set required by an operation."""

    def __init__(self, message: str, position: tuple[int, int] | None = None,
                 pattern: str | None = None):
        super().__init__(message)
        self.position = position
        self.pattern = pattern


class InvalidTiling(PawncountError):
    """Tiling is malformed: anchor out of range or overlapping tiles."""

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


class MatrixFormatError(PawncountError, ValueError):
    """Matrix text is ragged or contains non-binary characters."""


class InvalidK(PawncountError, ValueError):
    """Diagonal run length must be at least 2."""


class NonIntegerResult(PawncountError):
    """An exact closed form failed to collapse to an integer."""


class NoFitFound(PawncountError):
    """No linear recurrence of the allowed order generates the sequence."""
