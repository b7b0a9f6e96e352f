"""Shared exception types."""

from __future__ import annotations


class DomainError(ValueError):
    """An evaluation was requested outside an operation's domain."""


class ValidationError(ValueError):
    """A parameter set violates one of its validity conditions.

    `condition` is a stable machine-readable name of the violated condition,
    `level` tags which recursion depth raised it (the top-level family is
    level n; inner factors re-check at level n-1, ...).
    """

    def __init__(self, condition: str, message: str, level: int | None = None):
        self.condition = condition
        self.level = level
        super().__init__(message)


class NonConvergenceError(ArithmeticError):
    """A numeric scheme failed to meet its target tolerance."""


class ConditioningError(ArithmeticError):
    """Evaluation point too close to a singular locus; carries the distance."""

    def __init__(self, message: str, distance=None):
        self.distance = distance
        super().__init__(message)
