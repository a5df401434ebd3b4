"""Exception types shared across the solver and certification modules."""

from __future__ import annotations


class CutCoverError(Exception):
    """Base class for all package-specific errors."""


class GroundSetTooLarge(CutCoverError):
    """Ground set exceeds the exhaustive-enumeration limit."""


class Infeasible(CutCoverError):
    """Some family member is crossed by no available link."""

    def __init__(self, uncovered, message: str | None = None):
        self.uncovered = uncovered
        super().__init__(message or f"no link covers {uncovered}")


class TooManyLinks(CutCoverError):
    """Link count exceeds the exact-search limit."""


class ZeroOptimumViolation(CutCoverError):
    """Optimum cost is zero but the solver paid a positive cost."""


class WitnessSearchExhausted(CutCoverError):
    """Backtracking found no laminar witness selection; signals a defect."""


class SearchBudgetExceeded(CutCoverError):
    """Backtracking hit its node budget before finishing."""


class NotLaminar(CutCoverError):
    """A family required to be laminar contains a crossing or partially
    overlapping pair."""


class GenerationExhausted(CutCoverError):
    """Instance generation hit its retry bound without a feasible sample."""
