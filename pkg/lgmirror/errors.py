"""Error types shared by the verification modules."""
from __future__ import annotations

from typing import Any


class LGMirrorError(Exception):
    """Base class for every error raised by the toolkit."""


class InvalidInputError(LGMirrorError, ValueError):
    """A precondition on the inputs does not hold."""


class CheckFailure(LGMirrorError):
    """A claimed identity failed to hold on exact or numerical data."""

    def __init__(self, message: str, details: dict[str, Any] | None = None):
        super().__init__(message)
        self.details = details or {}


class ConvergenceError(LGMirrorError):
    """A root solver did not reach the requested tolerance."""


class TrackingError(ConvergenceError):
    """Root continuation could not match roots after maximal refinement."""

    def __init__(self, message: str, report: dict[str, Any] | None = None):
        super().__init__(message)
        self.report = report or {}
