"""Exception types shared across the package."""
from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ComputationError(RuntimeError):
    """A numerical procedure failed to produce a trustworthy result.

    Carries an optional ``details`` mapping with diagnostic quantities
    (brackets, residuals, iteration counts) so callers can report what
    went wrong instead of silently receiving a bad number.
    """

    def __init__(self, message: str, details: dict | None = None):
        super().__init__(message)
        self.details = dict(details) if details else {}
