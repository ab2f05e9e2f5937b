#!/usr/bin/env python3
"""Exception types shared by the Laurent-coefficient modules.

The command-line front end maps these onto process status codes:
DomainError -> 1, AccuracyError -> 2, VerificationFailure -> 3.
"""

from __future__ import annotations


class LaurentError(Exception):
    """Base class for every error raised by this package."""


class DomainError(LaurentError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class CharacterValidationError(DomainError):
    """A character value table violates one of the character invariants."""

    def __init__(self, invariant: str, detail: str) -> None:
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}")


class AccuracyError(LaurentError, ArithmeticError):
    """The requested accuracy could not be certified.

    The best estimate found before giving up is kept on the exception so callers
    can still report it.
    """

    def __init__(
        self,
        message: str,
        *,
        best_estimate: complex | float | None = None,
        error_estimate: float | None = None,
        required_terms: int | None = None,
    ) -> None:
        self.best_estimate = best_estimate
        self.error_estimate = error_estimate
        self.required_terms = required_terms
        super().__init__(message)


class VerificationFailure(LaurentError):
    """A verification suite finished with failing entries."""

    def __init__(self, suite: str, failed: int, total: int) -> None:
        self.suite = suite
        self.failed = failed
        self.total = total
        super().__init__(f"suite {suite!r}: {failed} of {total} entries failed")
