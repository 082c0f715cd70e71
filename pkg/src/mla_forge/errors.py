"""Exception hierarchy shared across the package."""

from __future__ import annotations


class MlaForgeError(Exception):
    """Base class for all package errors."""


class ValidationError(MlaForgeError, ValueError):
    """An input object violates a structural invariant (bad table, bad map, ...)."""


class BoundExceededError(MlaForgeError):
    """A configured size bound (group order, automorphism bound) was exceeded."""


class ConditionsViolatedError(MlaForgeError):
    """Construction data failed the bracket-induction conditions.

    Carries the condition report so callers can show the witness.
    """

    def __init__(self, report):
        self.report = report
        failure = report.first_failure()
        if failure is None:
            detail = "conditions violated"
        else:
            name, status = failure
            detail = f"condition {name} fails at witness {status.witness}"
        super().__init__(detail)


class NotIdealError(MlaForgeError):
    """The designated subgroup is not an ideal of the given bracket."""


class ReconstructionMismatchError(MlaForgeError):
    """A decomposed bracket could not be reproduced from the extracted data."""
