#!/usr/bin/env python3
"""
Umbral Toolkit exception hierarchy.

Every failure raised by the tools derives from UmbralError so the CLI and the
web layer can map user mistakes (exit 2 / HTTP 400) apart from contract
violations (exit 1) and internal faults.
"""

from typing import Optional


class UmbralError(Exception):
    """Root of all toolkit errors."""


class RationalParseError(UmbralError, ValueError):
    """Text is not a rational in 'p/q' or integer form."""


class TruncationMismatchError(UmbralError):
    """Operands carry different truncation orders."""


class SeriesDomainError(UmbralError):
    """A series operation got a constant term it cannot handle."""


class SequenceDegreeError(UmbralError):
    """Entry `index` of a polynomial sequence does not have degree `index`."""

    def __init__(self, index: int, degree: int):
        self.index = index
        self.degree = degree
        super().__init__(f"sequence entry {index} has degree {degree}, expected {index}")


class NotInvertibleError(UmbralError):
    """Operator is singular or does not preserve degree."""


class CommutationError(UmbralError):
    """Two operators fail to commute; `degree` is the first witness."""

    def __init__(self, degree: int, message: str = ""):
        self.degree = degree
        super().__init__(message or f"operators do not commute on x^{degree}")


class DegreeLoweringError(UmbralError):
    """Operator does not lower degree by exactly one at `degree`."""

    def __init__(self, degree: int, message: str = ""):
        self.degree = degree
        super().__init__(message or f"operator does not lower the degree of x^{degree} by one")


class PreconditionError(UmbralError):
    """A verifier precondition failed; `report` holds the failing check."""

    def __init__(self, message: str, report: Optional[object] = None):
        self.report = report
        super().__init__(message)


class FamilyError(UmbralError):
    """Unknown family, bad parameters, or a family without a stated operator."""


class CounitError(UmbralError):
    """The counit system for a comultiplication has no unique solution."""


class InternalConsistencyError(UmbralError):
    """A theorem-backed assertion failed."""
