"""Exception hierarchy for the toolkit.

Everything derives from ValueError so call sites that already guard
pydantic parsing with ``except (ValidationError, ValueError)`` keep working.
"""
from __future__ import annotations


class KroneckerError(ValueError):
    """Base class for all toolkit errors."""


class InvalidPart(KroneckerError):
    """A block size (part) is smaller than 1."""


class InvalidPoint(KroneckerError):
    """A projective point string is neither 'inf' nor a rational."""


class NotSorted(KroneckerError):
    """An invariant list was expected in descending order."""


class LengthMismatch(KroneckerError):
    """Two parallel size lists have different lengths."""


class ShapeMismatch(KroneckerError):
    """Matrices that must agree in shape do not."""


class ArityMismatch(KroneckerError):
    """Wrong number of values supplied for a parameter assignment."""


class BadPrime(KroneckerError):
    """Modulus is not a usable prime, or a denominator vanishes modulo it."""


class NonSplitSpectrum(KroneckerError):
    """An invariant factor has an irreducible factor of degree >= 2 over Q."""

    def __init__(self, factor: str) -> None:
        super().__init__(f"spectrum does not split over Q: irreducible factor {factor}")
        self.factor = factor


class InternalInconsistency(KroneckerError):
    """A postcondition audit failed (should never fire on valid input)."""


class CriterionUnavailable(KroneckerError):
    """No closed-form criterion covers this pair of representation types."""


class UnstructuredBlock(KroneckerError):
    """A generic homomorphism grid contains mixed-type cells without closed form."""


class CriterionDisagreement(KroneckerError):
    """Theorem verdict and randomized oracle verdict differ."""
