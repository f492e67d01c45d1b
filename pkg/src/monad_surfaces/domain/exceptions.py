"""Domain exceptions for monad-surfaces.

Mathematical rejections during a search (a rank that is off, a Betti table
of the wrong shape) are recorded as trial outcomes and never raised from the
pipelines. The exceptions below signal malformed input, exhausted budgets and
internal inconsistencies. The CLI translates them into exit status 2.
"""

from __future__ import annotations

from typing import Any


class MonadSurfacesError(Exception):
    """Base exception for all domain errors."""

    def __init__(self, message: str, code: str = "MONAD_SURFACES_ERROR") -> None:
        self.message = message
        self.code = code
        super().__init__(self.message)


# --- Field and Linear Algebra Errors ---


class FieldError(MonadSurfacesError):
    """Raised for unsupported primes, extension degrees or reducible moduli."""

    def __init__(self, message: str) -> None:
        super().__init__(message=message, code="FIELD_ERROR")


class InconsistentSystemError(MonadSurfacesError):
    """Raised when a linear system that must be solvable has no solution."""

    def __init__(self, rows: int, cols: int) -> None:
        super().__init__(
            message=f"Inconsistent {rows}x{cols} linear system",
            code="INCONSISTENT_SYSTEM",
        )


class ShapeMismatchError(MonadSurfacesError):
    """Raised when matrix shapes or module twists do not line up."""

    def __init__(self, message: str) -> None:
        super().__init__(message=message, code="SHAPE_MISMATCH")


# --- Exterior Algebra Errors ---


class DegreeOutOfRangeError(MonadSurfacesError):
    """Raised for exterior degrees outside -5..0 or inhomogeneous entries."""

    def __init__(self, degree: int, lower: int = -5, upper: int = 0) -> None:
        super().__init__(
            message=f"Degree {degree} outside [{lower}, {upper}]",
            code="DEGREE_OUT_OF_RANGE",
        )
        self.degree = degree


class ParseError(MonadSurfacesError):
    """Raised for malformed element, polynomial, matrix or class literals."""

    def __init__(self, text: str, reason: str) -> None:
        super().__init__(message=f"Cannot parse {text!r}: {reason}", code="PARSE_ERROR")
        self.text = text


class IncompleteWindowError(MonadSurfacesError):
    """Raised when a degree window cannot contain all minimal generators."""

    def __init__(self, degree: int) -> None:
        super().__init__(
            message=f"Kernel window incomplete above degree {degree}",
            code="INCOMPLETE_WINDOW",
        )


class EmptyWindowError(MonadSurfacesError):
    """Raised when a Betti window is asked for fewer than one step."""

    def __init__(self, steps: int) -> None:
        super().__init__(
            message=f"Betti window needs at least one step, got {steps}",
            code="EMPTY_WINDOW",
        )
        self.steps = steps


class UnsupportedSectionError(MonadSurfacesError):
    """Raised for section spaces H^0(Omega^i(i+k)) outside the supported range."""

    def __init__(self, i: int, k: int) -> None:
        super().__init__(
            message=f"Unsupported section space Omega^{i}({i}+{k})",
            code="UNSUPPORTED_SECTION",
        )


# --- Monad Errors ---


class WrongBettiShapeError(MonadSurfacesError):
    """Raised when a presentation does not have the required syzygy shape."""

    def __init__(self, message: str, observed: dict[str, Any]) -> None:
        super().__init__(message=message, code="WRONG_BETTI_SHAPE")
        self.observed = observed


class NotAComplexError(MonadSurfacesError):
    """Raised when B composed with A is not zero."""

    def __init__(self, nonzero_entries: int) -> None:
        super().__init__(
            message=f"B o A has {nonzero_entries} nonzero entries",
            code="NOT_A_COMPLEX",
        )


class HomologyError(MonadSurfacesError):
    """Raised when the monad homology is not an ideal sheaf of the expected type."""

    def __init__(self, message: str) -> None:
        super().__init__(message=message, code="HOMOLOGY_ERROR")


# --- Polynomial Errors ---


class NonHomogeneousError(MonadSurfacesError):
    """Raised when a polynomial routine receives an inhomogeneous generator."""

    def __init__(self, poly: str) -> None:
        super().__init__(message=f"Not homogeneous: {poly}", code="NON_HOMOGENEOUS")


class GroebnerBudgetExceededError(MonadSurfacesError):
    """Raised when a Groebner run exceeds its pair budget or degree cap."""

    def __init__(self, pairs: int, degree: int) -> None:
        super().__init__(
            message=f"Groebner budget exhausted after {pairs} pairs at degree {degree}",
            code="GROEBNER_BUDGET_EXCEEDED",
        )
        self.pairs = pairs
        self.degree = degree


class SaturationError(MonadSurfacesError):
    """Raised when no coordinate change certifies a saturation."""

    def __init__(self, message: str) -> None:
        super().__init__(message=message, code="SATURATION_FAILED")


# --- Geometry and Search Errors ---


class InfiniteIntersectionError(MonadSurfacesError):
    """Raised when the two Veronese images meet in a positive-dimensional set."""

    def __init__(self, dimension: int) -> None:
        super().__init__(
            message=f"Veronese images intersect in dimension {dimension}",
            code="INFINITE_INTERSECTION",
        )
        self.dimension = dimension


class DegenerateSampleError(MonadSurfacesError):
    """Raised when a random draw is degenerate and must be resampled."""

    def __init__(self, message: str) -> None:
        super().__init__(message=message, code="DEGENERATE_SAMPLE")


# --- Adjunction Errors ---


class NegativeMultiplicityError(MonadSurfacesError):
    """Raised when H + K has a negative exceptional multiplicity."""

    def __init__(self, index: int, value: int) -> None:
        super().__init__(
            message=f"Multiplicity of E{index + 1} becomes {value} under H + K",
            code="NEGATIVE_MULTIPLICITY",
        )


# --- Certificate Errors ---


class CertificateMismatchError(MonadSurfacesError):
    """Raised when a stored certificate field does not match its recomputation."""

    def __init__(self, message: str, details: dict[str, Any] | None = None) -> None:
        super().__init__(message=message, code="CERTIFICATE_MISMATCH")
        self.details = details or {}
