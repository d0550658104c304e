"""
Custom exception classes for cluster-ideals.

This module defines a hierarchy of exceptions for the different failure
modes of surface parsing, curve validation, poset construction and the
mutation oracle.
"""

from typing import Optional, Any, List


class ClusterIdealsError(Exception):
    """Base exception for all cluster-ideals errors."""

    def __init__(self, message: str, details: Optional[dict] = None, **kwargs):
        super().__init__(message)
        self.message = message
        self.details = {**(details or {}), **kwargs}

    def __str__(self) -> str:
        if self.details:
            return f"{self.message} (Details: {self.details})"
        return self.message


class SurfaceParseError(ClusterIdealsError):
    """Raised when a surface description is malformed or inconsistent."""

    def __init__(self, message: str, line: Optional[int] = None, **kwargs):
        super().__init__(message, kwargs)
        self.line = line


class ExcludedSurfaceError(SurfaceParseError):
    """Raised for surfaces outside the admissible marked-surface family."""

    def __init__(self, message: str, signature: Optional[tuple] = None, **kwargs):
        super().__init__(message, **kwargs)
        self.signature = signature


class PathParseError(ClusterIdealsError):
    """Raised when a path specification cannot be parsed or resolved."""


class PathAmbiguityError(PathParseError):
    """Raised when a crossing list admits more than one triangle walk."""

    def __init__(self, message: str, candidates: Optional[List[Any]] = None, **kwargs):
        super().__init__(message, kwargs)
        self.candidates = candidates or []


class InvalidGeodesicError(ClusterIdealsError):
    """Raised when a crossing path is not a combinatorial tagged geodesic."""

    def __init__(
        self,
        message: str,
        condition: Optional[str] = None,
        position: Optional[int] = None,
        **kwargs,
    ):
        super().__init__(message, kwargs)
        self.condition = condition
        self.position = position


class NonExactDivision(ClusterIdealsError):
    """Raised when a Laurent division leaves a remainder."""


class NonPolynomialF(ClusterIdealsError):
    """Raised when a weighted ideal sum keeps a y-denominator."""


class ChainTooShort(ClusterIdealsError):
    """Raised when an endpoint chain has fewer than two elements."""

    def __init__(self, message: str, puncture: Optional[str] = None, **kwargs):
        super().__init__(message, kwargs)
        self.puncture = puncture


class SpiralTruncationViolation(ClusterIdealsError):
    """Raised when the outermost unrolled spiral turn changes a shear coordinate."""


class OracleError(ClusterIdealsError):
    """Raised when the mutation oracle fails."""


class MultipleYFreeTerms(OracleError):
    """Raised when a principal-coefficient variable has several y-free terms."""


class SteeringStuck(OracleError):
    """Raised when no flip decreases the crossing count of the steered path."""


class BFSBudgetExceeded(OracleError):
    """Raised when the flip-graph search exhausts its node budget."""

    def __init__(self, message: str, budget: Optional[int] = None, explored: Optional[int] = None, **kwargs):
        super().__init__(message, kwargs)
        self.budget = budget
        self.explored = explored


class NotTidy(ClusterIdealsError):
    """Raised when an exchange decomposition is requested for a non-tidy pair."""


class NotExchangeable(ClusterIdealsError):
    """Raised when the arc label does not occur exactly once in the poset."""


class LiftMismatch(ClusterIdealsError):
    """Raised when a tile-cover lift disagrees with the original data."""

    def __init__(self, message: str, element: Optional[Any] = None, **kwargs):
        super().__init__(message, kwargs)
        self.element = element


class ConfigurationError(ClusterIdealsError):
    """Raised when configuration is invalid."""

    def __init__(self, message: str, setting: Optional[str] = None, **kwargs):
        super().__init__(message, kwargs)
        self.setting = setting


# Utility functions for error handling
def handle_parse_error(func):
    """Decorator turning unexpected parser failures into SurfaceParseError."""

    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ClusterIdealsError:
            # Re-raise domain errors as-is
            raise
        except Exception as e:
            raise SurfaceParseError(
                f"Unexpected error in {func.__name__}: {str(e)}",
                original_error=type(e).__name__,
            ) from e

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper


def handle_oracle_error(func):
    """Decorator turning unexpected oracle failures into OracleError."""

    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except ClusterIdealsError:
            raise
        except Exception as e:
            raise OracleError(
                f"Unexpected error in {func.__name__}: {str(e)}",
                {"original_error": type(e).__name__},
            ) from e

    wrapper.__name__ = func.__name__
    wrapper.__doc__ = func.__doc__
    return wrapper
