"""Exceptions raised across casaskit."""

from typing import Optional, Sequence


class CasasKitError(Exception):
    """Base class for all casaskit errors."""


class DomainError(CasasKitError, ValueError):
    """Input outside the domain of an operation (bad order, degree 0, zero scale)."""


class ParseError(DomainError):
    """Malformed polynomial or node text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ResourceError(CasasKitError, RuntimeError):
    """An enumeration or assignment budget was exceeded."""

    def __init__(self, message: str, cap: Optional[int] = None):
        super().__init__(message)
        self.cap = cap


class RootFindingError(CasasKitError, RuntimeError):
    """Numeric root finding did not converge within its iteration budget."""

    def __init__(self, message: str, approximations: Sequence[complex] = ()):
        super().__init__(message)
        self.approximations = tuple(approximations)
