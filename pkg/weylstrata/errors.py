"""
Exceptions for the weylstrata engine
"""


class WeylStrataError(Exception):
    """Base class for all errors raised by weylstrata."""


class RootDatumError(WeylStrataError, ValueError):
    """Unknown Cartan type, invalid lattice choice or invalid diagram automorphism."""


class ElementError(WeylStrataError, ValueError):
    """Malformed element literal or elements of different groups."""


class NewtonError(WeylStrataError):
    """A σ-twisted power did not become a translation within the bound."""


class AlcoveError(WeylStrataError, ValueError):
    """Invalid (J, w) input for alcove detection."""


class ReductionError(WeylStrataError):
    """Inconsistent Deligne-Lusztig reduction state."""

    def __init__(self, message: str, details=None):
        super().__init__(message)
        self.details = details


class ConfigurationError(WeylStrataError, ValueError):
    """Invalid sweep configuration."""
