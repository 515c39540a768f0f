"""
weylstrata: exact computations in extended affine Weyl groups with Frobenius

Newton and Kottwitz points, (J, w, σ)-alcove elements, Deligne-Lusztig
reduction, class polynomials and the verification sweeps built on them.
"""

__version__ = "0.1.0"

from weylstrata.errors import (  # noqa: E402
    AlcoveError,
    ConfigurationError,
    ElementError,
    NewtonError,
    ReductionError,
    RootDatumError,
    WeylStrataError,
)

__all__ = [
    "AlcoveError",
    "ConfigurationError",
    "ElementError",
    "NewtonError",
    "ReductionError",
    "RootDatumError",
    "WeylStrataError",
]
