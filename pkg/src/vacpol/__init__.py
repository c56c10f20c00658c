"""Numerical second-order vacuum polarisation toolkit."""

from .errors import (
    DomainError,
    PoleCollisionError,
    PoleError,
    QuadratureError,
    SingularInputError,
    UsageError,
    VacpolError,
)
from .minkowski import FourVector, minkowski_dot, propagator, slash, trace4
from .params import PhysicalParams

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FourVector",
    "PhysicalParams",
    "PoleCollisionError",
    "PoleError",
    "QuadratureError",
    "SingularInputError",
    "UsageError",
    "VacpolError",
    "minkowski_dot",
    "propagator",
    "slash",
    "trace4",
    "__version__",
]
