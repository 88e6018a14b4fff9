"""hyperlib: split-complex (hyperbolic) numbers, bounded holomorphic
activation functions, numerical holomorphy verification, and small
hyperbolic-valued neural networks."""

from .algebra import (
    DEFAULT_TOL,
    DivisionByZeroDivisor,
    ElementClass,
    HyperbolicNumber,
    IdempotentCoords,
)
from .polar import OnNullCone, PolarForm, Quadrant

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DivisionByZeroDivisor",
    "ElementClass",
    "HyperbolicNumber",
    "IdempotentCoords",
    "OnNullCone",
    "PolarForm",
    "Quadrant",
    "__version__",
]
