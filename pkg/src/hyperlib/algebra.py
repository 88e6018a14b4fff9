"""Arithmetic of hyperbolic (split-complex) numbers z = x + h*y with h*h = +1.

The plane splits along the diagonals x = +-y (the null cone) into invertible
elements and divisors of zero.  The idempotent basis n1 = (1+h)/2,
n2 = (1-h)/2 diagonalizes multiplication: in coordinates xi = x + y,
eta = x - y products act componentwise, which this module uses as its
numerical cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

#: Relative half-width of the band around the null cone treated as "on" it.
DEFAULT_TOL = 1e-12


class DivisionByZeroDivisor(ArithmeticError):
    """Raised when dividing by an element on the null cone (xi or eta zero)."""

    def __init__(self, element_class: "ElementClass"):
        self.element_class = element_class
        super().__init__(
            f"division by {element_class.describe()}: divisor lies on the "
            "null cone x*x = y*y and has no inverse"
        )


class ElementClass(Enum):
    """Multiplicative classification of a hyperbolic number.

    Elements with eta = 0 lie on the n1 axis (z = xi*n1), elements with
    xi = 0 on the n2 axis; both are divisors of zero.
    """

    ZERO = "zero"
    N1_AXIS = "n1-axis"
    N2_AXIS = "n2-axis"
    INVERTIBLE = "invertible"

    @property
    def is_zero_divisor(self) -> bool:
        return self in (ElementClass.N1_AXIS, ElementClass.N2_AXIS)

    def describe(self) -> str:
        return {
            ElementClass.ZERO: "zero",
            ElementClass.N1_AXIS: "a divisor of zero on the n1 axis",
            ElementClass.N2_AXIS: "a divisor of zero on the n2 axis",
            ElementClass.INVERTIBLE: "an invertible element",
        }[self]


@dataclass(frozen=True)
class IdempotentCoords:
    """Coordinates (xi, eta) of z in the idempotent basis {n1, n2}."""

    xi: float
    eta: float


@dataclass(frozen=True)
class HyperbolicNumber:
    """Immutable value x + h*y; components are always finite."""

    x: float
    y: float

    def __post_init__(self):
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"components must be finite, got ({self.x}, {self.y})")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "HyperbolicNumber") -> "HyperbolicNumber":
        return HyperbolicNumber(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "HyperbolicNumber") -> "HyperbolicNumber":
        return HyperbolicNumber(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "HyperbolicNumber":
        return HyperbolicNumber(-self.x, -self.y)

    def __mul__(self, other: "HyperbolicNumber") -> "HyperbolicNumber":
        # (x + hy)(x' + hy') = xx' + yy' + h(xy' + yx'), using h*h = 1.
        return HyperbolicNumber(
            self.x * other.x + self.y * other.y,
            self.x * other.y + self.y * other.x,
        )

    def __truediv__(self, other: "HyperbolicNumber") -> "HyperbolicNumber":
        return self.divide(other)

    def scale(self, s: float) -> "HyperbolicNumber":
        return HyperbolicNumber(s * self.x, s * self.y)

    def conjugate(self) -> "HyperbolicNumber":
        """x - h*y; swaps xi and eta in the idempotent basis."""
        return HyperbolicNumber(self.x, -self.y)

    def modulus(self) -> float:
        """The indefinite invariant z * conj(z) = x*x - y*y.

        Computed as (x+y)(x-y) = xi*eta, which is exact on the null cone and
        keeps the multiplicative law well conditioned near it.
        """
        return (self.x + self.y) * (self.x - self.y)

    # -- idempotent basis --------------------------------------------------

    def to_idempotent(self) -> IdempotentCoords:
        return IdempotentCoords(self.x + self.y, self.x - self.y)

    @staticmethod
    def from_idempotent(coords: IdempotentCoords) -> "HyperbolicNumber":
        return HyperbolicNumber(
            0.5 * (coords.xi + coords.eta), 0.5 * (coords.xi - coords.eta)
        )

    # -- null-cone structure -----------------------------------------------

    def classify(self, tol: float = DEFAULT_TOL) -> ElementClass:
        """Classify against the null cone, with a relative zero band.

        A coordinate c of (xi, eta) counts as zero when
        |c| <= tol * max(1, |xi|, |eta|), so large numbers near the cone are
        not misclassified.
        """
        if tol < 0:
            raise ValueError("tol must be >= 0")
        c = self.to_idempotent()
        scale = max(1.0, abs(c.xi), abs(c.eta))
        xi_zero = abs(c.xi) <= tol * scale
        eta_zero = abs(c.eta) <= tol * scale
        if xi_zero and eta_zero:
            return ElementClass.ZERO
        if eta_zero:
            return ElementClass.N1_AXIS
        if xi_zero:
            return ElementClass.N2_AXIS
        return ElementClass.INVERTIBLE

    def divide(
        self, other: "HyperbolicNumber", tol: float = DEFAULT_TOL
    ) -> "HyperbolicNumber":
        """Quotient z / w, defined only off the null cone of w.

        In idempotent coordinates the quotient is (xi/xi', eta/eta'); it does
        not exist when either coordinate of w vanishes.
        """
        kind = other.classify(tol)
        if kind is not ElementClass.INVERTIBLE:
            raise DivisionByZeroDivisor(kind)
        a, b = self.to_idempotent(), other.to_idempotent()
        return HyperbolicNumber.from_idempotent(
            IdempotentCoords(a.xi / b.xi, a.eta / b.eta)
        )

    def inverse(self, tol: float = DEFAULT_TOL) -> "HyperbolicNumber":
        return ONE.divide(self, tol)

    def __str__(self) -> str:
        return format_rect(self)


ZERO = HyperbolicNumber(0.0, 0.0)
ONE = HyperbolicNumber(1.0, 0.0)
H = HyperbolicNumber(0.0, 1.0)
N1 = HyperbolicNumber(0.5, 0.5)
N2 = HyperbolicNumber(0.5, -0.5)


def format_real(v: float) -> str:
    """Shortest decimal that round-trips to v; integral values drop the '.0'."""
    if v == 0.0:
        return "0"
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def format_rect(z: HyperbolicNumber) -> str:
    """Render as 'x + yh' (sign-folded for negative y)."""
    if z.y < 0:
        return f"{format_real(z.x)} - {format_real(-z.y)}h"
    return f"{format_real(z.x)} + {format_real(z.y)}h"


def format_idempotent(z: HyperbolicNumber) -> str:
    """Render as 'xi·n1 + eta·n2'."""
    c = z.to_idempotent()
    if c.eta < 0:
        return f"{format_real(c.xi)}·n1 - {format_real(-c.eta)}·n2"
    return f"{format_real(c.xi)}·n1 + {format_real(c.eta)}·n2"
