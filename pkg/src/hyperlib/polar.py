"""Hyperbolic polar coordinates, the exponential map, and polar multiplication.

Off the null cone every z factors as s * rho * e^(h*theta) with
rho = sqrt(|x*x - y*y|) and s one of {1, -1, h, -h}, one factor per quadrant
of the plane cut by the diagonals.  Multiplication then scales rho and adds
theta (a hyperbolic rotation along the hyperbolas of constant modulus).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .algebra import DEFAULT_TOL, ElementClass, HyperbolicNumber


class OnNullCone(ArithmeticError):
    """Raised where the polar form is undefined (x*x = y*y within tolerance)."""

    def __init__(self, z: HyperbolicNumber, element_class: ElementClass):
        self.z = z
        self.element_class = element_class
        super().__init__(
            f"({z.x}, {z.y}) lies on the null cone ({element_class.value}); "
            "it has no polar form"
        )


class Quadrant(Enum):
    RIGHT = "right"    # x*x > y*y, x > 0: z =  rho e^(h theta)
    LEFT = "left"      # x*x > y*y, x < 0: z = -rho e^(h theta)
    TOP = "top"        # x*x < y*y, y > 0: z =  h rho e^(h theta)
    BOTTOM = "bottom"  # x*x < y*y, y < 0: z = -h rho e^(h theta)
    NULL_CONE = "null-cone"


# The unit in front of rho*e^(h*theta), per quadrant.
_UNIT = {
    Quadrant.RIGHT: HyperbolicNumber(1.0, 0.0),
    Quadrant.LEFT: HyperbolicNumber(-1.0, 0.0),
    Quadrant.TOP: HyperbolicNumber(0.0, 1.0),
    Quadrant.BOTTOM: HyperbolicNumber(0.0, -1.0),
}


@dataclass(frozen=True)
class PolarForm:
    rho: float
    theta: float
    quadrant: Quadrant


def quadrant_of(z: HyperbolicNumber, tol: float = DEFAULT_TOL) -> Quadrant:
    """Locate z among the four cone-bounded quadrants.

    Uses the same relative zero band as classify(), so "on the cone" means
    the same thing everywhere in the library.  Off the cone the quadrant is
    determined by the sign pattern of (xi, eta): (+,+) right, (-,-) left,
    (+,-) top, (-,+) bottom.
    """
    if z.classify(tol) is not ElementClass.INVERTIBLE:
        return Quadrant.NULL_CONE
    c = z.to_idempotent()
    if c.xi > 0:
        return Quadrant.RIGHT if c.eta > 0 else Quadrant.TOP
    return Quadrant.BOTTOM if c.eta > 0 else Quadrant.LEFT


def to_polar(z: HyperbolicNumber, tol: float = DEFAULT_TOL) -> PolarForm:
    """Polar form (rho, theta, quadrant) of a point off the null cone.

    theta equals artanh(y/x) in the right/left quadrants and artanh(x/y) in
    the top/bottom ones; both reduce to (ln|xi| - ln|eta|)/2, which stays
    accurate arbitrarily close to the cone where the artanh argument
    approaches +-1.
    """
    q = quadrant_of(z, tol)
    if q is Quadrant.NULL_CONE:
        raise OnNullCone(z, z.classify(tol))
    c = z.to_idempotent()
    rho = math.sqrt(abs(c.xi * c.eta))
    if not math.isfinite(rho):  # |xi*eta| can overflow for |z| ~ 1e154
        raise OverflowError(f"modulus of ({z.x}, {z.y}) overflows")
    theta = 0.5 * (math.log(abs(c.xi)) - math.log(abs(c.eta)))
    return PolarForm(rho, theta, q)


def from_polar(p: PolarForm) -> HyperbolicNumber:
    """Reconstruct the point s * rho * (cosh theta + h sinh theta)."""
    if p.quadrant is Quadrant.NULL_CONE:
        raise ValueError("null-cone points have no polar form to invert")
    if not p.rho > 0:
        raise ValueError(f"rho must be positive, got {p.rho}")
    base = HyperbolicNumber(p.rho * math.cosh(p.theta), p.rho * math.sinh(p.theta))
    return _UNIT[p.quadrant] * base


def exp(z: HyperbolicNumber) -> HyperbolicNumber:
    """e^z = e^x (cosh y + h sinh y).

    Raises OverflowError when either component leaves the double range.
    """
    try:
        u = math.exp(z.x) * math.cosh(z.y)
        v = math.exp(z.x) * math.sinh(z.y)
    except OverflowError:
        raise OverflowError(f"exp overflows at ({z.x}, {z.y})") from None
    if not (math.isfinite(u) and math.isfinite(v)):
        raise OverflowError(f"exp overflows at ({z.x}, {z.y})")
    return HyperbolicNumber(u, v)


def polar_mul(
    a: HyperbolicNumber, z: HyperbolicNumber, tol: float = DEFAULT_TOL
) -> HyperbolicNumber:
    """Multiply via polar forms: rho_a*rho, theta_a + theta.

    Each factor contributes its quadrant unit; the units multiply in the
    ring, so all sixteen quadrant pairings reduce to one formula.  Agrees
    with the direct product off the cone; refuses factors on it.
    """
    pa, pz = to_polar(a, tol), to_polar(z, tol)
    unit = _UNIT[pa.quadrant] * _UNIT[pz.quadrant]
    rho = pa.rho * pz.rho
    theta = pa.theta + pz.theta
    base = HyperbolicNumber(rho * math.cosh(theta), rho * math.sinh(theta))
    return unit * base
