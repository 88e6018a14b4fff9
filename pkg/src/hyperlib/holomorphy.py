"""Plane functions R^2 -> R^2 and numerical holomorphy verification.

A map w = u(x,y) + h*v(x,y) is holomorphic over the hyperbolic numbers when
the generalized Cauchy-Riemann conditions u_x = v_y, u_y = v_x hold (its
components then satisfy the wave equation u_xx - u_yy = 0).  The complex
analogue uses u_x = v_y, u_y = -v_x and the Laplace equation.  Both are
checked here by central finite differences, so closed-form derivatives are
never required.

The catalog carries the bounded activation functions built from the logistic
sigmoid: unlike the complex case, the hyperbolic plane admits bounded
NON-constant holomorphic maps, e.g. u = v = sigmoid(x + y).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator

from . import polar
from .algebra import HyperbolicNumber

FIRST_DIFF_STEP = 1e-5   # central first differences: truncation/roundoff balance
SECOND_DIFF_STEP = 1e-4  # second differences need a wider step
HOLO_TOL = 1e-6

Box = tuple[float, float, float, float]  # (x_min, x_max, y_min, y_max)
Grid = tuple[int, int]                   # (n_x, n_y), edges inclusive

_SIGMOID_FLOOR = math.nextafter(0.0, 1.0)
_SIGMOID_CEIL = math.nextafter(1.0, 0.0)


class NonFiniteSample(ArithmeticError):
    """A stencil or lattice evaluation produced a non-finite value."""

    def __init__(self, name: str, point: tuple[float, float]):
        self.point = point
        super().__init__(f"{name} is non-finite at {point}")


class FunctionKind(Enum):
    HYPERBOLIC = "hyperbolic"
    COMPLEX = "complex"


@dataclass(frozen=True)
class PlaneFunction:
    """A named, deterministic map (x, y) -> (u, v) with its number-system kind."""

    name: str
    kind: FunctionKind
    fn: Callable[[float, float], tuple[float, float]]

    def __call__(self, x: float, y: float) -> tuple[float, float]:
        return self.fn(x, y)


def sigmoid(t: float) -> float:
    """Logistic function 1/(1 + e^-t), confined to the open interval (0, 1).

    Where correct rounding would saturate to 0.0 or 1.0 exactly, the nearest
    interior double is returned instead; the result is always within one ulp
    of the true value and the mathematical range is preserved.
    """
    if t >= 0:
        s = 1.0 / (1.0 + math.exp(-t))
    else:
        e = math.exp(t)
        s = e / (1.0 + e)
    return min(max(s, _SIGMOID_FLOOR), _SIGMOID_CEIL)


def sigmoid_prime(t: float) -> float:
    s = sigmoid(t)
    return s * (1.0 - s)


# -- catalog -----------------------------------------------------------------


def lift_real(r: Callable[[float], float], name: str = "lift") -> PlaneFunction:
    """Lift a real activation r to the holomorphic map r(x+y) * (1 + h).

    u = v = r(x + y), so u_x = u_y = v_x = v_y = r'(x + y) and the
    generalized Cauchy-Riemann conditions hold by construction.
    """
    return PlaneFunction(name, FunctionKind.HYPERBOLIC, lambda x, y: _lifted(r, x, y))


def _lifted(r, x, y):
    w = r(x + y)
    return (w, w)


def holo_sigmoid() -> PlaneFunction:
    """u = v = sigmoid(x + y): bounded in (0, 1), non-constant, holomorphic."""
    return lift_real(sigmoid, "holo")


def logistic_idempotent() -> PlaneFunction:
    """The sigmoid applied through the idempotent decomposition.

    Evaluating the power series of 1/(1+e^-z) on z = xi*n1 + eta*n2 collapses
    to sigmoid(xi)*n1 + sigmoid(eta)*n2 because n1^k = n1, n2^k = n2 and
    n1*n2 = 0; recombining gives u = (s(xi)+s(eta))/2, v = (s(xi)-s(eta))/2.
    """

    def f(x, y):
        a, b = sigmoid(x + y), sigmoid(x - y)
        return (0.5 * (a + b), 0.5 * (a - b))

    return PlaneFunction("idem-logistic", FunctionKind.HYPERBOLIC, f)


def split_logistic() -> PlaneFunction:
    """Componentwise sigmoid u = s(x), v = s(y); not holomorphic."""
    return PlaneFunction(
        "split-logistic",
        FunctionKind.HYPERBOLIC,
        lambda x, y: (sigmoid(x), sigmoid(y)),
    )


def hyperbolic_exp_fn() -> PlaneFunction:
    """u = e^x cosh y, v = e^x sinh y; holomorphic but unbounded."""

    def f(x, y):
        try:
            w = polar.exp(HyperbolicNumber(x, y))
        except (OverflowError, ValueError):
            return (math.inf, math.inf)
        return (w.x, w.y)

    return PlaneFunction("exp", FunctionKind.HYPERBOLIC, f)


def complex_split_logistic() -> PlaneFunction:
    """Componentwise sigmoid viewed as a complex-plane split activation."""
    return PlaneFunction(
        "complex-split",
        FunctionKind.COMPLEX,
        lambda x, y: (sigmoid(x), sigmoid(y)),
    )


def complex_identity() -> PlaneFunction:
    return PlaneFunction("complex-id", FunctionKind.COMPLEX, lambda x, y: (x, y))


def complex_conjugate() -> PlaneFunction:
    return PlaneFunction("complex-conj", FunctionKind.COMPLEX, lambda x, y: (x, -y))


def complex_square() -> PlaneFunction:
    """(x + iy)^2 = x^2 - y^2 + i*2xy; both components are harmonic."""
    return PlaneFunction(
        "complex-square",
        FunctionKind.COMPLEX,
        lambda x, y: (x * x - y * y, 2.0 * x * y),
    )


CATALOG: dict[str, Callable[[], PlaneFunction]] = {
    "exp": hyperbolic_exp_fn,
    "holo": holo_sigmoid,
    "idem-logistic": logistic_idempotent,
    "split-logistic": split_logistic,
    "complex-split": complex_split_logistic,
    "complex-id": complex_identity,
    "complex-conj": complex_conjugate,
}


def function_by_name(name: str) -> PlaneFunction:
    try:
        return CATALOG[name]()
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise ValueError(f"unknown function {name!r} (known: {known})") from None


# -- pointwise checks --------------------------------------------------------


@dataclass(frozen=True)
class GcrReport:
    """Cauchy-Riemann residuals at one point.

    r1 = u_x - v_y always; r2 = u_y - v_x for hyperbolic functions and
    u_y + v_x for complex ones.  The point passes when
    max(|r1|, |r2|) <= tol * (1 + largest partial derivative magnitude).
    """

    point: tuple[float, float]
    r1: float
    r2: float
    step: float
    holomorphic: bool


def _sample(f: PlaneFunction, x: float, y: float) -> tuple[float, float]:
    u, v = f(x, y)
    if not (math.isfinite(u) and math.isfinite(v)):
        raise NonFiniteSample(f.name, (x, y))
    return u, v


def partials(
    f: PlaneFunction, p: tuple[float, float], step: float = FIRST_DIFF_STEP
) -> tuple[float, float, float, float]:
    """Central-difference (u_x, u_y, v_x, v_y) at p."""
    x, y = p
    u_e, v_e = _sample(f, x + step, y)
    u_w, v_w = _sample(f, x - step, y)
    u_n, v_n = _sample(f, x, y + step)
    u_s, v_s = _sample(f, x, y - step)
    inv = 1.0 / (2.0 * step)
    return (
        (u_e - u_w) * inv,
        (u_n - u_s) * inv,
        (v_e - v_w) * inv,
        (v_n - v_s) * inv,
    )


def gcr_check(
    f: PlaneFunction,
    p: tuple[float, float],
    step: float = FIRST_DIFF_STEP,
    tol: float = HOLO_TOL,
) -> GcrReport:
    """Residuals of the (generalized) Cauchy-Riemann conditions at p."""
    if step <= 0:
        raise ValueError("step must be positive")
    u_x, u_y, v_x, v_y = partials(f, p, step)
    r1 = u_x - v_y
    if f.kind is FunctionKind.HYPERBOLIC:
        r2 = u_y - v_x
    else:
        r2 = u_y + v_x
    grad = max(abs(u_x), abs(u_y), abs(v_x), abs(v_y))
    holo = max(abs(r1), abs(r2)) <= tol * (1.0 + grad)
    return GcrReport((p[0], p[1]), r1, r2, step, holo)


def wave_residual(
    f: PlaneFunction, p: tuple[float, float], step: float = SECOND_DIFF_STEP
) -> tuple[float, float]:
    """Second-difference residual of the kind-appropriate operator for (u, v).

    Hyperbolic: u_xx - u_yy (wave); complex: u_xx + u_yy (Laplace).
    """
    if step <= 0:
        raise ValueError("step must be positive")
    x, y = p
    u_c, v_c = _sample(f, x, y)
    u_e, v_e = _sample(f, x + step, y)
    u_w, v_w = _sample(f, x - step, y)
    u_n, v_n = _sample(f, x, y + step)
    u_s, v_s = _sample(f, x, y - step)
    inv = 1.0 / (step * step)
    u_xx = (u_e - 2.0 * u_c + u_w) * inv
    u_yy = (u_n - 2.0 * u_c + u_s) * inv
    v_xx = (v_e - 2.0 * v_c + v_w) * inv
    v_yy = (v_n - 2.0 * v_c + v_s) * inv
    sign = -1.0 if f.kind is FunctionKind.HYPERBOLIC else 1.0
    return (u_xx + sign * u_yy, v_xx + sign * v_yy)


# -- lattice scans -----------------------------------------------------------


def lattice(box: Box, grid: Grid) -> Iterator[tuple[float, float]]:
    """Row-major lattice over the box, edges inclusive; x varies slowest."""
    x_min, x_max, y_min, y_max = box
    n_x, n_y = grid
    if n_x < 2 or n_y < 2:
        raise ValueError(f"grid must be at least 2x2, got {n_x}x{n_y}")
    if not (x_min < x_max and y_min < y_max):
        raise ValueError(f"degenerate box {box}")
    dx = (x_max - x_min) / (n_x - 1)
    dy = (y_max - y_min) / (n_y - 1)
    for i in range(n_x):
        x = x_max if i == n_x - 1 else x_min + i * dx
        for j in range(n_y):
            y = y_max if j == n_y - 1 else y_min + j * dy
            yield (x, y)


@dataclass(frozen=True)
class ScanSummary:
    max_r1: float
    max_r2: float
    fraction_holomorphic: float


@dataclass(frozen=True)
class BoundsReport:
    box: Box
    grid: Grid
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    sup_abs: float


def gcr_scan(
    f: PlaneFunction,
    box: Box,
    grid: Grid,
    step: float = FIRST_DIFF_STEP,
    tol: float = HOLO_TOL,
) -> ScanSummary:
    """Aggregate gcr_check over the lattice (sequential row-major order)."""
    max_r1 = max_r2 = 0.0
    passed = total = 0
    for p in lattice(box, grid):
        rep = gcr_check(f, p, step, tol)
        max_r1 = max(max_r1, abs(rep.r1))
        max_r2 = max(max_r2, abs(rep.r2))
        passed += rep.holomorphic
        total += 1
    return ScanSummary(max_r1, max_r2, passed / total)


def wave_scan(
    f: PlaneFunction, box: Box, grid: Grid, step: float = SECOND_DIFF_STEP
) -> tuple[float, float]:
    """Max |wave or Laplace residual| of u and of v over the lattice."""
    max_u = max_v = 0.0
    for p in lattice(box, grid):
        ru, rv = wave_residual(f, p, step)
        max_u = max(max_u, abs(ru))
        max_v = max(max_v, abs(rv))
    return (max_u, max_v)


def bounds_scan(f: PlaneFunction, box: Box, grid: Grid) -> BoundsReport:
    """Exact lattice min/max of u and v, and sup of max(|u|, |v|)."""
    u_min = v_min = math.inf
    u_max = v_max = -math.inf
    sup = 0.0
    for x, y in lattice(box, grid):
        u, v = _sample(f, x, y)
        u_min, u_max = min(u_min, u), max(u_max, u)
        v_min, v_max = min(v_min, v), max(v_max, v)
        sup = max(sup, abs(u), abs(v))
    return BoundsReport(box, grid, (u_min, u_max), (v_min, v_max), sup)


def scan_csv(
    f: PlaneFunction,
    box: Box,
    grid: Grid,
    step: float = FIRST_DIFF_STEP,
    tol: float = HOLO_TOL,
) -> str:
    """Per-point residual table: x,y,u,v,r1,r2 with 17 significant digits."""
    lines = ["x,y,u,v,r1,r2"]
    for x, y in lattice(box, grid):
        u, v = _sample(f, x, y)
        rep = gcr_check(f, (x, y), step, tol)
        lines.append(
            f"{x:.17g},{y:.17g},{u:.17g},{v:.17g},{rep.r1:.17g},{rep.r2:.17g}"
        )
    return "\n".join(lines) + "\n"
