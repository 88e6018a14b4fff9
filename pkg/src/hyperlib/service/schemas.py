"""Request/response models for the HTTP API.

Floats round-trip exactly through JSON (shortest-decimal encoding on both
sides), so responses carry full double precision.
"""

from __future__ import annotations

from pydantic import BaseModel, Field

from ..algebra import DEFAULT_TOL
from ..holomorphy import FIRST_DIFF_STEP, HOLO_TOL, SECOND_DIFF_STEP

Box = tuple[float, float, float, float]  # x_min, x_max, y_min, y_max
GridSpec = tuple[int, int]               # n_x, n_y


class EvalRequest(BaseModel):
    expr: str


class EvalResponse(BaseModel):
    x: float
    y: float
    xi: float
    eta: float
    rect: str
    idempotent: str


class PolarRequest(BaseModel):
    x: float
    y: float
    tol: float = Field(default=DEFAULT_TOL, ge=0)


class PolarResponse(BaseModel):
    quadrant: str
    element_class: str
    rho: float | None = None
    theta: float | None = None
    reconstructed_x: float | None = None
    reconstructed_y: float | None = None


class CheckRequest(BaseModel):
    function: str
    box: Box = (-3.0, 3.0, -3.0, 3.0)
    grid: GridSpec = (31, 31)
    step: float = Field(default=FIRST_DIFF_STEP, gt=0)
    tol: float = Field(default=HOLO_TOL, ge=0)
    wave_step: float = Field(default=SECOND_DIFF_STEP, gt=0)
    include_csv: bool = False


class CheckResponse(BaseModel):
    function: str
    kind: str
    box: Box
    grid: GridSpec
    fraction_holomorphic: float
    max_r1: float
    max_r2: float
    wave_max_u: float
    wave_max_v: float
    holomorphic: bool
    csv: str | None = None


class BoundsRequest(BaseModel):
    function: str
    box: Box = (-10.0, 10.0, -10.0, 10.0)
    grid: GridSpec = (101, 101)


class BoundsResponse(BaseModel):
    function: str
    box: Box
    grid: GridSpec
    u_min: float
    u_max: float
    v_min: float
    v_max: float
    sup_abs: float


class Checkpoint(BaseModel):
    dims: list[int]
    activation: str
    seed: int
    params: list[float]


class TrainRequest(BaseModel):
    dims: list[int]
    activation: str
    seed: int = 0
    epochs: int = Field(ge=1)
    lr: float = Field(gt=0)
    dataset: list[list[float]]


class TrainResponse(BaseModel):
    final_loss: float
    epochs: int
    loss_history: list[float]
    checkpoint: Checkpoint


class BoundaryRequest(BaseModel):
    checkpoint: Checkpoint
    box: Box = (-2.0, 2.0, -2.0, 2.0)
    grid: GridSpec = (41, 41)
    threshold: float = 0.5


class BoundaryResponse(BaseModel):
    csv: str


class PlotRequest(BaseModel):
    function: str | None = None
    boundary_csv: str | None = None
    box: Box = (-3.0, 3.0, -3.0, 3.0)
    grid: GridSpec = (61, 61)


class PlotResponse(BaseModel):
    svg: str


class HealthResponse(BaseModel):
    name: str
    version: str
    functions: list[str]
