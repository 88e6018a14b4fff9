"""FastAPI application wrapping the library.

All endpoints are stateless POSTs carrying their full inputs; clients own any
file I/O.  Domain failures map to structured error bodies
``{"code": ..., "message": ...}``: 400 for malformed or unknown inputs, 422
for computations that hit the null cone or diverged numerically.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import holomorphy, network, polar, svgplot
from ..algebra import DivisionByZeroDivisor, HyperbolicNumber, format_idempotent, format_rect
from ..expressions import ParseError, evaluate
from . import schemas

API_VERSION = "0.1.0"


def _error(status: int, code: str, message: str, **extra):
    return HTTPException(status, {"code": code, "message": message, **extra})


def create_app() -> FastAPI:
    app = FastAPI(title="hyperlib", version=API_VERSION)

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(
            name="hyperlib",
            version=API_VERSION,
            functions=sorted(holomorphy.CATALOG),
        )

    @app.post("/eval", response_model=schemas.EvalResponse)
    def eval_expression(req: schemas.EvalRequest):
        try:
            z = evaluate(req.expr)
        except ParseError as exc:
            raise _error(400, "parse_error", str(exc), position=exc.position)
        except DivisionByZeroDivisor as exc:
            raise _error(
                422, "zero_divisor", str(exc),
                element_class=exc.element_class.value,
            )
        except OverflowError as exc:
            raise _error(422, "overflow", str(exc))
        c = z.to_idempotent()
        return schemas.EvalResponse(
            x=z.x, y=z.y, xi=c.xi, eta=c.eta,
            rect=format_rect(z), idempotent=format_idempotent(z),
        )

    @app.post("/polar", response_model=schemas.PolarResponse)
    def polar_form(req: schemas.PolarRequest):
        z = HyperbolicNumber(req.x, req.y)
        kind = z.classify(req.tol)
        quadrant = polar.quadrant_of(z, req.tol)
        if quadrant is polar.Quadrant.NULL_CONE:
            return schemas.PolarResponse(
                quadrant=quadrant.value, element_class=kind.value
            )
        form = polar.to_polar(z, req.tol)
        back = polar.from_polar(form)
        return schemas.PolarResponse(
            quadrant=quadrant.value,
            element_class=kind.value,
            rho=form.rho,
            theta=form.theta,
            reconstructed_x=back.x,
            reconstructed_y=back.y,
        )

    def _function(name: str) -> holomorphy.PlaneFunction:
        try:
            return holomorphy.function_by_name(name)
        except ValueError as exc:
            raise _error(400, "unknown_function", str(exc))

    @app.post("/check", response_model=schemas.CheckResponse)
    def check(req: schemas.CheckRequest):
        f = _function(req.function)
        try:
            summary = holomorphy.gcr_scan(f, req.box, req.grid, req.step, req.tol)
            wave_u, wave_v = holomorphy.wave_scan(f, req.box, req.grid, req.wave_step)
            csv = (
                holomorphy.scan_csv(f, req.box, req.grid, req.step, req.tol)
                if req.include_csv else None
            )
        except holomorphy.NonFiniteSample as exc:
            raise _error(422, "non_finite_sample", str(exc), point=list(exc.point))
        except ValueError as exc:
            raise _error(400, "invalid_argument", str(exc))
        return schemas.CheckResponse(
            function=f.name,
            kind=f.kind.value,
            box=req.box,
            grid=req.grid,
            fraction_holomorphic=summary.fraction_holomorphic,
            max_r1=summary.max_r1,
            max_r2=summary.max_r2,
            wave_max_u=wave_u,
            wave_max_v=wave_v,
            holomorphic=summary.fraction_holomorphic == 1.0,
            csv=csv,
        )

    @app.post("/scan-bounds", response_model=schemas.BoundsResponse)
    def scan_bounds(req: schemas.BoundsRequest):
        f = _function(req.function)
        try:
            report = holomorphy.bounds_scan(f, req.box, req.grid)
        except holomorphy.NonFiniteSample as exc:
            raise _error(422, "non_finite_sample", str(exc), point=list(exc.point))
        except ValueError as exc:
            raise _error(400, "invalid_argument", str(exc))
        return schemas.BoundsResponse(
            function=f.name,
            box=req.box,
            grid=req.grid,
            u_min=report.u_range[0],
            u_max=report.u_range[1],
            v_min=report.v_range[0],
            v_max=report.v_range[1],
            sup_abs=report.sup_abs,
        )

    @app.post("/train", response_model=schemas.TrainResponse)
    def train(req: schemas.TrainRequest):
        try:
            activation = network.Activation(req.activation)
        except ValueError:
            known = ", ".join(a.value for a in network.Activation)
            raise _error(
                400, "invalid_argument",
                f"unknown activation {req.activation!r} (known: {known})",
            )
        try:
            net = network.init_network(req.dims, activation, req.seed)
            data = network.dataset_from_rows(
                req.dataset, net.layers[0].in_dim, net.layers[-1].out_dim
            )
        except ValueError as exc:  # InvalidDims, DimensionMismatch, bad rows
            raise _error(400, "invalid_argument", str(exc))
        try:
            report = network.train_sgd(net, data, req.epochs, req.lr)
        except network.NonFiniteLoss as exc:
            raise _error(422, "non_finite_loss", str(exc), epoch=exc.epoch)
        return schemas.TrainResponse(
            final_loss=report.final_loss,
            epochs=report.epochs,
            loss_history=report.loss_history,
            checkpoint=schemas.Checkpoint(**network.checkpoint_dict(net)),
        )

    @app.post("/boundary", response_model=schemas.BoundaryResponse)
    def boundary(req: schemas.BoundaryRequest):
        try:
            net = network.network_from_checkpoint(req.checkpoint.model_dump())
            rows = network.decision_boundary(net, req.box, req.grid, req.threshold)
        except ValueError as exc:
            raise _error(400, "invalid_argument", str(exc))
        return schemas.BoundaryResponse(csv=network.boundary_csv(rows))

    @app.post("/plot", response_model=schemas.PlotResponse)
    def plot(req: schemas.PlotRequest):
        if (req.function is None) == (req.boundary_csv is None):
            raise _error(
                400, "invalid_argument",
                "provide exactly one of 'function' or 'boundary_csv'",
            )
        try:
            if req.function is not None:
                f = _function(req.function)
                rows = []
                for x, y in holomorphy.lattice(req.box, req.grid):
                    u, v = f(x, y)
                    rows.append((x, y, u, v))
                svg = svgplot.heatmap_svg(f.name, req.box, req.grid, rows)
            else:
                parsed = svgplot.parse_boundary_csv(req.boundary_csv)
                svg = svgplot.label_map_svg("decision boundary", parsed)
        except ValueError as exc:
            raise _error(400, "invalid_argument", str(exc))
        return schemas.PlotResponse(svg=svg)

    return app
