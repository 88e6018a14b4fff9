"""Thin command-line client for the hyperlib service.

By default each command runs the FastAPI app in process (no daemon needed);
pass --server URL to talk to a running instance instead.  File I/O happens
on the client side only, so the service stays stateless.

Exit codes: 0 success / property holds, 1 property-check failed, 2 usage or
parse or I/O error, 3 algebraic error (division by a zero divisor),
4 numeric divergence or overflow.
"""

from __future__ import annotations

import asyncio
import json
import os
import sys
from pathlib import Path

import click
import httpx

_EXIT_BY_CODE = {
    "parse_error": 2,
    "unknown_function": 2,
    "invalid_argument": 2,
    "zero_divisor": 3,
    "overflow": 4,
    "non_finite_loss": 4,
    "non_finite_sample": 4,
}


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


class Client:
    """POSTs JSON to the service, in process or over the network."""

    def __init__(self, server: str | None):
        self.server = server

    def post(self, path: str, payload: dict) -> dict:
        if self.server is None:
            response = asyncio.run(self._post_local(path, payload))
        else:
            try:
                response = httpx.post(
                    self.server.rstrip("/") + path, json=payload, timeout=300.0
                )
            except httpx.HTTPError as exc:
                _fail(2, f"cannot reach {self.server}: {exc}")
        if response.status_code >= 400:
            self._raise_for_detail(response)
        return response.json()

    async def _post_local(self, path: str, payload: dict):
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://hyperlib.local", timeout=None
        ) as client:
            return await client.post(path, json=payload)

    @staticmethod
    def _raise_for_detail(response):
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = None
        if isinstance(detail, dict) and "code" in detail:
            code = _EXIT_BY_CODE.get(detail["code"], 2)
            _fail(code, detail.get("message", detail["code"]))
        _fail(2, f"service returned {response.status_code}: {response.text}")


def _box_option():
    return click.option(
        "--box", nargs=4, type=float, default=None, metavar="XMIN XMAX YMIN YMAX",
        help="Scan box, edges inclusive.",
    )


def _grid_option():
    return click.option(
        "--grid", nargs=2, type=int, default=None, metavar="NX NY",
        help="Lattice resolution (at least 2x2).",
    )


def _r(v: float) -> str:
    return repr(float(v))


@click.group()
@click.option("--server", metavar="URL", default=None,
              help="Base URL of a running hyperlib service; default runs in process.")
@click.pass_context
def main(ctx, server):
    """Hyperbolic-number algebra, holomorphy scans, and networks."""
    ctx.obj = Client(server)


@main.command("eval")
@click.argument("expr")
@click.pass_obj
def cmd_eval(client: Client, expr: str):
    """Evaluate an expression like '(1+1h)*(1-1h)' or 'exp(0+0h)'."""
    data = client.post("/eval", {"expr": expr})
    click.echo(data["rect"])
    click.echo(data["idempotent"])


@main.command("check")
@click.argument("function")
@_box_option()
@_grid_option()
@click.option("--step", type=float, default=None, help="First-difference step.")
@click.option("--tol", type=float, default=None, help="Residual tolerance.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None,
              help="Also write the per-point residual table here.")
@click.pass_obj
def cmd_check(client: Client, function, box, grid, step, tol, csv_path):
    """Check the (generalized) Cauchy-Riemann conditions on a lattice.

    Exits 0 when every lattice point passes, 1 otherwise.
    """
    payload = {"function": function, "include_csv": csv_path is not None}
    if box:
        payload["box"] = list(box)
    if grid:
        payload["grid"] = list(grid)
    if step is not None:
        payload["step"] = step
    if tol is not None:
        payload["tol"] = tol
    data = client.post("/check", payload)
    b, g = data["box"], data["grid"]
    click.echo(f"function: {data['function']} ({data['kind']})")
    click.echo(f"box: [{_r(b[0])}, {_r(b[1])}] x [{_r(b[2])}, {_r(b[3])}]"
               f"  grid: {g[0]}x{g[1]}")
    click.echo(f"fraction holomorphic: {_r(data['fraction_holomorphic'])}")
    click.echo(f"max |r1|: {_r(data['max_r1'])}")
    click.echo(f"max |r2|: {_r(data['max_r2'])}")
    click.echo(f"max wave/Laplace residual: u {_r(data['wave_max_u'])}"
               f"  v {_r(data['wave_max_v'])}")
    if csv_path:
        Path(csv_path).write_text(data["csv"])
        click.echo(f"residuals written to {csv_path}")
    sys.exit(0 if data["holomorphic"] else 1)


@main.command("scan-bounds")
@click.argument("function")
@_box_option()
@_grid_option()
@click.pass_obj
def cmd_scan_bounds(client: Client, function, box, grid):
    """Scan lattice min/max of the components of a catalog function."""
    payload = {"function": function}
    if box:
        payload["box"] = list(box)
    if grid:
        payload["grid"] = list(grid)
    data = client.post("/scan-bounds", payload)
    b, g = data["box"], data["grid"]
    click.echo(f"function: {data['function']}")
    click.echo(f"box: [{_r(b[0])}, {_r(b[1])}] x [{_r(b[2])}, {_r(b[3])}]"
               f"  grid: {g[0]}x{g[1]}")
    click.echo(f"u range: [{_r(data['u_min'])}, {_r(data['u_max'])}]")
    click.echo(f"v range: [{_r(data['v_min'])}, {_r(data['v_max'])}]")
    click.echo(f"sup |component|: {_r(data['sup_abs'])}")


@main.command("polar")
@click.argument("x", type=float)
@click.argument("y", type=float)
@click.option("--tol", type=float, default=None, help="Null-cone tolerance.")
@click.pass_obj
def cmd_polar(client: Client, x, y, tol):
    """Hyperbolic polar form of x + yh (the null cone is a normal outcome)."""
    payload = {"x": x, "y": y}
    if tol is not None:
        payload["tol"] = tol
    data = client.post("/polar", payload)
    if data["quadrant"] == "null-cone":
        click.echo("quadrant: null-cone")
        click.echo(f"classification: {data['element_class']}"
                   " (divisor of zero; no polar form)")
        return
    click.echo(f"quadrant: {data['quadrant']}")
    click.echo(f"rho: {_r(data['rho'])}")
    click.echo(f"theta: {_r(data['theta'])}")
    click.echo(f"reconstructed: {_r(data['reconstructed_x'])}"
               f" + {_r(data['reconstructed_y'])}h")


@main.command("train")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--epochs", type=int, default=None, help="Override config epochs.")
@click.option("--lr", type=float, default=None, help="Override config learning rate.")
@click.option("--checkpoint-out", type=click.Path(dir_okay=False), default=None)
@click.option("--loss-out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
def cmd_train(client: Client, config, epochs, lr, checkpoint_out, loss_out):
    """Train a network from a JSON config file.

    The config holds dims, activation, seed, epochs, lr and a dataset CSV
    path (relative paths resolve against the config file).  HYPERLIB_SEED in
    the environment overrides the config seed.
    """
    config_path = Path(config)
    try:
        cfg = json.loads(config_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail(2, f"cannot read config {config}: {exc}")
    missing = [k for k in ("dims", "activation", "epochs", "lr", "dataset") if k not in cfg]
    if missing:
        _fail(2, f"config {config} is missing keys: {', '.join(missing)}")
    dataset_path = Path(cfg["dataset"])
    if not dataset_path.is_absolute():
        dataset_path = config_path.parent / dataset_path
    try:
        dataset_text = dataset_path.read_text()
    except OSError as exc:
        _fail(2, f"cannot read dataset {dataset_path}: {exc}")

    from .network import dataset_from_csv, dataset_to_rows

    try:
        dataset = dataset_from_csv(dataset_text)
    except ValueError as exc:
        _fail(2, f"bad dataset {dataset_path}: {exc}")
    seed = int(os.environ.get("HYPERLIB_SEED", cfg.get("seed", 0)))
    payload = {
        "dims": cfg["dims"],
        "activation": cfg["activation"],
        "seed": seed,
        "epochs": epochs if epochs is not None else cfg["epochs"],
        "lr": lr if lr is not None else cfg["lr"],
        "dataset": dataset_to_rows(dataset),
    }
    data = client.post("/train", payload)

    ckpt_path = Path(checkpoint_out or cfg.get("checkpoint_out")
                     or config_path.with_suffix(".checkpoint.json"))
    loss_path = Path(loss_out or cfg.get("loss_out")
                     or config_path.with_suffix(".loss.csv"))
    ckpt_path.write_text(
        json.dumps(data["checkpoint"], indent=2, sort_keys=True) + "\n"
    )
    loss_lines = ["epoch,loss"]
    loss_lines += [f"{i},{v:.17g}" for i, v in enumerate(data["loss_history"])]
    loss_path.write_text("\n".join(loss_lines) + "\n")
    click.echo(f"final loss: {_r(data['final_loss'])}")
    click.echo(f"checkpoint: {ckpt_path}")
    click.echo(f"loss history: {loss_path}")


@main.command("boundary")
@click.option("--checkpoint", "checkpoint_path", required=True,
              type=click.Path(exists=True, dir_okay=False))
@_box_option()
@_grid_option()
@click.option("--threshold", type=float, default=0.5, show_default=True)
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def cmd_boundary(client: Client, checkpoint_path, box, grid, threshold, out_path):
    """Export decision-boundary labels of a trained 1-in/1-out network."""
    try:
        checkpoint = json.loads(Path(checkpoint_path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _fail(2, f"cannot read checkpoint {checkpoint_path}: {exc}")
    payload = {"checkpoint": checkpoint, "threshold": threshold}
    if box:
        payload["box"] = list(box)
    if grid:
        payload["grid"] = list(grid)
    data = client.post("/boundary", payload)
    Path(out_path).write_text(data["csv"])
    click.echo(f"boundary labels written to {out_path}")


@main.command("plot")
@click.argument("source")
@_box_option()
@_grid_option()
@click.option("--out", "out_path", required=True, type=click.Path(dir_okay=False))
@click.pass_obj
def cmd_plot(client: Client, source, box, grid, out_path):
    """Render a catalog function heatmap, or a label map from a boundary CSV."""
    payload: dict = {}
    if box:
        payload["box"] = list(box)
    if grid:
        payload["grid"] = list(grid)
    source_path = Path(source)
    if source_path.exists():
        try:
            payload["boundary_csv"] = source_path.read_text()
        except OSError as exc:
            _fail(2, f"cannot read {source}: {exc}")
    else:
        payload["function"] = source
    data = client.post("/plot", payload)
    try:
        Path(out_path).write_text(data["svg"])
    except OSError as exc:
        _fail(2, f"cannot write {out_path}: {exc}")
    click.echo(f"SVG written to {out_path}")


@main.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8476, show_default=True)
def cmd_serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
