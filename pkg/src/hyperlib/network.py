"""Feed-forward networks over hyperbolic numbers.

Each layer applies an affine map in the ring (weights and biases are
hyperbolic numbers) followed by a componentwise activation from the catalog.
Because multiplication diagonalizes in the idempotent basis, any network
whose activations act diagonally there is exactly equivalent to a pair of
independent real networks in the xi and eta coordinates; `decouple` builds
that pair and the test suite uses it as the training oracle.

Parameters are stored as float64 arrays (Wx, Wy, bx, by per layer); the
affine map computes the same products as HyperbolicNumber multiplication,
just batched.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import HyperbolicNumber
from .holomorphy import Box, Grid, lattice, _SIGMOID_CEIL, _SIGMOID_FLOOR


class InvalidDims(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class NotDecoupleable(ValueError):
    """The network mixes xi and eta channels (split activation)."""


class NonFiniteLoss(ArithmeticError):
    """Training diverged: loss or parameters left the finite range."""

    def __init__(self, epoch: int):
        self.epoch = epoch
        super().__init__(f"non-finite loss at epoch {epoch}")


class Activation(Enum):
    IDENTITY = "identity"
    HOLO_LIFT = "holo-lift"            # sigmoid(x+y) * (1+h), holomorphic
    IDEMPOTENT_LOGISTIC = "idem-logistic"
    SPLIT_LOGISTIC = "split-logistic"  # componentwise, not holomorphic


def _sig(t: np.ndarray) -> np.ndarray:
    """Stable logistic, kept inside the open interval (0, 1)."""
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    et = np.exp(t[~pos])
    out[~pos] = et / (1.0 + et)
    return np.clip(out, _SIGMOID_FLOOR, _SIGMOID_CEIL)


def _sig_prime(t: np.ndarray) -> np.ndarray:
    s = _sig(t)
    return s * (1.0 - s)


def _act_forward(act, AU, AV):
    if act is Activation.IDENTITY:
        return AU, AV
    if act is Activation.HOLO_LIFT:
        s = _sig(AU + AV)
        return s, s.copy()
    if act is Activation.IDEMPOTENT_LOGISTIC:
        a, b = _sig(AU + AV), _sig(AU - AV)
        return 0.5 * (a + b), 0.5 * (a - b)
    return _sig(AU), _sig(AV)  # split


def _act_backward(act, AU, AV, dU, dV):
    if act is Activation.IDENTITY:
        return dU, dV
    if act is Activation.HOLO_LIFT:
        sp = _sig_prime(AU + AV)
        g = (dU + dV) * sp
        return g, g.copy()
    if act is Activation.IDEMPOTENT_LOGISTIC:
        a = 0.5 * (_sig_prime(AU + AV) + _sig_prime(AU - AV))
        b = 0.5 * (_sig_prime(AU + AV) - _sig_prime(AU - AV))
        return dU * a + dV * b, dU * b + dV * a
    return dU * _sig_prime(AU), dV * _sig_prime(AV)  # split


@dataclass
class HyperbolicLayer:
    """Affine layer: weight (i,j) is the hyperbolic number Wx[i,j] + h*Wy[i,j]."""

    Wx: np.ndarray
    Wy: np.ndarray
    bx: np.ndarray
    by: np.ndarray
    activation: Activation

    @property
    def out_dim(self) -> int:
        return self.Wx.shape[0]

    @property
    def in_dim(self) -> int:
        return self.Wx.shape[1]


@dataclass
class HyperbolicNetwork:
    layers: list[HyperbolicLayer]
    seed: int

    @property
    def dims(self) -> list[int]:
        return [self.layers[0].in_dim] + [l.out_dim for l in self.layers]

    @property
    def activation(self) -> Activation:
        return self.layers[0].activation


@dataclass(frozen=True)
class Dataset:
    """Paired input/target vectors of hyperbolic numbers, uniform dimensions."""

    samples: list[tuple[list[HyperbolicNumber], list[HyperbolicNumber]]]

    def __post_init__(self):
        if not self.samples:
            raise ValueError("dataset is empty")
        n_in = len(self.samples[0][0])
        n_out = len(self.samples[0][1])
        for inp, tgt in self.samples:
            if len(inp) != n_in or len(tgt) != n_out:
                raise DimensionMismatch("ragged dataset")

    @property
    def n_in(self) -> int:
        return len(self.samples[0][0])

    @property
    def n_out(self) -> int:
        return len(self.samples[0][1])


@dataclass(frozen=True)
class TrainReport:
    loss_history: list[float]
    final_loss: float
    epochs: int


def init_network(
    layer_dims: Sequence[int], activation: Activation, seed: int
) -> HyperbolicNetwork:
    """Build a network with reproducible random weights and zero biases.

    Uses numpy's default PCG64 generator seeded with `seed`.  Per layer, the
    real weight components are drawn first, then the h components, each
    uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)] row-major.  Equal seeds
    give bit-identical networks.
    """
    dims = list(layer_dims)
    if len(dims) < 2 or any(d < 1 for d in dims):
        raise InvalidDims(f"need at least [in, out] with positive sizes, got {dims}")
    rng = np.random.default_rng(seed)
    layers = []
    for n_in, n_out in zip(dims[:-1], dims[1:]):
        bound = 1.0 / math.sqrt(n_in)
        Wx = rng.uniform(-bound, bound, size=(n_out, n_in))
        Wy = rng.uniform(-bound, bound, size=(n_out, n_in))
        layers.append(
            HyperbolicLayer(Wx, Wy, np.zeros(n_out), np.zeros(n_out), activation)
        )
    return HyperbolicNetwork(layers, seed)


# -- forward -----------------------------------------------------------------


def _forward_arrays(net: HyperbolicNetwork, U: np.ndarray, V: np.ndarray):
    """Batch forward pass; returns output (U, V) and the per-layer cache."""
    cache = []
    for layer in net.layers:
        AU = U @ layer.Wx.T + V @ layer.Wy.T + layer.bx
        AV = U @ layer.Wy.T + V @ layer.Wx.T + layer.by
        cache.append((U, V, AU, AV))
        U, V = _act_forward(layer.activation, AU, AV)
    return U, V, cache


def _to_arrays(vectors: Iterable[Sequence[HyperbolicNumber]]):
    vectors = list(vectors)
    U = np.array([[z.x for z in vec] for vec in vectors])
    V = np.array([[z.y for z in vec] for vec in vectors])
    return U, V


def forward(
    net: HyperbolicNetwork, inputs: Sequence[HyperbolicNumber]
) -> list[HyperbolicNumber]:
    """Apply the network to one input vector."""
    if len(inputs) != net.layers[0].in_dim:
        raise DimensionMismatch(
            f"input dimension {len(inputs)} != {net.layers[0].in_dim}"
        )
    U, V = _to_arrays([inputs])
    U, V, _ = _forward_arrays(net, U, V)
    return [HyperbolicNumber(u, v) for u, v in zip(U[0], V[0])]


def loss_mse(
    pred: Sequence[HyperbolicNumber], target: Sequence[HyperbolicNumber]
) -> float:
    """Mean over components of (du)^2 + (dv)^2.

    This is the positive-definite componentwise error, not the indefinite
    hyperbolic modulus of the difference.
    """
    if len(pred) != len(target):
        raise DimensionMismatch(f"{len(pred)} != {len(target)}")
    total = 0.0
    for p, t in zip(pred, target):
        total += (p.x - t.x) ** 2 + (p.y - t.y) ** 2
    return total / len(pred)


# -- training ----------------------------------------------------------------


def _dataset_arrays(dataset: Dataset):
    U, V = _to_arrays(inp for inp, _ in dataset.samples)
    TU, TV = _to_arrays(tgt for _, tgt in dataset.samples)
    return U, V, TU, TV


def _batch_loss(U, V, TU, TV) -> float:
    return float(np.mean((U - TU) ** 2 + (V - TV) ** 2))


def _backward(net, cache, U, V, TU, TV):
    """Gradients of the batch loss for every layer, output side first."""
    n, m = TU.shape
    dU = 2.0 * (U - TU) / (n * m)
    dV = 2.0 * (V - TV) / (n * m)
    grads = []
    for layer, (Uin, Vin, AU, AV) in zip(reversed(net.layers), reversed(cache)):
        dAU, dAV = _act_backward(layer.activation, AU, AV, dU, dV)
        dWx = dAU.T @ Uin + dAV.T @ Vin
        dWy = dAU.T @ Vin + dAV.T @ Uin
        dbx = dAU.sum(axis=0)
        dby = dAV.sum(axis=0)
        dU = dAU @ layer.Wx + dAV @ layer.Wy
        dV = dAU @ layer.Wy + dAV @ layer.Wx
        grads.append((dWx, dWy, dbx, dby))
    grads.reverse()
    return grads


def train_sgd(
    net: HyperbolicNetwork, data: Dataset, epochs: int, lr: float
) -> TrainReport:
    """Full-batch gradient descent on the componentwise MSE, in place.

    The loss history records the batch loss after each update, so
    final_loss is the loss of the returned parameters.
    """
    if epochs < 1:
        raise ValueError(f"epochs must be >= 1, got {epochs}")
    if not lr > 0:
        raise ValueError(f"lr must be positive, got {lr}")
    if data.n_in != net.layers[0].in_dim or data.n_out != net.layers[-1].out_dim:
        raise DimensionMismatch(
            f"dataset is {data.n_in}-in/{data.n_out}-out, network is "
            f"{net.layers[0].in_dim}-in/{net.layers[-1].out_dim}-out"
        )
    U0, V0, TU, TV = _dataset_arrays(data)
    history = []
    # divergence shows up as inf/nan, which the epoch check turns into an
    # error; the transient numpy overflow warnings carry no extra signal
    with np.errstate(over="ignore", invalid="ignore"):
        for epoch in range(epochs):
            U, V, cache = _forward_arrays(net, U0, V0)
            grads = _backward(net, cache, U, V, TU, TV)
            for layer, (dWx, dWy, dbx, dby) in zip(net.layers, grads):
                layer.Wx -= lr * dWx
                layer.Wy -= lr * dWy
                layer.bx -= lr * dbx
                layer.by -= lr * dby
            U, V, _ = _forward_arrays(net, U0, V0)
            loss = _batch_loss(U, V, TU, TV)
            params_finite = all(
                np.isfinite(l.Wx).all() and np.isfinite(l.Wy).all()
                and np.isfinite(l.bx).all() and np.isfinite(l.by).all()
                for l in net.layers
            )
            if not math.isfinite(loss) or not params_finite:
                raise NonFiniteLoss(epoch)
            history.append(loss)
    return TrainReport(history, history[-1], epochs)


def gradient_check(net: HyperbolicNetwork, data: Dataset, step: float = 1e-5) -> float:
    """Max relative gap between backprop and central-difference gradients.

    Relative error uses max(1, |a|, |b|) as the scale, so near-zero
    gradients are compared absolutely.
    """
    U0, V0, TU, TV = _dataset_arrays(data)
    U, V, cache = _forward_arrays(net, U0, V0)
    grads = _backward(net, cache, U, V, TU, TV)
    analytic = np.concatenate([np.concatenate([g.ravel() for g in layer_g])
                               for layer_g in grads])

    theta = get_params(net)

    def loss_at(vec):
        set_params(net, vec)
        Uo, Vo, _ = _forward_arrays(net, U0, V0)
        return _batch_loss(Uo, Vo, TU, TV)

    worst = 0.0
    try:
        for i in range(theta.size):
            bumped = theta.copy()
            bumped[i] = theta[i] + step
            hi = loss_at(bumped)
            bumped[i] = theta[i] - step
            lo = loss_at(bumped)
            fd = (hi - lo) / (2.0 * step)
            a = analytic[i]
            worst = max(worst, abs(a - fd) / max(1.0, abs(a), abs(fd)))
    finally:
        set_params(net, theta)
    return worst


def get_params(net: HyperbolicNetwork) -> np.ndarray:
    """Flat parameter vector: per layer Wx row-major, Wy row-major, bx, by."""
    parts = []
    for l in net.layers:
        parts += [l.Wx.ravel(), l.Wy.ravel(), l.bx, l.by]
    return np.concatenate(parts)


def set_params(net: HyperbolicNetwork, vec: np.ndarray) -> None:
    pos = 0
    for l in net.layers:
        for arr in (l.Wx, l.Wy, l.bx, l.by):
            n = arr.size
            arr[...] = vec[pos:pos + n].reshape(arr.shape)
            pos += n
    if pos != vec.size:
        raise DimensionMismatch(f"parameter vector has {vec.size} entries, need {pos}")


# -- idempotent decoupling ----------------------------------------------------


@dataclass(frozen=True)
class DiagonalActivation:
    name: str
    fn: Callable[[np.ndarray], np.ndarray]
    dfn: Callable[[np.ndarray], np.ndarray]


_XI_MAPS = {
    Activation.IDENTITY: DiagonalActivation(
        "identity", lambda t: t, lambda t: np.ones_like(t)),
    Activation.IDEMPOTENT_LOGISTIC: DiagonalActivation(
        "sigmoid", _sig, _sig_prime),
    Activation.HOLO_LIFT: DiagonalActivation(
        "2*sigmoid", lambda t: 2.0 * _sig(t), lambda t: 2.0 * _sig_prime(t)),
}

_ETA_MAPS = {
    Activation.IDENTITY: _XI_MAPS[Activation.IDENTITY],
    Activation.IDEMPOTENT_LOGISTIC: _XI_MAPS[Activation.IDEMPOTENT_LOGISTIC],
    # The (1+h) factor of the lift kills the eta channel entirely.
    Activation.HOLO_LIFT: DiagonalActivation(
        "zero", lambda t: np.zeros_like(t), lambda t: np.zeros_like(t)),
}


@dataclass
class RealNetwork:
    """Plain real MLP; the decoupled view of one idempotent channel."""

    weights: list[np.ndarray]
    biases: list[np.ndarray]
    activations: list[DiagonalActivation]

    def forward(self, X: np.ndarray) -> np.ndarray:
        A = np.asarray(X, dtype=float)
        for W, b, act in zip(self.weights, self.biases, self.activations):
            A = act.fn(A @ W.T + b)
        return A


def decouple(net: HyperbolicNetwork) -> tuple[RealNetwork, RealNetwork]:
    """Split into the independent xi and eta real networks.

    Valid only when every activation acts diagonally in the idempotent
    basis; the split activation mixes the channels and cannot be decoupled.
    """
    for layer in net.layers:
        if layer.activation not in _XI_MAPS:
            raise NotDecoupleable(
                f"{layer.activation.value} does not act diagonally in the "
                "idempotent basis"
            )
    xi = RealNetwork(
        [l.Wx + l.Wy for l in net.layers],
        [l.bx + l.by for l in net.layers],
        [_XI_MAPS[l.activation] for l in net.layers],
    )
    eta = RealNetwork(
        [l.Wx - l.Wy for l in net.layers],
        [l.bx - l.by for l in net.layers],
        [_ETA_MAPS[l.activation] for l in net.layers],
    )
    return xi, eta


def recombine(xi_out: np.ndarray, eta_out: np.ndarray):
    """Map (xi, eta) channel outputs back to (u, v) components."""
    return 0.5 * (xi_out + eta_out), 0.5 * (xi_out - eta_out)


def train_real_sgd(
    net: RealNetwork, X: np.ndarray, T: np.ndarray, epochs: int, lr: float
) -> list[float]:
    """Full-batch descent on mean squared error for one decoupled channel.

    With the same learning rate this reproduces, channel by channel, the
    updates of train_sgd on the parent hyperbolic network.
    """
    n, m = T.shape
    history = []
    for _ in range(epochs):
        acts = [np.asarray(X, dtype=float)]
        pre = []
        A = acts[0]
        for W, b, act in zip(net.weights, net.biases, net.activations):
            Z = A @ W.T + b
            pre.append(Z)
            A = act.fn(Z)
            acts.append(A)
        d = 2.0 * (A - T) / (n * m)
        for li in range(len(net.weights) - 1, -1, -1):
            dZ = d * net.activations[li].dfn(pre[li])
            dW = dZ.T @ acts[li]
            db = dZ.sum(axis=0)
            d = dZ @ net.weights[li]
            net.weights[li] -= lr * dW
            net.biases[li] -= lr * db
        out = net.forward(X)
        history.append(float(np.mean((out - T) ** 2)))
    return history


# -- decision boundaries -------------------------------------------------------


def decision_boundary(
    net: HyperbolicNetwork, box: Box, grid: Grid, threshold: float
) -> list[tuple[float, float, float, float, int, int]]:
    """Label each lattice point (x, y), fed as z = x + hy, against a threshold.

    Returns row-major rows (x, y, u, v, sign(u - threshold), sign(v - threshold));
    a sign of 0 marks points exactly on a boundary.
    """
    if net.layers[0].in_dim != 1 or net.layers[-1].out_dim != 1:
        raise DimensionMismatch("decision_boundary needs a 1-in/1-out network")
    points = list(lattice(box, grid))
    U = np.array([[x] for x, _ in points])
    V = np.array([[y] for _, y in points])
    OU, OV, _ = _forward_arrays(net, U, V)
    rows = []
    for (x, y), u, v in zip(points, OU[:, 0], OV[:, 0]):
        lu = int(np.sign(u - threshold))
        lv = int(np.sign(v - threshold))
        rows.append((x, y, float(u), float(v), lu, lv))
    return rows


def boundary_csv(rows) -> str:
    lines = ["x,y,u,v,label_u,label_v"]
    for x, y, u, v, lu, lv in rows:
        lines.append(f"{x:.17g},{y:.17g},{u:.17g},{v:.17g},{lu},{lv}")
    return "\n".join(lines) + "\n"


# -- serialization --------------------------------------------------------------


def checkpoint_dict(net: HyperbolicNetwork) -> dict:
    """JSON-ready snapshot: dims, activation name, seed, flat parameters.

    Parameter order matches get_params: per layer Wx row-major, Wy
    row-major, bx, by.
    """
    return {
        "dims": net.dims,
        "activation": net.activation.value,
        "seed": net.seed,
        "params": [float(p) for p in get_params(net)],
    }


def network_from_checkpoint(data: dict) -> HyperbolicNetwork:
    dims = [int(d) for d in data["dims"]]
    act = Activation(data["activation"])
    net = init_network(dims, act, int(data.get("seed", 0)))
    params = np.asarray(data["params"], dtype=float)
    expected = get_params(net).size
    if params.size != expected:
        raise DimensionMismatch(
            f"checkpoint has {params.size} parameters, dims {dims} need {expected}"
        )
    set_params(net, params)
    return net


def save_checkpoint(net: HyperbolicNetwork, path) -> None:
    with open(path, "w") as fh:
        json.dump(checkpoint_dict(net), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_checkpoint(path) -> HyperbolicNetwork:
    with open(path) as fh:
        return network_from_checkpoint(json.load(fh))


# -- dataset CSV ----------------------------------------------------------------


def dataset_to_rows(dataset: Dataset) -> list[list[float]]:
    rows = []
    for inp, tgt in dataset.samples:
        row: list[float] = []
        for z in inp:
            row += [z.x, z.y]
        for z in tgt:
            row += [z.x, z.y]
        rows.append(row)
    return rows


def dataset_from_rows(rows: Sequence[Sequence[float]], n_in: int, n_out: int) -> Dataset:
    width = 2 * (n_in + n_out)
    samples = []
    for row in rows:
        if len(row) != width:
            raise DimensionMismatch(
                f"row has {len(row)} values, {n_in}-in/{n_out}-out needs {width}"
            )
        vals = [float(v) for v in row]
        inp = [HyperbolicNumber(vals[2 * i], vals[2 * i + 1]) for i in range(n_in)]
        off = 2 * n_in
        tgt = [
            HyperbolicNumber(vals[off + 2 * i], vals[off + 2 * i + 1])
            for i in range(n_out)
        ]
        samples.append((inp, tgt))
    return Dataset(samples)


def _dataset_header(n_in: int, n_out: int) -> str:
    if n_in == 1 and n_out == 1:
        return "x,y,tu,tv"
    cols = []
    for i in range(1, n_in + 1):
        cols += [f"x{i}", f"y{i}"]
    for i in range(1, n_out + 1):
        cols += [f"tu{i}", f"tv{i}"]
    return ",".join(cols)


def dataset_to_csv(dataset: Dataset) -> str:
    lines = [_dataset_header(dataset.n_in, dataset.n_out)]
    for row in dataset_to_rows(dataset):
        lines.append(",".join(f"{v:.17g}" for v in row))
    return "\n".join(lines) + "\n"


def dataset_from_csv(text: str) -> Dataset:
    """Parse the dataset format: header x[,i],y[,i],...,tu[,i],tv[,i] rows of floats."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dataset CSV")
    header = [c.strip() for c in lines[0].split(",")]
    n_in = sum(1 for c in header if c.startswith("x"))
    n_out = sum(1 for c in header if c.startswith("tu"))
    if n_in < 1 or n_out < 1 or len(header) != 2 * (n_in + n_out):
        raise ValueError(f"malformed dataset header {lines[0]!r}")
    rows = [[float(v) for v in ln.split(",")] for ln in lines[1:]]
    return dataset_from_rows(rows, n_in, n_out)
