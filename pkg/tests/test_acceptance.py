"""Acceptance suite.

Each test covers one acceptance criterion at its stated tolerance and prints
one `[criterion N] ...: PASS/FAIL` line (visible with `pytest -s` or on
failure).  Eight criteria: algebra identities, zero divisors, holomorphy
fractions, boundedness + non-constancy, wave/Laplace residuals, polar round
trips, the network suite, and the CLI golden run.
"""

import functools
import json
import math
import random
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from hyperlib.algebra import (
    H,
    N1,
    N2,
    ONE,
    DivisionByZeroDivisor,
    ElementClass,
    HyperbolicNumber as Z,
)
from hyperlib import holomorphy as hl
from hyperlib import network as nw
from hyperlib import polar

from conftest import assert_close_z, norm_inf


def criterion(num, description):
    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"[criterion {num}] {description}: FAIL")
                raise
            print(f"[criterion {num}] {description}: PASS")
        return wrapper
    return decorate


# -- 1: algebra ---------------------------------------------------------------


@criterion(1, "idempotent-basis identities and product laws")
def test_algebra_suite():
    # basis identities hold exactly
    assert N1 * N1 == N1
    assert N2 * N2 == N2
    assert N1 + N2 == ONE
    assert N1 * N2 == Z(0, 0)
    assert N1.conjugate() == N2
    assert N2.conjugate() == N1
    assert N1 - N2 == H

    rng = random.Random(20450)
    for _ in range(10_000):
        a = Z(rng.uniform(-10, 10), rng.uniform(-10, 10))
        b = Z(rng.uniform(-10, 10), rng.uniform(-10, 10))
        scale = max(norm_inf(a) * norm_inf(b), 1e-12)
        # modulus multiplicativity, judged against the product magnitude
        assert abs((a * b).modulus() - a.modulus() * b.modulus()) <= 1e-10 * scale * scale
        # idempotent product isomorphism
        ca, cb, cp = a.to_idempotent(), b.to_idempotent(), (a * b).to_idempotent()
        assert abs(cp.xi - ca.xi * cb.xi) <= 1e-10 * scale
        assert abs(cp.eta - ca.eta * cb.eta) <= 1e-10 * scale


# -- 2: zero divisors ------------------------------------------------------------


@criterion(2, "cross-axis products vanish; division errs exactly off-invertibility")
def test_zero_divisor_suite():
    rng = random.Random(7711)
    for _ in range(1000):
        t = rng.uniform(0.001, 100.0) * rng.choice((1.0, -1.0))
        s = rng.uniform(0.001, 100.0) * rng.choice((1.0, -1.0))
        on_n1 = Z(t, t)     # eta = 0
        on_n2 = Z(s, -s)    # xi = 0
        assert on_n1 * on_n2 == Z(0, 0)
        assert on_n2 * on_n1 == Z(0, 0)

    for _ in range(1000):
        z = Z(rng.uniform(-5, 5), rng.uniform(-5, 5))
        w = rng.choice((
            Z(rng.uniform(-5, 5), rng.uniform(-5, 5)),
            Z(1.0, 1.0) * Z(rng.uniform(0.1, 5), 0),   # on the cone
            Z(1.0, -1.0) * Z(rng.uniform(0.1, 5), 0),
            Z(0, 0),
        ))
        invertible = w.classify() is ElementClass.INVERTIBLE
        if invertible:
            q = z / w
            assert_close_z(q * w, z, 1e-9, max(norm_inf(z), norm_inf(w), 1.0))
            assert_close_z(w * w.inverse(), ONE, 1e-12)
        else:
            with pytest.raises(DivisionByZeroDivisor):
                z / w
            with pytest.raises(DivisionByZeroDivisor):
                w.inverse()


# -- 3: holomorphy fractions --------------------------------------------------------


@criterion(3, "GCR scans: holomorphic catalog at 1.0, split below 0.1, CR dispatch")
def test_holomorphy_reproduction():
    box, grid, step, tol = (-3, 3, -3, 3), (31, 31), 1e-5, 1e-6
    holomorphic = [
        hl.hyperbolic_exp_fn(),
        hl.holo_sigmoid(),
        hl.logistic_idempotent(),
        hl.lift_real(hl.sigmoid, "lift-sigmoid"),
        hl.lift_real(math.tanh, "lift-tanh"),
    ]
    for f in holomorphic:
        frac = hl.gcr_scan(f, box, grid, step, tol).fraction_holomorphic
        assert frac == 1.0, f.name
    frac = hl.gcr_scan(hl.split_logistic(), box, grid, step, tol).fraction_holomorphic
    assert frac < 0.1

    for p in ((0.3, -0.7), (1.0, 2.0), (-1.5, 0.4)):
        assert hl.gcr_check(hl.complex_identity(), p, step, tol).holomorphic
        rep = hl.gcr_check(hl.complex_conjugate(), p, step, tol)
        assert not rep.holomorphic
        assert abs(abs(rep.r1) - 2.0) <= 1e-6


# -- 4: bounded and non-constant ------------------------------------------------------


@criterion(4, "bounded non-constant holomorphic map on [-50,50]^2")
def test_bounded_non_constant():
    f = hl.holo_sigmoid()
    rep = hl.bounds_scan(f, (-50, 50, -50, 50), (201, 201))
    assert 0.0 < rep.u_range[0] <= rep.u_range[1] < 1.0
    assert 0.0 < rep.v_range[0] <= rep.v_range[1] < 1.0
    assert rep.sup_abs < 1.0
    hi, lo = f(20, 20)[0], f(-20, -20)[0]
    assert abs(hi - lo) > 0.9999
    assert abs(hi - 1.0) <= 1e-8
    assert abs(lo - 0.0) <= 1e-8


# -- 5: wave/Laplace residuals -----------------------------------------------------------


@criterion(5, "second-difference wave/Laplace residuals below 1e-4")
def test_wave_laplace_residuals():
    probes = [(x, y) for x in (-1.0, 0.0, 1.0) for y in (-1.0, 0.0, 1.0)]
    for f in (hl.hyperbolic_exp_fn(), hl.holo_sigmoid(), hl.complex_square()):
        for p in probes:
            ru, rv = hl.wave_residual(f, p, 1e-4)
            assert abs(ru) < 1e-4 and abs(rv) < 1e-4, (f.name, p)


# -- 6: polar ------------------------------------------------------------------------------


@criterion(6, "polar round trip, polar product oracle, and the (5,3) example")
def test_polar_suite():
    rng = random.Random(60454)
    checked = 0
    while checked < 10_000:
        z = Z(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if abs(z.x * z.x - z.y * z.y) <= 1e-6:
            continue
        back = polar.from_polar(polar.to_polar(z))
        assert_close_z(back, z, 1e-12, norm_inf(z))
        checked += 1

    checked = 0
    while checked < 2_000:
        a = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        z = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if (a.classify() is not ElementClass.INVERTIBLE
                or z.classify() is not ElementClass.INVERTIBLE):
            continue
        scale = max(norm_inf(a) * norm_inf(z), 1e-12)
        assert_close_z(polar.polar_mul(a, z), a * z, 1e-10, scale)
        checked += 1

    form = polar.to_polar(Z(5, 3))
    assert form.rho == 4.0
    assert abs(form.theta - math.atanh(0.6)) < 1e-14
    assert form.quadrant is polar.Quadrant.RIGHT
    assert_close_z(polar.from_polar(form), Z(5, 3), 1e-12)


# -- 7: network ---------------------------------------------------------------------------


@criterion(7, "gradients, idempotent decoupling, AND task, boundary anti-diagonal")
def test_network_suite():
    rng = np.random.default_rng(88)

    def make_dataset(n):
        samples = []
        for _ in range(n):
            inp = [Z(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(2)]
            tgt = [Z(rng.uniform(0, 1), rng.uniform(0, 1))]
            samples.append((inp, tgt))
        return nw.Dataset(samples)

    # gradient checks for every catalog activation
    for act in (nw.Activation.HOLO_LIFT, nw.Activation.IDEMPOTENT_LOGISTIC,
                nw.Activation.SPLIT_LOGISTIC):
        net = nw.init_network([2, 2, 1], act, 3)
        assert nw.gradient_check(net, make_dataset(8), 1e-5) < 1e-5, act.value

    # decoupled-oracle forward equivalence
    net = nw.init_network([2, 3, 1], nw.Activation.IDEMPOTENT_LOGISTIC, 5)
    xi, eta = nw.decouple(net)
    for _ in range(100):
        vec = [Z(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(2)]
        out = nw.forward(net, vec)
        x_in = np.array([w.x + w.y for w in vec])
        e_in = np.array([w.x - w.y for w in vec])
        ru, rv = nw.recombine(xi.forward(x_in), eta.forward(e_in))
        assert abs(out[0].x - ru[0]) <= 1e-12
        assert abs(out[0].y - rv[0]) <= 1e-12

    # AND task within budget, plus training-trajectory equivalence
    and_data = nw.dataset_from_rows(
        [[1, 0, 1, 0, 1, 1], [1, 0, -1, 0, 0, 0],
         [-1, 0, 1, 0, 0, 0], [-1, 0, -1, 0, 0, 0]], 2, 1)
    net = nw.init_network([2, 1], nw.Activation.HOLO_LIFT, 7)
    xi, eta = nw.decouple(net)
    report = nw.train_sgd(net, and_data, 2000, 0.5)
    assert report.final_loss < 0.05
    U, V, TU, TV = nw._dataset_arrays(and_data)
    hist_xi = nw.train_real_sgd(xi, U + V, TU + TV, 2000, 0.5)
    hist_eta = nw.train_real_sgd(eta, U - V, TU - TV, 2000, 0.5)
    for h, hx, he in zip(report.loss_history, hist_xi, hist_eta):
        assert abs(h - 0.5 * (hx + he)) <= 1e-10

    # the eta channel of a lift network carries nothing
    lift_net = nw.init_network([2, 3, 1], nw.Activation.HOLO_LIFT, 21)
    for _ in range(20):
        out = nw.forward(lift_net, [Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
                                    for _ in range(2)])
        assert abs(out[0].x - out[0].y) <= 1e-14

    # unit neuron: u crosses the threshold exactly on x + y = 0
    unit = nw.init_network([1, 1], nw.Activation.HOLO_LIFT, 0)
    unit.layers[0].Wx[:] = 1.0
    unit.layers[0].Wy[:] = 0.0
    unit.layers[0].bx[:] = 0.0
    unit.layers[0].by[:] = 0.0
    rows = nw.decision_boundary(unit, (-2, 2, -2, 2), (9, 9), 0.5)
    for x, y, u, v, lu, lv in rows:
        want = 0 if x + y == 0 else (1 if x + y > 0 else -1)
        assert lu == want and lv == want
    # offset the grid so no lattice point sits on the line: adjacent points
    # straddling x + y = 0 must then flip sign
    rows = nw.decision_boundary(unit, (-2.1, 1.9, -2.1, 1.9), (9, 9), 0.5)
    by_point = {(x, y): lu for x, y, _, _, lu, _ in rows}
    assert 0 not in by_point.values()
    straddles = 0
    for (x, y), label in by_point.items():
        right = by_point.get((x + 0.5, y))
        if right is not None and (x + y) * ((x + 0.5) + y) < 0:
            assert label != right
            straddles += 1
    assert straddles > 0


# -- 8: CLI golden run -------------------------------------------------------------------


def run_cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "hyperlib", *args],
                          cwd=cwd, capture_output=True, text=True, timeout=300)


@criterion(8, "CLI golden run: exit codes, eval text, SVG sample, byte stability")
def test_cli_golden_run(tmp_path):
    assert run_cli(["check", "holo"], tmp_path).returncode == 0
    assert run_cli(["check", "split-logistic"], tmp_path).returncode == 1

    proc = run_cli(["eval", "(1+1h)*(1-1h)"], tmp_path)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "0 + 0h"

    for name in ("a.svg", "b.svg"):
        proc = run_cli(["plot", "holo", "--box", "-3", "3", "-3", "3",
                        "--grid", "61", "61", "--out", name], tmp_path)
        assert proc.returncode == 0
    first = (tmp_path / "a.svg").read_bytes()
    assert first == (tmp_path / "b.svg").read_bytes()

    root = ET.fromstring(first.decode())
    center = [r for r in root.iter("{http://www.w3.org/2000/svg}rect")
              if r.get("data-x") == "0" and r.get("data-y") == "0"
              and r.get("data-u") is not None]
    assert len(center) == 1
    assert abs(float(center[0].get("data-u")) - 0.5) <= 1e-9

    out1 = run_cli(["check", "holo"], tmp_path).stdout
    out2 = run_cli(["check", "holo"], tmp_path).stdout
    assert out1 == out2
