import math
import random

import pytest

from hyperlib.algebra import ElementClass, HyperbolicNumber as Z, ONE
from hyperlib.polar import (
    OnNullCone,
    PolarForm,
    Quadrant,
    exp,
    from_polar,
    polar_mul,
    quadrant_of,
    to_polar,
)

from conftest import assert_close_z, norm_inf


def test_quadrant_examples():
    assert quadrant_of(Z(2, 1)) is Quadrant.RIGHT
    assert quadrant_of(Z(-2, 1)) is Quadrant.LEFT
    assert quadrant_of(Z(1, 3)) is Quadrant.TOP
    assert quadrant_of(Z(1, -3)) is Quadrant.BOTTOM
    assert quadrant_of(Z(1, 1)) is Quadrant.NULL_CONE
    assert quadrant_of(Z(0, 0)) is Quadrant.NULL_CONE


def test_to_polar_positive_real_axis():
    p = to_polar(Z(2, 0))
    assert p == PolarForm(2.0, 0.0, Quadrant.RIGHT)


def test_to_polar_reference_point():
    # rho = sqrt(25 - 9) = 4, theta = artanh(3/5)
    p = to_polar(Z(5, 3))
    assert p.rho == 4.0
    assert abs(p.theta - math.atanh(0.6)) < 1e-14
    assert p.quadrant is Quadrant.RIGHT
    assert_close_z(from_polar(p), Z(5, 3), 1e-12)


def test_to_polar_rejects_null_cone():
    with pytest.raises(OnNullCone) as exc:
        to_polar(Z(1, 1))
    assert exc.value.element_class is ElementClass.N1_AXIS


def test_from_polar_units():
    assert from_polar(PolarForm(1, 0, Quadrant.RIGHT)) == ONE
    assert from_polar(PolarForm(1, 0, Quadrant.TOP)) == Z(0, 1)
    assert from_polar(PolarForm(2, 0, Quadrant.LEFT)) == Z(-2, 0)
    assert from_polar(PolarForm(1, 0, Quadrant.BOTTOM)) == Z(0, -1)


def test_from_polar_inverts_reference_point():
    z = from_polar(PolarForm(4.0, math.atanh(0.6), Quadrant.RIGHT))
    assert_close_z(z, Z(5, 3), 1e-12)
    back = to_polar(z)
    assert abs(back.rho - 4.0) <= 1e-12 * 4.0
    assert abs(back.theta - math.atanh(0.6)) < 1e-12


def test_from_polar_validation():
    with pytest.raises(ValueError):
        from_polar(PolarForm(1.0, 0.0, Quadrant.NULL_CONE))
    with pytest.raises(ValueError):
        from_polar(PolarForm(0.0, 1.0, Quadrant.RIGHT))
    with pytest.raises(ValueError):
        from_polar(PolarForm(-2.0, 1.0, Quadrant.RIGHT))


def test_round_trip_all_quadrants():
    for z in (Z(5, 3), Z(-5, 3), Z(3, 5), Z(3, -5), Z(-0.1, 7), Z(2, -1e-3)):
        p = to_polar(z)
        assert_close_z(from_polar(p), z, 1e-12)


def test_round_trip_random_off_cone():
    rng = random.Random(1234)
    checked = 0
    while checked < 10_000:
        z = Z(rng.uniform(-10, 10), rng.uniform(-10, 10))
        if abs(z.x * z.x - z.y * z.y) <= 1e-6:
            continue
        back = from_polar(to_polar(z))
        assert_close_z(back, z, 1e-12, norm_inf(z))
        checked += 1


# -- exponential ---------------------------------------------------------------


def test_exp_examples():
    assert exp(Z(0, 0)) == ONE
    w = exp(Z(0, math.log(2)))
    assert_close_z(w, Z(1.25, 0.75), 1e-15)
    w = exp(Z(1, 0))
    assert w.y == 0.0 and abs(w.x - math.e) < 1e-15


def test_exp_matches_power_series():
    # independent oracle: 30 terms of sum z^n / n! in ring arithmetic
    def series(z):
        total, term = Z(1, 0), Z(1, 0)
        for n in range(1, 30):
            term = term * z.scale(1.0 / n)
            total = total + term
        return total

    for z in (Z(0, math.log(2)), Z(0.5, -0.3), Z(-1, 0.7), Z(0.2, 2.0)):
        assert_close_z(exp(z), series(z), 1e-13)


def test_exp_overflow():
    with pytest.raises(OverflowError):
        exp(Z(800, 0))
    with pytest.raises(OverflowError):
        exp(Z(0, -800))


def test_exp_homomorphism():
    rng = random.Random(99)
    for _ in range(500):
        a = Z(rng.uniform(-10, 10), rng.uniform(-10, 10))
        b = Z(rng.uniform(-10, 10), rng.uniform(-10, 10))
        lhs = exp(a + b)
        rhs = exp(a) * exp(b)
        # scale of the product terms: the difference of two large cosh/sinh
        # products can cancel, so judge against what was actually multiplied
        scale = max(norm_inf(lhs), norm_inf(exp(a)) * norm_inf(exp(b)))
        assert_close_z(lhs, rhs, 1e-10, scale)


def test_exp_idempotent_oracle():
    # e^(xi n1 + eta n2) = e^xi n1 + e^eta n2, componentwise relative
    rng = random.Random(7)
    for _ in range(2000):
        z = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        c = exp(z).to_idempotent()
        zc = z.to_idempotent()
        assert abs(c.xi - math.exp(zc.xi)) <= 1e-12 * math.exp(zc.xi)
        assert abs(c.eta - math.exp(zc.eta)) <= 1e-12 * math.exp(zc.eta)


# -- polar multiplication --------------------------------------------------------


def test_polar_mul_examples():
    assert_close_z(polar_mul(Z(2, 0), Z(5, 3)), Z(10, 6), 1e-12, 16.0)
    # conjugate pair: angles cancel, moduli multiply to 16
    assert_close_z(polar_mul(Z(5, 3), Z(5, -3)), Z(16, 0), 1e-12, 16.0)
    with pytest.raises(OnNullCone):
        polar_mul(Z(1, 1), Z(5, 3))
    with pytest.raises(OnNullCone):
        polar_mul(Z(5, 3), Z(2, -2))


def test_polar_mul_matches_ring_product():
    rng = random.Random(2024)
    checked = 0
    while checked < 5000:
        a = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        z = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if (a.classify() is not ElementClass.INVERTIBLE
                or z.classify() is not ElementClass.INVERTIBLE):
            continue
        scale = max(norm_inf(a) * norm_inf(z), 1e-12)
        assert_close_z(polar_mul(a, z), a * z, 1e-10, scale)
        checked += 1


def test_polar_mul_scales_modulus():
    rng = random.Random(5)
    checked = 0
    while checked < 5000:
        a = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        z = Z(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if (a.classify() is not ElementClass.INVERTIBLE
                or z.classify() is not ElementClass.INVERTIBLE):
            continue
        pa, pz = to_polar(a), to_polar(z)
        product = a * z
        if product.classify() is not ElementClass.INVERTIBLE:
            continue  # rounding may land the product inside the cone band
        rho = to_polar(product).rho
        assert abs(rho - pa.rho * pz.rho) <= 1e-10 * max(norm_inf(a) * norm_inf(z), 1e-12)
        checked += 1


def test_quadrant_composition_covers_all_pairs():
    reps = {
        Quadrant.RIGHT: Z(3, 1),
        Quadrant.LEFT: Z(-3, 1),
        Quadrant.TOP: Z(1, 3),
        Quadrant.BOTTOM: Z(1, -3),
    }
    for qa, a in reps.items():
        for qz, z in reps.items():
            assert_close_z(polar_mul(a, z), a * z, 1e-12, 16.0)
