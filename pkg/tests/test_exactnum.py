import math
import random
from fractions import Fraction

import mpmath
import pytest

from services.errors import DimensionMismatchError, MixedDiscriminantError
from services.exactnum import (
    AB_FRAME, PENROSE_FRAME, SILVER, SQRT2, TAU, QuadValue, frame_by_name, quad, quad_conjugate, quad_norm,
    quad_sign, to_float,
)

COEFF_BOUND = 2 ** 20


def _random_value(rng, d, bound=COEFF_BOUND):
    def coeff():
        return Fraction(rng.randint(-bound, bound), rng.randint(1, 64))
    return quad(coeff(), coeff(), d)


def _exact(x, dps=80):
    with mpmath.workdps(dps):
        w = mpmath.sqrt(2) if x.d == 2 else (1 + mpmath.sqrt(5)) / 2
        return mpmath.mpf(x.a.numerator) / x.a.denominator + mpmath.mpf(x.b.numerator) / x.b.denominator * w



def test_golden_ratio_identity():
    assert TAU * TAU == TAU + 1
    assert TAU.inverse() == TAU - 1


def test_silver_mean_is_a_unit():
    assert quad_norm(SILVER) == -1
    assert SILVER * SILVER == 2 * SILVER + 1
    assert SQRT2 * SQRT2 == 2


def test_norm_is_multiplicative():
    x, y = quad(3, -2, 5), quad(Fraction(1, 3), 4, 5)
    assert quad_norm(x * y) == quad_norm(x) * quad_norm(y)


def test_sign_of_small_difference():
    # 99/70 is a convergent of sqrt 2 from above
    assert (quad(Fraction(99, 70), 0, 2) - SQRT2).sign() == 1
    assert (quad(Fraction(140, 99), 0, 2) - SQRT2).sign() == -1
    assert quad(0, 0, 5).sign() == 0


def test_mixed_rings_rejected():
    with pytest.raises(MixedDiscriminantError):
        TAU + SQRT2


def test_unsupported_ring_rejected():
    with pytest.raises(MixedDiscriminantError):
        QuadValue(1, 1, 3)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        quad(0, 0, 2).inverse()


def test_to_float_matches_closed_form():
    assert to_float(TAU) == pytest.approx((1 + math.sqrt(5)) / 2, abs=1e-15)
    assert to_float(SILVER) == pytest.approx(1 + math.sqrt(2), abs=1e-15)


def test_pair_serialization_is_exact():
    x = quad(Fraction(-7, 3), Fraction(5, 11), 5)
    assert x.to_pair() == ("-7/3", "5/11")
    assert QuadValue.from_pair(x.to_pair(), 5) == x


@pytest.mark.parametrize("frame", [AB_FRAME, PENROSE_FRAME])
def test_full_turn_is_identity(frame):
    p = frame.point(quad(1, 1, frame.d), quad(Fraction(1, 2), 0, frame.d))
    assert frame.rotate(p, frame.angle_steps) == p


@pytest.mark.parametrize("frame", [AB_FRAME, PENROSE_FRAME])
def test_unit_vectors_have_unit_length(frame):
    for k in range(frame.angle_steps):
        assert frame.norm_sq(frame.unit(k)) == 1
        x, y = frame.to_floats(frame.unit(k))
        angle = 2 * math.pi * k / frame.angle_steps
        assert (x, y) == pytest.approx((math.cos(angle), math.sin(angle)), abs=1e-12)


def test_frame_lookup():
    assert frame_by_name("decagonal") is PENROSE_FRAME


def test_unknown_frame_rejected():
    with pytest.raises(DimensionMismatchError):
        frame_by_name("hexagonal")


@pytest.mark.parametrize("d", [2, 5])
def test_ring_axioms_on_random_values(d):
    rng = random.Random(1000 + d)
    zero, one = quad(0, 0, d), quad(1, 0, d)
    for _ in range(300):
        x, y, z = (_random_value(rng, d) for _ in range(3))
        assert x + y == y + x
        assert x * y == y * x
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + zero == x and x * one == x
        assert x + (-x) == zero
        if x:
            assert x * x.inverse() == one


@pytest.mark.parametrize("d", [2, 5])
def test_conjugation_is_a_ring_homomorphism(d):
    rng = random.Random(2000 + d)
    for _ in range(300):
        x, y = _random_value(rng, d), _random_value(rng, d)
        assert quad_conjugate(x + y) == quad_conjugate(x) + quad_conjugate(y)
        assert quad_conjugate(x * y) == quad_conjugate(x) * quad_conjugate(y)
        assert quad_conjugate(quad_conjugate(x)) == x
        assert x * quad_conjugate(x) == quad(quad_norm(x), 0, d)


def test_sign_agrees_with_high_precision():
    rng = random.Random(7)
    for i in range(100_000):
        d = 2 if i % 2 else 5
        a, b = rng.randint(-COEFF_BOUND, COEFF_BOUND), rng.randint(-COEFF_BOUND, COEFF_BOUND)
        x = quad(a, b, d)
        exact = _exact(x)
        assert quad_sign(x) == (exact > 0) - (exact < 0), (a, b, d)


@pytest.mark.parametrize("d", [2, 5])
def test_sign_near_cancellation(d):
    # consecutive Pell / Fibonacci pairs give a - b*w of size about 1/b
    p, q = (1, 1) if d == 2 else (1, 0)
    for _ in range(40):
        p, q = (p + 2 * q, p + q) if d == 2 else (p + q, p)
        x = quad(p, -q, d)
        exact = _exact(x, dps=120)
        assert quad_sign(x) == (exact > 0) - (exact < 0)


@pytest.mark.parametrize("d", [2, 5])
def test_to_float_relative_error(d):
    rng = random.Random(3000 + d)
    for _ in range(2000):
        x = _random_value(rng, d)
        exact = _exact(x)
        if exact == 0:
            continue
        assert abs((to_float(x) - exact) / exact) <= 2.0 ** -40
