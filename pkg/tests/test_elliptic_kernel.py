import random
from fractions import Fraction

import pytest

from a2m.elliptic_kernel import (
    DegenerateConfiguration,
    EllipticParams,
    InvalidParams,
    PoleProximity,
    addition_residual,
    ode_residual,
    random_params,
    random_point,
    wp,
)

RATIONAL = EllipticParams(0, 0)

# 40-digit Laurent sums (60 terms, mpmath), computed outside the package
WP_HALF_LEMNISCATIC = (4.050208734712060872217387, -15.797491966513982859882466)
WP_GENERIC = (complex(2.968127761324492122, -7.076174748014279782), complex(8.311220494211464694, 41.961942858376944610))


def samples(n=100, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        params = random_params(rng)
        z = random_point(rng)
        try:
            wp(z, params)
            wp(-z, params)
        except PoleProximity:
            continue
        out.append((z, params))
    return out


def test_rational_limit_is_exact():
    w = wp(Fraction(2, 3), RATIONAL)
    assert w.p == Fraction(9, 4)
    assert w.dp == Fraction(-27, 4)
    assert ode_residual(Fraction(2, 3), RATIONAL) == 0


def test_rational_limit_float_path():
    w = wp(0.5, RATIONAL)
    assert w.p == 4.0 and w.dp == -16.0


def test_against_high_precision_series():
    w = wp(0.5, EllipticParams(4, 0))
    assert abs(w.p - WP_HALF_LEMNISCATIC[0]) < 1e-12
    assert abs(w.dp - WP_HALF_LEMNISCATIC[1]) < 1e-11
    w = wp(0.3 + 0.2j, EllipticParams(4, 1))
    assert abs(w.p - WP_GENERIC[0]) < 1e-12 * abs(WP_GENERIC[0])
    assert abs(w.dp - WP_GENERIC[1]) < 1e-12 * abs(WP_GENERIC[1])


def test_second_derivative_is_derived():
    params = EllipticParams(2 + 1j, -0.5)
    w = wp(0.7 - 0.1j, params)
    assert w.ddp == 6 * w.p * w.p - params.g2 / 2


def test_specific_residual():
    assert ode_residual(0.3 + 0.2j, EllipticParams(4, 1)) < 1e-12


@pytest.mark.parametrize("z, params", samples(100))
def test_ode_and_parity(z, params):
    assert ode_residual(z, params) < 1e-12
    a, b = wp(z, params), wp(-z, params)
    assert abs(a.p - b.p) < 1e-12 * max(1, abs(a.p))
    assert abs(a.dp + b.dp) < 1e-11 * max(1, abs(a.dp))


def test_duplication_consistency():
    for z, params in samples(100, seed=3):
        try:
            w2 = wp(2 * z, params)
        except PoleProximity:
            continue
        w = wp(z, params)
        if abs(w.dp) < 1e-3:
            continue
        r = w.ddp / w.dp
        assert abs(w2.p - (-2 * w.p + r * r / 4)) < 1e-10 * max(1, abs(w2.p))


def test_addition_theorem_samples():
    rng = random.Random(5)
    done = 0
    while done < 100:
        params = random_params(rng)
        u, v = random_point(rng), random_point(rng)
        try:
            r = addition_residual(u, v, params)
        except (PoleProximity, DegenerateConfiguration):
            continue
        assert r < 1e-10
        done += 1


def test_addition_rational_exact():
    assert addition_residual(Fraction(1, 2), Fraction(1, 3), RATIONAL) == 0


def test_addition_degenerate_rejected():
    with pytest.raises(DegenerateConfiguration):
        addition_residual(0.4 + 0.1j, 0.4 + 0.1j, EllipticParams(4, 1))


def test_errors():
    with pytest.raises(PoleProximity):
        wp(0, EllipticParams(4, 1))
    with pytest.raises(InvalidParams):
        wp(0.5, EllipticParams(3, 1))  # 27 - 27 = 0
    with pytest.raises(ValueError):
        wp(0.5, EllipticParams(4, 1), tol=0)
