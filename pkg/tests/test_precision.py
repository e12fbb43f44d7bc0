# tests/test_precision.py
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from src.gpfsums.errors import PrecisionError, PreconditionError
from src.gpfsums.precision import (
    CONSTANTS,
    DD,
    ONE,
    ZERO,
    common_prefix,
    dd_add,
    dd_div,
    dd_from_mpf,
    dd_log1p,
    dd_mul,
    dd_nudge,
    dd_sub,
    dd_to_decimal,
)
from src.gpfsums.precision.kernels import two_prod, two_sum

SAMPLES = 20_000


def _random_dd(rng, low=-30, high=30):
    hi = float(rng.uniform(1.0, 2.0) * 2.0 ** int(rng.integers(low, high)))
    if rng.random() < 0.5:
        hi = -hi
    lo = float(rng.uniform(-0.5, 0.5)) * np.spacing(abs(hi))
    return DD.of(Fraction(hi) + Fraction(float(lo)))


def _relative_error(result: DD, exact: Fraction) -> float:
    if exact == 0:
        return float(abs(result.to_fraction()))
    return float(abs(result.to_fraction() - exact) / abs(exact))


def test_two_sum_and_two_prod_are_exact():
    rng = np.random.default_rng(1)
    for _ in range(SAMPLES):
        a = float(rng.normal() * 2.0 ** int(rng.integers(-60, 60)))
        b = float(rng.normal() * 2.0 ** int(rng.integers(-60, 60)))
        s, e = two_sum(a, b)
        assert Fraction(s) + Fraction(e) == Fraction(a) + Fraction(b)
        p, f = two_prod(a, b)
        assert Fraction(p) + Fraction(f) == Fraction(a) * Fraction(b)


def test_arithmetic_error_bounds_and_normalization():
    rng = np.random.default_rng(2)
    for _ in range(SAMPLES):
        a = _random_dd(rng)
        b = _random_dd(rng)
        fa, fb = a.to_fraction(), b.to_fraction()

        total = dd_add(a, b)
        assert total.is_normalized()
        assert abs(total.to_fraction() - (fa + fb)) <= Fraction(1, 2 ** 104) * (abs(fa) + abs(fb))

        product = dd_mul(a, b)
        assert product.is_normalized()
        assert _relative_error(product, fa * fb) <= 2.0 ** -100

        quotient = dd_div(a, b)
        assert quotient.is_normalized()
        assert _relative_error(quotient, fa / fb) <= 2.0 ** -100


def test_log1p_matches_high_precision_reference():
    rng = np.random.default_rng(3)
    with mpmath.workprec(200):
        for _ in range(2_000):
            r = float(rng.uniform(-(2.0 ** -10), 2.0 ** -10))
            result = dd_log1p(DD(r))
            exact = mpmath.log1p(mpmath.mpf(r))
            assert abs(result.to_mpf() - exact) <= mpmath.mpf("1e-30") * abs(exact)


def test_log1p_rejects_large_argument():
    with pytest.raises(PreconditionError):
        dd_log1p(DD(0.01))


def test_division_by_zero_raises_precision_error():
    with pytest.raises(PrecisionError):
        dd_div(ONE, ZERO)


def test_operators_follow_kernels():
    a = DD.of("1.25")
    b = DD.of(3)
    assert a + b == dd_add(a, b)
    assert a - b == dd_sub(a, b)
    assert a * b == dd_mul(a, b)
    assert a / b == dd_div(a, b)
    assert float(1 - a) == pytest.approx(-0.25)


def test_one_third_is_accurate_to_double_word():
    third = ONE / 3
    assert abs(third.to_fraction() - Fraction(1, 3)) < Fraction(1, 10 ** 32)


def test_hex_round_trip_is_exact():
    value = DD.of(Fraction(1, 7))
    words = value.hex()
    assert all(len(word) == 16 and word == word.lower() for word in words)
    assert DD.from_hex(words) == value


def test_dd_from_mpf_directed_rounding():
    with mpmath.workprec(300):
        x = mpmath.mpf(1) / 3
        down = dd_from_mpf(x, "d")
        up = dd_from_mpf(x, "u")
        assert down.to_mpf() <= x <= up.to_mpf()
        assert up.to_fraction() - down.to_fraction() < Fraction(1, 10 ** 31)


def test_dd_nudge_moves_outward():
    x = DD.of("2.5")
    assert dd_nudge(x, -1).to_fraction() < x.to_fraction() < dd_nudge(x, +1).to_fraction()


def test_decimal_rendering():
    assert dd_to_decimal(DD.of("0.1"), 31) == "0." + "1" + "0" * 30
    assert dd_to_decimal(DD.of(Fraction(2, 3)), 5) == "0.66667"
    assert dd_to_decimal(DD.of(-12.5), 4) == "-12.50"
    assert dd_to_decimal(DD.of(123456), 3) == "123000"
    assert dd_to_decimal(ZERO, 3) == "0.00"


def test_decimal_rendering_rejects_bad_digit_count():
    with pytest.raises(PreconditionError):
        dd_to_decimal(ONE, 32)


def test_common_prefix():
    assert common_prefix("2.2544353595190", "2.2544353595199") == "2.254435359519"
    assert common_prefix("12.5", "12.7") == "12"
    assert common_prefix("2.9", "3.1") == ""


def test_exp_gamma_literals():
    with mpmath.workprec(200):
        exp_gamma = mpmath.exp(mpmath.euler)
        assert abs(CONSTANTS.exp_gamma.to_mpf() - exp_gamma) < mpmath.mpf("1e-31")
        assert abs(CONSTANTS.exp_2gamma.to_mpf() - exp_gamma ** 2) < mpmath.mpf("1e-30")
        assert abs(CONSTANTS.gamma.to_mpf() - mpmath.euler) < mpmath.mpf("1e-32")
