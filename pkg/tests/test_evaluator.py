from fractions import Fraction

import mpmath
import pytest

from oracles import pi_fraction, sqrt_fraction, theorem1_value
from sunpi.exactmath import bigfloat_to_fraction
from sunpi.evaluator import (
    EXACT,
    EvaluationError,
    eval_2f1,
    eval_lemma1_side,
    eval_P_and_derivative,
    eval_series,
    render_bound,
    render_decimal,
)
from sunpi.kernels import GUILLERA, SUN_KERNEL, THEOREM1, HypSeries, PolynomialWeight, SunSeries
from sunpi.table import load_table


def as_fraction(x):
    return bigfloat_to_fraction(x)


def test_theorem1_against_machin_oracle():
    r = eval_series(THEOREM1, 30)
    err = abs(as_fraction(r.value) - theorem1_value(40))
    assert err <= as_fraction(r.error_bound)
    assert as_fraction(r.error_bound) <= Fraction(1, 10**30)
    assert r.terms_used >= 17


def test_guillera_gives_3sqrt3_over_pi():
    r = eval_series(GUILLERA, 30)
    target = 3 * sqrt_fraction(3, 45) / pi_fraction(45)
    assert abs(as_fraction(r.value) - target) <= as_fraction(r.error_bound) + Fraction(1, 10**40)


def test_q_zero_is_exact():
    r = eval_series(SunSeries(PolynomialWeight(), 0), 25, mode=EXACT)
    assert r.value == 1 and r.error_bound == 0
    assert r.terms_used == 1


def test_2f1_trivial_cases():
    r = eval_2f1(Fraction(1, 3), Fraction(1, 6), 1, 0, 30)
    assert r.value == 1 and r.error_bound == 0
    r = eval_2f1(-1, 5, 2, Fraction(1, 3), 30)
    assert r.exact == Fraction(1, 6)
    assert abs(as_fraction(r.value) - Fraction(1, 6)) <= as_fraction(r.error_bound)


def test_2f1_against_mpmath():
    r = eval_2f1(Fraction(1, 3), Fraction(1, 6), 1, Fraction(-1, 2), 30)
    with mpmath.workdps(50):
        ref = mpmath.hyp2f1(mpmath.mpf(1) / 3, mpmath.mpf(1) / 6, 1, -0.5)
        assert abs(r.value - ref) <= r.error_bound + mpmath.mpf(10) ** -45


def test_2f1_square_matches_P():
    digits = 30
    v = eval_2f1(Fraction(1, 3), Fraction(1, 6), 1, Fraction(1, 2), digits)
    p, _ = eval_P_and_derivative(Fraction(1, 2), digits)
    with mpmath.workprec(p.precision):
        assert abs(v.value**2 * mpmath.sqrt(2) - p.value) < mpmath.mpf(10) ** (-digits + 2)


def test_P_at_zero():
    p, dp = eval_P_and_derivative(0, 30)
    assert p.value == 1
    assert dp.exact == Fraction(11, 18)


def test_operator_step_gives_theorem1():
    p, dp = eval_P_and_derivative(Fraction(1, 2), 30)
    with mpmath.workprec(p.precision):
        lhs = Fraction(3, 2) * as_fraction(dp.value) - as_fraction(p.value)
    bound = Fraction(3, 2) * as_fraction(dp.error_bound) + as_fraction(p.error_bound)
    assert abs(lhs - theorem1_value(40)) <= bound + Fraction(1, 10**38)


def test_P_half_closed_form_side():
    p, _ = eval_P_and_derivative(Fraction(1, 2), 30)
    side = eval_lemma1_side(Fraction(1, 2), 30)
    diff = as_fraction(p.value) - sqrt_fraction(2, 45) * as_fraction(side.value)
    assert abs(diff) <= as_fraction(p.error_bound) + 2 * as_fraction(side.error_bound) + Fraction(1, 10**40)


@pytest.mark.parametrize("z", [Fraction(1, 4), Fraction(-1, 2), Fraction(3, 5)])
def test_operator_matches_weighted_series(z):
    p, dp = eval_P_and_derivative(z, 25)
    direct = eval_series(SunSeries(PolynomialWeight.of(-1, 3), z), 25)
    with mpmath.workprec(p.precision):
        lhs = 3 * (mpmath.mpf(z.numerator) / z.denominator) * dp.value - p.value
        bound = 3 * abs(mpmath.mpf(z.numerator) / z.denominator) * dp.error_bound + p.error_bound + direct.error_bound
        assert abs(lhs - direct.value) <= bound


@pytest.mark.parametrize("z", [Fraction(1, 4), Fraction(1, 2), Fraction(-1, 2)])
def test_product_identities(z):
    digits = 25
    p, _ = eval_P_and_derivative(z, digits)
    f1 = eval_2f1(Fraction(1, 3), Fraction(1, 6), 1, z, digits)
    f2 = eval_2f1(Fraction(2, 3), Fraction(5, 6), 1, z, digits)
    side = eval_lemma1_side(z, digits)
    with mpmath.workprec(p.precision + 16):
        root = 1 / mpmath.sqrt(1 - mpmath.mpf(z.numerator) / z.denominator)
        b1 = p.error_bound + f1.error_bound * abs(f2.value) + f2.error_bound * (abs(f1.value) + f1.error_bound)
        assert abs(p.value - f1.value * f2.value) <= b1
        b2 = p.error_bound + root * (2 * abs(f1.value) + f1.error_bound) * f1.error_bound
        assert abs(p.value - root * f1.value**2) <= b2
        assert abs(p.value - root * side.value) <= p.error_bound + root * side.error_bound


def _bundled():
    rows = [r.series for r in load_table()[0]]
    thm2 = [
        SunSeries(PolynomialWeight.of(-2, -14, -27, 9), Fraction(1, 2)),
        SunSeries(PolynomialWeight.of(-5, -25, -54, 18), Fraction(1, 2)),
    ]
    return rows + thm2 + [GUILLERA]


@pytest.mark.parametrize("series", _bundled(), ids=lambda s: s.name or "series")
def test_exact_and_float_modes_agree(series):
    f = eval_series(series, 20)
    e = eval_series(series, 20, mode=EXACT)
    assert abs(as_fraction(f.value) - e.exact) <= as_fraction(f.error_bound) + as_fraction(e.error_bound)


@pytest.mark.parametrize("series", [THEOREM1, GUILLERA, SunSeries(PolynomialWeight.of(19, 50), Fraction(-9, 16))])
def test_monotone_refinement(series):
    bounds = [eval_series(series, d).error_bound for d in range(10, 61, 5)]
    assert all(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:]))


def test_error_bound_is_honest_at_high_precision():
    low, high = eval_series(THEOREM1, 20), eval_series(THEOREM1, 60)
    assert abs(as_fraction(low.value) - as_fraction(high.value)) <= as_fraction(low.error_bound + high.error_bound)


def test_slow_convergence_near_one():
    s = SunSeries(PolynomialWeight(), Fraction(9, 10))
    r = eval_series(s, 15)
    with mpmath.workdps(30):
        z = mpmath.mpf(0.9)
        ref = mpmath.hyp3f2(0.5, mpmath.mpf(1) / 3, mpmath.mpf(2) / 3, 1, 1, z) / mpmath.sqrt(1 - z)
        assert abs(r.value - ref) <= r.error_bound + mpmath.mpf(10) ** -25


@pytest.mark.parametrize("q", [Fraction(1), Fraction(-3, 2)])
def test_divergent_q(q):
    with pytest.raises(EvaluationError):
        eval_series(SunSeries(PolynomialWeight(), q), 10)


def test_divergent_hypergeometric():
    with pytest.raises(EvaluationError):
        eval_series(HypSeries((1, 1, 1), (1,), Fraction(1, 2)), 10)
    with pytest.raises(EvaluationError):
        eval_2f1(Fraction(1, 3), Fraction(1, 6), 1, 1, 10)
    with pytest.raises(EvaluationError):
        eval_2f1(Fraction(1, 3), Fraction(1, 6), 0, Fraction(1, 2), 10)


def test_exact_mode_limits():
    with pytest.raises(ValueError):
        eval_series(THEOREM1, 31, mode=EXACT)


def test_precision_override():
    r = eval_series(THEOREM1, 20, precision_bits=200)
    assert r.precision == 200


def test_render_half_even():
    with mpmath.workprec(64):
        assert render_decimal(mpmath.mpf(0.125), 2) == "0.12"
        assert render_decimal(mpmath.mpf(0.375), 2) == "0.38"
        assert render_decimal(mpmath.mpf(-2.5), 0) == "-2"
        assert render_bound(mpmath.mpf("1.2345e-31")) == "1.23e-31"


def test_kernel_other_than_default():
    s = SunSeries(PolynomialWeight(), Fraction(1, 3), SUN_KERNEL.swapped())
    t = SunSeries(PolynomialWeight(), Fraction(1, 3))
    assert abs(eval_series(s, 30).value - eval_series(t, 30).value) <= mpmath.mpf(10) ** -29
