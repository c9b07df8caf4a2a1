import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import sqrt_fraction, theorem1_value
from sunpi.algebraic import AlgebraicNumber, squarefree_decomposition
from sunpi.evaluator import eval_series
from sunpi.identify import alg_value, find_alpha, find_relation, lll_reduce, minimal_relation, verify_alpha
from sunpi.kernels import THEOREM1, PolynomialWeight, SunSeries

SQUAREFREE = [d for d in range(2, 60) if squarefree_decomposition(d) == (1, d)]


def test_alg_value_examples():
    with mpmath.workdps(60):
        v = alg_value(AlgebraicNumber(0, Fraction(3, 2), 6), 40)
        ref = 3 * sqrt_fraction(6, 45) / 2
        assert abs(Fraction(mpmath.nstr(v, 50)) - ref) < Fraction(1, 10**40)
    assert alg_value(AlgebraicNumber(5), 30) == 5
    v = alg_value(AlgebraicNumber(0, Fraction(750000, 7921), 267), 40)
    assert abs(Fraction(mpmath.nstr(v, 50)) - 750000 * sqrt_fraction(267, 45) / 7921) < Fraction(1, 10**35)


def test_canonicalization():
    a = AlgebraicNumber(1, Fraction(1, 3), 12)
    assert (a.q0, a.q1, a.d) == (1, Fraction(2, 3), 3)
    assert AlgebraicNumber(a.q0, a.q1, a.d) == a
    assert AlgebraicNumber.from_json(a.to_json()) == a
    assert AlgebraicNumber(2, 0, 7).d == 1
    # a perfect square folds into the rational part
    assert AlgebraicNumber(1, 3, 4) == AlgebraicNumber(7)


def test_lll_small_example():
    reduced = lll_reduce([[1, 1, 1], [-1, 0, 2], [3, 5, 6]])
    assert sorted(sum(x * x for x in r) for r in reduced)[0] <= 3


def test_find_alpha_theorem1():
    with mpmath.workdps(60):
        v = mpmath.mpf(3) * mpmath.sqrt(6) / 2
        assert find_relation(v, 40) == (-27, 0, 2)
        assert find_alpha(v, digits=40) == AlgebraicNumber(0, Fraction(3, 2), 6)


def test_find_alpha_rational():
    assert find_relation(Fraction(22, 7), 50) == (-22, 7, 0)
    assert find_alpha(Fraction(22, 7)) == AlgebraicNumber(Fraction(22, 7))


def test_find_alpha_pi_none():
    with mpmath.workdps(60):
        assert find_alpha(+mpmath.pi, coeff_bound=10**6, digits=40) is None
        assert find_relation(+mpmath.pi, 40, coeff_bound=10**6) is None


def test_find_alpha_from_theorem1_evaluation():
    r = eval_series(THEOREM1, 60)
    with mpmath.workprec(r.precision):
        v = r.value * mpmath.pi
        assert find_alpha(v, digits=55) == THEOREM1.claimed_alpha


def _random_alpha(rng):
    q0 = Fraction(rng.randint(-60, 60), rng.randint(1, 30))
    if rng.random() < 0.15:
        return AlgebraicNumber(q0)
    q1 = Fraction(rng.choice([-1, 1]) * rng.randint(1, 60), rng.randint(1, 30))
    return AlgebraicNumber(q0, q1, rng.choice(SQUAREFREE))


def test_round_trip_200():
    rng = random.Random(20261014)
    for _ in range(200):
        a = _random_alpha(rng)
        with mpmath.workdps(70):
            v = alg_value(a, 60)
            assert find_alpha(v, digits=60) == a, a


def test_minimal_relation_annihilates():
    rng = random.Random(7)
    for _ in range(50):
        a = _random_alpha(rng)
        c0, c1, c2 = minimal_relation(a)
        assert c0 + c1 * a + c2 * a * a == AlgebraicNumber(0)


def test_verify_alpha_theorem1():
    check = verify_alpha(THEOREM1, THEOREM1.claimed_alpha, 30)
    assert check.holds
    with mpmath.workprec(check.evaluation.precision):
        value = Fraction(mpmath.nstr(check.evaluation.value, 40))
    assert abs(value - theorem1_value(40)) < Fraction(1, 10**26)


def test_verify_alpha_rejects_wrong_constant():
    check = verify_alpha(THEOREM1, AlgebraicNumber(0, Fraction(3, 4), 6), 30)
    assert not check.holds
    assert abs(check.relative_residual - 1) < mpmath.mpf(10) ** -20


def test_verify_alpha_self_consistency():
    series = SunSeries(PolynomialWeight.of(2, 5), Fraction(-1, 7))
    r = eval_series(series, 40)
    with mpmath.workprec(r.precision):
        wrapped = AlgebraicNumber(Fraction(mpmath.nstr(r.value * mpmath.pi, 45)))
    assert verify_alpha(series, wrapped, 30).holds


@pytest.mark.parametrize("sign", [1, -1])
def test_verify_alpha_signed(sign):
    series = SunSeries(THEOREM1.weight * sign, THEOREM1.q)
    alpha = THEOREM1.claimed_alpha * sign
    assert verify_alpha(series, alpha, 30).holds
    assert not verify_alpha(series, alpha * -1, 30).holds


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 10**4))
def test_squarefree_decomposition(n):
    s, d = squarefree_decomposition(n)
    assert s * s * d == n
    assert all(d % (k * k) for k in range(2, int(d**0.5) + 1))
