from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sunpi.exactmath import (
    bigfloat_to_fraction,
    format_rational,
    integer_binomial,
    parse_rational,
    pochhammer,
    rational_binomial,
    to_bigfloat,
)

rationals = st.fractions(max_denominator=50).filter(lambda r: abs(r) < 100)


@pytest.mark.parametrize(
    "x, k, expected",
    [
        (Fraction(-1, 3), 0, Fraction(1)),
        (Fraction(-1, 3), 1, Fraction(-1, 3)),
        (Fraction(-1, 3), 2, Fraction(2, 9)),
    ],
)
def test_rational_binomial_examples(x, k, expected):
    assert rational_binomial(x, k) == expected


@pytest.mark.parametrize(
    "a, n, expected",
    [(Fraction(1, 2), 0, 1), (Fraction(1, 2), 2, Fraction(3, 4)), (Fraction(1, 3), 2, Fraction(4, 9))],
)
def test_pochhammer_examples(a, n, expected):
    assert pochhammer(a, n) == expected


def test_integer_binomial():
    assert integer_binomial(4, 2) == 6
    assert integer_binomial(2, 1) == 2
    assert integer_binomial(6, 2) == 15
    with pytest.raises(ValueError):
        integer_binomial(2, 3)


@given(rationals, st.integers(1, 30))
def test_binomial_pascal_ratio(x, k):
    assert rational_binomial(x, k) == rational_binomial(x, k - 1) * (x - k + 1) / k


@pytest.mark.parametrize("x", [Fraction(1, 3), Fraction(1, 6)])
def test_vandermonde_sign(x):
    # upper arguments -x and x-1 sum to -1, so the convolution is C(-1, n)
    for n in range(51):
        s = sum(rational_binomial(-x, k) * rational_binomial(x - 1, n - k) for k in range(n + 1))
        assert s == (-1) ** n


@given(rationals, st.integers(0, 20), st.integers(0, 20))
def test_pochhammer_split(a, m, n):
    assert pochhammer(a, m + n) == pochhammer(a, m) * pochhammer(a + m, n)


@given(st.integers(0, 40), st.integers(0, 50))
def test_integer_argument_agrees(x, k):
    expected = integer_binomial(x, k) if k <= x else 0
    assert rational_binomial(x, k) == expected


@given(rationals, rationals)
def test_rational_exactness(r1, r2):
    assert (r1 + r2) - r2 == r1


@given(rationals)
def test_serialization_round_trip(r):
    assert parse_rational(format_rational(r)) == r


@pytest.mark.parametrize("bad", ["1/0x", "1.5", "", "1/-2", "--3"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


@given(st.fractions(max_denominator=10**12), st.integers(64, 400))
def test_bigfloat_correctly_rounded(r, prec):
    v = to_bigfloat(r, prec)
    exact = bigfloat_to_fraction(v)
    if r == 0:
        assert exact == 0
        return
    man, exp = v.man_exp
    ulp = Fraction(2) ** (exp + int(abs(man)).bit_length() - prec)
    assert abs(exact - r) <= ulp / 2


def test_bigfloat_minimum_precision():
    with pytest.raises(ValueError):
        to_bigfloat(Fraction(1, 3), 53)
