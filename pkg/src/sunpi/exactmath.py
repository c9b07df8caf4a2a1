"""Exact rational arithmetic, binomials, Pochhammer symbols and float conversion.

``Rational`` is :class:`fractions.Fraction`: it is always reduced with a
positive denominator, which is exactly the invariant the rest of the package
relies on.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

import mpmath
from mpmath.libmp import from_rational, round_nearest

Rational = Fraction

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (decimal integers, optional leading minus)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational: {text!r}")
    value = Fraction(text.strip())
    return value


def format_rational(r: Fraction | int) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def rational_binomial(x: Fraction | int, k: int) -> Fraction:
    """Generalized binomial coefficient ``x(x-1)...(x-k+1)/k!``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = Fraction(x)
    result = Fraction(1)
    for i in range(k):
        result *= (x - i) / (i + 1)
    return result


def binomial_prefix(x: Fraction | int, count: int) -> list[Fraction]:
    """``[C(x, 0), ..., C(x, count-1)]`` by the same incremental ratio."""
    x = Fraction(x)
    out = []
    value = Fraction(1)
    for i in range(count):
        out.append(value)
        value *= (x - i) / (i + 1)
    return out


def pochhammer(a: Fraction | int, n: int) -> Fraction:
    """Rising factorial ``(a)_n = a(a+1)...(a+n-1)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = Fraction(a)
    result = Fraction(1)
    for k in range(n):
        result *= a + k
    return result


def integer_binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"binomial({n}, {k}) is outside 0 <= k <= n")
    return math.comb(n, k)


def digits_to_bits(digits: int) -> int:
    return math.ceil(digits * math.log2(10))


def to_bigfloat(r: Fraction | int, prec: int) -> mpmath.mpf:
    """Correctly rounded (round-to-nearest) conversion of a rational at ``prec`` bits."""
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    r = Fraction(r)
    with mpmath.workprec(prec):
        return mpmath.mpf(from_rational(r.numerator, r.denominator, prec, round_nearest))


def bigfloat_to_fraction(x: mpmath.mpf) -> Fraction:
    """Exact value of a binary float."""
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, _ = x._mpf_
    if not man and exp:
        raise ValueError(f"{x} is not finite")
    man = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)
