"""Dense univariate polynomials as tuples of coefficients, constant term first.

Only what recurrences and weight algebra need: ring operations, argument
shift, exact division and gcd over the rationals, and integer normalization.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

Poly = tuple


def normalize(p: Sequence) -> Poly:
    coeffs = list(p)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Sequence) -> int:
    p = normalize(p)
    return len(p) - 1 if p else -1


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return normalize(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def scale(p: Sequence, c) -> Poly:
    return normalize(c * a for a in p)


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, scale(q, -1))


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def product(polys) -> Poly:
    return reduce(mul, polys, (1,))


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def shift(p: Sequence, s) -> Poly:
    """Coefficients of ``p(n + s)``."""
    out: Poly = ()
    for c in reversed(p):
        out = add(mul(out, (s, 1)), (c,))
    return out


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    q = normalize(Fraction(c) for c in q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in normalize(p)]
    quot = [Fraction(0)] * max(len(rem) - len(q) + 1, 0)
    while len(rem) >= len(q) and rem:
        factor = rem[-1] / q[-1]
        offset = len(rem) - len(q)
        quot[offset] = factor
        for i, c in enumerate(q):
            rem[offset + i] -= factor * c
        rem = list(normalize(rem))
    return normalize(quot), normalize(rem)


def gcd(p: Sequence, q: Sequence) -> Poly:
    """Monic gcd over the rationals."""
    a, b = normalize(p), normalize(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return ()
    lead = Fraction(a[-1])
    return tuple(Fraction(c) / lead for c in a)


def content(p: Sequence) -> Fraction:
    """Positive rational c such that p / c has coprime integer coefficients."""
    p = [Fraction(c) for c in normalize(p)]
    if not p:
        return Fraction(0)
    den = math.lcm(*(c.denominator for c in p))
    num = math.gcd(*(int(c * den) for c in p))
    return Fraction(num, den)


def to_integer(p: Sequence, make_positive: bool = True) -> tuple[tuple[int, ...], Fraction]:
    """Return (primitive integer polynomial, c) with p = c * primitive."""
    c = content(p)
    if c == 0:
        return (), Fraction(0)
    if make_positive and normalize(p)[-1] < 0:
        c = -c
    return tuple(int(Fraction(a) / c) for a in normalize(p)), c


def from_roots(*linear: tuple) -> Poly:
    """Product of linear factors given as (constant, slope) pairs."""
    return product(linear)


def render(p: Sequence, var: str = "n") -> str:
    p = normalize(p)
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = Fraction(p[i])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text
