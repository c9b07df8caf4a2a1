"""Verify and recover the algebraic constant alpha in  sum = alpha / pi."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from sunpi.algebraic import AlgebraicNumber, minimal_relation, squarefree_decomposition
from sunpi.evaluator import EvalResult, eval_series
from sunpi.exactmath import digits_to_bits, to_bigfloat
from sunpi.kernels import SunSeries

__all__ = [
    "AlgebraicNumber",
    "AlphaCheck",
    "alg_value",
    "find_alpha",
    "find_relation",
    "lll_reduce",
    "minimal_relation",
    "verify_alpha",
]

DEFAULT_COEFF_BOUND = 10**12


def alg_value(a: AlgebraicNumber, target_digits: int) -> mpmath.mpf:
    return a.value(digits_to_bits(target_digits) + 8)


@dataclass(frozen=True)
class AlphaCheck:
    holds: bool
    residual: mpmath.mpf
    relative_residual: mpmath.mpf
    tolerance: mpmath.mpf
    evaluation: EvalResult

    def __bool__(self) -> bool:
        return self.holds


def verify_alpha(series: SunSeries, alpha: AlgebraicNumber, digits: int) -> AlphaCheck:
    """Compare sum * pi against alpha; passes when within 10^(4-digits) plus bounds."""
    result = eval_series(series, digits)
    with mpmath.workprec(result.precision + 16):
        pi = +mpmath.pi
        lhs = result.value * pi
        target = alg_value(alpha, digits + 8)
        residual = lhs - target
        tol = mpmath.mpf(10) ** (4 - digits) + result.error_bound * pi
        rel = abs(residual) / abs(target) if target else abs(residual)
        holds = abs(residual) <= tol
    return AlphaCheck(bool(holds), residual, rel, tol, result)


def lll_reduce(basis: list[list[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """Textbook LLL on integer row vectors with exact rational Gram-Schmidt."""
    b = [list(map(int, row)) for row in basis]
    n = len(b)

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    def gram_schmidt():
        bstar: list[list[Fraction]] = []
        mu = [[Fraction(0)] * n for _ in range(n)]
        norms: list[Fraction] = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = Fraction(dot(b[i], bstar[j])) / norms[j] if norms[j] else Fraction(0)
                v = [a - mu[i][j] * c for a, c in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(dot(v, v))
        return mu, norms

    mu, norms = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            r = round(mu[k][j])
            if r:
                b[k] = [x - r * y for x, y in zip(b[k], b[j])]
                mu, norms = gram_schmidt()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            mu, norms = gram_schmidt()
            k = max(k - 1, 1)
    return b


def find_relation(value, digits: int, coeff_bound: int = DEFAULT_COEFF_BOUND):
    """Small integers (c0, c1, c2) with c0 + c1 v + c2 v^2 ~ 0, or None.

    Lattice reduction on (1, v, v^2) scaled by 10^(digits-8); a relation is
    accepted when its residual is below 10^(12-digits).
    """
    prec = digits_to_bits(digits) + 16
    with mpmath.workprec(prec):
        v = to_bigfloat(value, prec) if isinstance(value, (Fraction, int)) else mpmath.mpf(value)
        scale = mpmath.mpf(10) ** (digits - 8)
        powers = [mpmath.mpf(1), v, v * v]
        basis = []
        for i, p in enumerate(powers):
            row = [0, 0, 0, int(mpmath.nint(p * scale))]
            row[i] = 1
            basis.append(row)
        reduced = lll_reduce(basis)
        threshold = mpmath.mpf(10) ** (12 - digits)
        found = []
        for row in reduced:
            c = row[:3]
            if not any(c[1:]) or max(abs(x) for x in c) > coeff_bound:
                continue
            residual = abs(c[0] + c[1] * v + c[2] * v * v)
            if residual < threshold * max(1, abs(v)) ** 2:
                g = math.gcd(*c)
                lead = c[2] if c[2] else c[1]
                sign = 1 if lead > 0 else -1
                c = tuple(sign * x // g for x in c)
                found.append(c)
    if not found:
        return None
    # prefer linear relations, then the smallest
    return min(found, key=lambda c: (c[2] != 0, sum(x * x for x in c)))


def _roots(c: tuple[int, int, int]) -> list[AlgebraicNumber]:
    c0, c1, c2 = c
    if c2 == 0:
        return [AlgebraicNumber(Fraction(-c0, c1))]
    disc = c1 * c1 - 4 * c2 * c0
    if disc < 0:
        return []
    if disc == 0:
        return [AlgebraicNumber(Fraction(-c1, 2 * c2))]
    s, d = squarefree_decomposition(disc)
    center = Fraction(-c1, 2 * c2)
    half = Fraction(s, 2 * c2)
    return [AlgebraicNumber(center, half, d), AlgebraicNumber(center, -half, d)]


def find_alpha(value, coeff_bound: int = DEFAULT_COEFF_BOUND, digits: int | None = None) -> AlgebraicNumber | None:
    """Recognize ``value`` as an algebraic number of degree at most two.

    ``digits`` is the certified accuracy of ``value``; it defaults to the
    ambient mpmath precision for floats and to 50 for exact rationals.
    """
    if digits is None:
        digits = 50 if isinstance(value, (Fraction, int)) else mpmath.mp.dps
    relation = find_relation(value, digits, coeff_bound)
    if relation is None:
        return None
    prec = digits_to_bits(digits) + 16
    with mpmath.workprec(prec):
        v = to_bigfloat(value, prec) if isinstance(value, (Fraction, int)) else mpmath.mpf(value)
        pick = mpmath.mpf(10) ** (-(digits // 2))
        check = mpmath.mpf(10) ** (12 - digits) * max(1, abs(v))
        for root in _roots(relation):
            x = root.value(prec)
            if abs(x - v) < pick and abs(x - v) < check:
                return root
    return None
