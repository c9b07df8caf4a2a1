"""Real algebraic numbers of degree at most two, ``q0 + q1*sqrt(d)``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from sunpi.exactmath import format_rational, parse_rational


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s^2 * d and d squarefree, by trial division."""
    if n <= 0:
        raise ValueError("radicand must be positive")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1
    return s, d * n


@dataclass(frozen=True)
class AlgebraicNumber:
    q0: Fraction
    q1: Fraction = Fraction(0)
    d: int = 1

    def __post_init__(self):
        q0 = parse_rational(self.q0)
        q1 = parse_rational(self.q1)
        d = int(self.d)
        if d <= 0:
            raise ValueError("d must be a positive integer")
        s, d = squarefree_decomposition(d)
        q1 *= s
        if d == 1:
            q0, q1 = q0 + q1, Fraction(0)
        if q1 == 0:
            d = 1
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "d", d)

    @classmethod
    def rational(cls, r) -> "AlgebraicNumber":
        return cls(parse_rational(r))

    @property
    def is_rational(self) -> bool:
        return self.q1 == 0

    def value(self, prec: int) -> mpmath.mpf:
        with mpmath.workprec(prec + 16):
            v = mpmath.mpf(self.q0.numerator) / self.q0.denominator
            if self.q1:
                v += mpmath.mpf(self.q1.numerator) / self.q1.denominator * mpmath.sqrt(self.d)
        with mpmath.workprec(prec):
            return +v

    def __mul__(self, other):
        other = parse_rational(other) if not isinstance(other, AlgebraicNumber) else other
        if isinstance(other, AlgebraicNumber):
            if not other.is_rational:
                if self.is_rational:
                    return other * self.q0
                if other.d != self.d:
                    return NotImplemented
                return AlgebraicNumber(
                    self.q0 * other.q0 + self.q1 * other.q1 * self.d,
                    self.q0 * other.q1 + self.q1 * other.q0,
                    self.d,
                )
            other = other.q0
        return AlgebraicNumber(self.q0 * other, self.q1 * other, self.d)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, AlgebraicNumber):
            other = AlgebraicNumber(parse_rational(other))
        if self.is_rational:
            return AlgebraicNumber(self.q0 + other.q0, other.q1, other.d)
        if other.is_rational or other.d == self.d:
            return AlgebraicNumber(self.q0 + other.q0, self.q1 + other.q1, self.d)
        raise ValueError(f"cannot add sqrt({self.d}) and sqrt({other.d}) terms")

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other if isinstance(other, AlgebraicNumber) else -parse_rational(other))

    def to_json(self) -> dict:
        return {"q0": format_rational(self.q0), "q1": format_rational(self.q1), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "AlgebraicNumber":
        missing = {"q0", "q1", "d"} - set(obj)
        if missing:
            raise ValueError(f"alpha is missing field(s) {sorted(missing)}")
        d = obj["d"]
        if isinstance(d, bool) or not isinstance(d, int):
            raise ValueError(f"alpha.d must be an integer, got {d!r}")
        return cls(parse_rational(obj["q0"]), parse_rational(obj["q1"]), d)

    def __str__(self) -> str:
        if self.is_rational:
            return format_rational(self.q0)
        return f"{format_rational(self.q0)} + {format_rational(self.q1)}*sqrt({self.d})"


def minimal_relation(a: AlgebraicNumber) -> tuple[int, int, int]:
    """Primitive integers (c0, c1, c2), highest nonzero positive, with c0 + c1*a + c2*a^2 = 0."""
    if a.is_rational:
        c = (-a.q0.numerator, a.q0.denominator, 0)
    else:
        # (x - q0)^2 = q1^2 d
        coeffs = (a.q0 * a.q0 - a.q1 * a.q1 * a.d, -2 * a.q0, Fraction(1))
        den = math.lcm(*(x.denominator for x in coeffs))
        c = tuple(int(x * den) for x in coeffs)
    g = math.gcd(*c)
    return tuple(x // g for x in c)
