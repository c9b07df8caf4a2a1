"""Numerical test of the mod p^2 supercongruence for the truncated Theorem 1 sum.

    sum_{n=0}^{p-1} (3n-1)/2^n T(n)  ==  -p (-6|p)   (mod p^2)

The sum is computed natively in Z/p^2Z, lifting every binomial factor. The
exact-rational path (reduce the full rational partial sum) is kept as an
oracle for small p.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from sunpi.exactmath import parse_rational
from sunpi.kernels import THEOREM1, SunSeries


class NonLiftableError(ArithmeticError):
    """A rational whose denominator is divisible by p has no image in Z/p^2Z."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class ResidueRing:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p <= 3 or not is_prime(self.p):
            raise ValueError(f"p = {self.p!r} must be a prime greater than 3")

    @property
    def modulus(self) -> int:
        return self.p * self.p

    def lift(self, r) -> int:
        return rational_mod(r, self)


@dataclass(frozen=True)
class CongruenceVerdict:
    p: int
    lhs_residue: int
    rhs_residue: int

    @property
    def holds(self) -> bool:
        return self.lhs_residue == self.rhs_residue

    def line(self) -> str:
        return f"{self.p}, {self.lhs_residue}, {self.rhs_residue}, {'HOLDS' if self.holds else 'FAILS'}"

    def to_json(self) -> dict:
        return {"p": self.p, "lhs": self.lhs_residue, "rhs": self.rhs_residue, "holds": self.holds}


def rational_mod(r, ring: ResidueRing) -> int:
    r = parse_rational(r)
    m = ring.modulus
    if r.denominator % ring.p == 0:
        raise NonLiftableError(f"denominator of {r} is divisible by {ring.p}")
    return r.numerator * pow(r.denominator, -1, m) % m


def legendre(a: int, p: int) -> int:
    """Euler's criterion."""
    if p < 3 or p % 2 == 0:
        raise ValueError("p must be an odd prime")
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def _binomial_prefix_mod(x: Fraction, count: int, ring: ResidueRing) -> list[int]:
    """C(x, k) mod p^2 for k < count via the ratio (x - i)/(i + 1)."""
    m = ring.modulus
    out = []
    value = 1
    for i in range(count):
        out.append(value)
        if i + 1 == count:
            break
        value = value * rational_mod(x - i, ring) % m
        value = value * pow(i + 1, -1, m) % m
    return out


def truncated_sum_mod(series: SunSeries, terms: int, ring: ResidueRing) -> int:
    """sum_{n<terms} weight(n) q^n T(n) computed in Z/p^2Z."""
    if terms > ring.p:
        raise NonLiftableError("binomial denominators contain p beyond p - 1 terms")
    m = ring.modulus
    x, y = series.kernel.x, series.kernel.y
    bx, by = _binomial_prefix_mod(-x, terms, ring), _binomial_prefix_mod(-y, terms, ring)
    cx, cy = _binomial_prefix_mod(x - 1, terms, ring), _binomial_prefix_mod(y - 1, terms, ring)
    left = [a * b % m for a, b in zip(bx, by)]
    right = [a * b % m for a, b in zip(cx, cy)]
    qr = rational_mod(series.q, ring)
    total, qn = 0, 1
    for n in range(terms):
        t = sum(left[k] * right[n - k] for k in range(n + 1)) % m
        total = (total + rational_mod(series.weight(n), ring) * qn % m * t) % m
        qn = qn * qr % m
    return total


def truncated_sum_exact(series: SunSeries, terms: int) -> Fraction:
    return sum(series.terms(terms), Fraction(0))


def conjecture_rhs(p: int) -> int:
    return (-p * legendre(-6, p)) % (p * p)


def check_supercongruence(p: int) -> CongruenceVerdict:
    ring = ResidueRing(p)
    lhs = truncated_sum_mod(THEOREM1, p, ring)
    return CongruenceVerdict(p, lhs, conjecture_rhs(p))


def check_supercongruence_exact(p: int) -> CongruenceVerdict:
    """Oracle: reduce the exactly computed rational partial sum."""
    ring = ResidueRing(p)
    lhs = rational_mod(truncated_sum_exact(THEOREM1, p), ring)
    return CongruenceVerdict(p, lhs, conjecture_rhs(p))


def primes_in(p_min: int, p_max: int) -> list[int]:
    return [p for p in range(max(5, p_min), p_max + 1) if is_prime(p)]


def sweep(p_min: int, p_max: int, workers: int = 1) -> list[CongruenceVerdict]:
    if p_min > p_max:
        raise ValueError(f"empty range: p_min = {p_min} > p_max = {p_max}")
    primes = primes_in(p_min, p_max)
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(check_supercongruence, primes))
    return [check_supercongruence(p) for p in primes]
