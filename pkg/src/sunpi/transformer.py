"""Zero identities from summed recurrences, and linear combination of identities.

If sum_j p_j(n) a(n+j) = 0 for all n and a decays geometrically, summing over
n >= 0 and reindexing k = n + j gives

    sum_k P(k) a(k) = B,   P(k) = sum_j p_j(k - j),
    B = sum_{j>=1} sum_{k<j} p_j(k - j) a(k).

Adding multiples of such an identity to a known evaluation produces new
series with the same value class.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from sunpi import polynomials as poly
from sunpi.algebraic import AlgebraicNumber
from sunpi.exactmath import format_rational, parse_rational
from sunpi.holonomic import Recurrence, SequenceFn, verify_recurrence
from sunpi.kernels import (
    SUN_KERNEL,
    ConvolutionKernel,
    PolynomialWeight,
    SunSeries,
    series_from_json,
    series_to_json,
)

CONVERGENCE_NOTE = "convergence assumed, verified numerically"
DECAY_CHECK_TERMS = 60


class TransformError(ValueError):
    pass


@dataclass(frozen=True)
class AlgebraicValue:
    """algebraic * pi**pi_power."""

    algebraic: AlgebraicNumber
    pi_power: int = -1

    def __post_init__(self):
        if self.pi_power not in (-1, 0):
            raise ValueError("pi_power must be -1 or 0")

    @property
    def is_zero(self) -> bool:
        return self.algebraic.q0 == 0 and self.algebraic.q1 == 0

    def scaled(self, c) -> "AlgebraicValue":
        return AlgebraicValue(self.algebraic * parse_rational(c), self.pi_power)

    def __add__(self, other: "AlgebraicValue") -> "AlgebraicValue":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        if self.pi_power != other.pi_power:
            raise TransformError("cannot add values with different powers of pi")
        return AlgebraicValue(self.algebraic + other.algebraic, self.pi_power)

    def __str__(self) -> str:
        suffix = "/pi" if self.pi_power == -1 else ""
        return f"({self.algebraic}){suffix}"


@dataclass(frozen=True)
class SeriesIdentity:
    """sum_n weight(n) q^n T(n) = value."""

    weight: PolynomialWeight
    q: Fraction
    kernel: ConvolutionKernel
    value: AlgebraicValue

    @property
    def series(self) -> SunSeries:
        alpha = self.value.algebraic if self.value.pi_power == -1 else None
        return SunSeries(self.weight, self.q, self.kernel, alpha)

    @classmethod
    def from_series(cls, series: SunSeries) -> "SeriesIdentity":
        if series.claimed_alpha is None:
            raise TransformError("series has no claimed value")
        return cls(series.weight, series.q, series.kernel, AlgebraicValue(series.claimed_alpha, -1))

    def to_json(self) -> dict:
        obj = series_to_json(SunSeries(self.weight, self.q, self.kernel))
        obj["value"] = dict(self.value.algebraic.to_json(), pi_power=self.value.pi_power)
        return obj

    @classmethod
    def from_json(cls, obj: dict) -> "SeriesIdentity":
        series = series_from_json(obj)
        v = obj["value"]
        return cls(
            series.weight,
            series.q,
            series.kernel,
            AlgebraicValue(AlgebraicNumber.from_json(v), int(v.get("pi_power", -1))),
        )


class ZeroIdentity(NamedTuple):
    """sum_k weight(k) a(k) = boundary."""

    weight: PolynomialWeight
    boundary: Fraction
    boundary_terms: tuple
    convergence: str


def sum_recurrence(
    rec: Recurrence,
    seq_initial: Sequence[Fraction],
    seq: SequenceFn | None = None,
) -> ZeroIdentity:
    """Sum a recurrence over n >= 0 into a polynomial-weight zero identity.

    ``seq_initial`` holds a(0), ..., a(order-1). When the full sequence is
    given it is checked to satisfy ``rec`` and to decay geometrically.
    """
    r = rec.order
    if len(seq_initial) < r:
        raise TransformError(f"need {r} initial values, got {len(seq_initial)}")
    init = [parse_rational(v) for v in seq_initial[:r]]
    polys = rec.coefficient_polys
    weight: tuple = ()
    for j, p in enumerate(polys):
        weight = poly.add(weight, poly.shift(p, -j))
    if not weight:
        raise TransformError("summed recurrence has identically zero weight")
    # boundary coefficient of a(k): sum over j > k of p_j(k - j)
    boundary_terms = tuple(
        sum((poly.evaluate(polys[j], k - j) for j in range(k + 1, r + 1)), Fraction(0)) for k in range(r)
    )
    boundary = sum((c * a for c, a in zip(boundary_terms, init)), Fraction(0))
    if seq is not None:
        _check_sequence(rec, init, seq)
    return ZeroIdentity(PolynomialWeight(weight), boundary, boundary_terms, CONVERGENCE_NOTE)


def _check_sequence(rec: Recurrence, init: list[Fraction], seq: SequenceFn) -> None:
    if [seq(k) for k in range(len(init))] != init:
        raise TransformError("initial values do not match the sequence")
    if not verify_recurrence(rec, seq, DECAY_CHECK_TERMS):
        raise TransformError("recurrence does not annihilate the sequence")
    tail = [abs(seq(n)) for n in range(DECAY_CHECK_TERMS - 16, DECAY_CHECK_TERMS + 1)]
    if any(b > a for a, b in zip(tail, tail[1:])) or not tail[-1] < tail[0]:
        raise TransformError("sequence does not decay; summing the recurrence is not justified")


def combine_identities(
    base: SeriesIdentity,
    zero: ZeroIdentity | tuple,
    lam,
    mu,
    q=None,
    kernel: ConvolutionKernel | None = None,
) -> SeriesIdentity:
    """lam * zero + mu * base.

    The zero identity sums weight(k) * a(k) with a(k) = q^k T(k); its own
    q and kernel, when given, must match the base.
    """
    lam, mu = parse_rational(lam), parse_rational(mu)
    if q is not None and parse_rational(q) != base.q:
        raise TransformError(f"q mismatch: {format_rational(parse_rational(q))} vs {format_rational(base.q)}")
    if kernel is not None and kernel != base.kernel:
        raise TransformError("kernel mismatch")
    weight, boundary = zero[0], zero[1]
    new_weight = weight * lam + base.weight * mu
    zero_value = AlgebraicValue(AlgebraicNumber(parse_rational(boundary) * lam), 0)
    try:
        value = zero_value + base.value.scaled(mu)
    except TransformError:
        raise TransformError("nonzero boundary term cannot be folded into a 1/pi value") from None
    return SeriesIdentity(new_weight, base.q, base.kernel, value)


def clearing_coefficients(base: SeriesIdentity, zero: ZeroIdentity, sign: int) -> tuple[Fraction, Fraction]:
    """(lam, mu) making weight(zero) + sign * base.weight primitive with positive leading term."""
    raw = poly.add(zero.weight.coefficients, poly.scale(base.weight.coefficients, sign))
    if not raw:
        raise TransformError("combination cancels completely")
    _, c = poly.to_integer(raw)
    return 1 / c, Fraction(sign) / c


def derive_theorem2(base: SeriesIdentity, zero: ZeroIdentity) -> dict[str, SeriesIdentity]:
    """The subtracted and added combinations, denominators cleared."""
    out = {}
    for name, sign in (("th2", -1), ("th2.2", +1)):
        lam, mu = clearing_coefficients(base, zero, sign)
        out[name] = combine_identities(base, zero, lam, mu)
    return out


def sun_recurrence_identity(q=Fraction(1, 2), kernel: ConvolutionKernel = SUN_KERNEL):
    """Convenience: zero identity for a(n) = q^n T(n) from the guessed recurrence."""
    from sunpi.holonomic import guess_recurrence
    from sunpi.kernels import normalized_sequence

    seq = normalized_sequence(SunSeries(PolynomialWeight(), q, kernel))
    rec = guess_recurrence(seq, 2, 3)
    if rec is None:
        raise TransformError("no order-2, degree-3 recurrence found")
    return rec, sum_recurrence(rec, [seq(0), seq(1)], seq)
