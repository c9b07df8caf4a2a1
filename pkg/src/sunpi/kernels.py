"""Exact term generators and the series definition types.

The central object is the double-binomial convolution

    T(n) = sum_k C(-x, k) C(x-1, n-k) C(-y, k) C(y-1, n-k)

and the series sum_n w(n) q^n T(n) built from it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from sunpi import polynomials as poly
from sunpi.algebraic import AlgebraicNumber
from sunpi.exactmath import (
    binomial_prefix,
    format_rational,
    integer_binomial,
    parse_rational,
    rational_binomial,
)

SequenceFn = Callable[[int], Fraction]


class SeriesDefinitionError(ValueError):
    """A series definition object is malformed; ``field`` names the offender."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class ConvolutionKernel:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        x, y = parse_rational(self.x), parse_rational(self.y)
        if x == 0 or y == 0:
            raise ValueError("kernel parameters must be nonzero")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def swapped(self) -> "ConvolutionKernel":
        return ConvolutionKernel(self.y, self.x)

    def left_factors(self, count: int) -> list[Fraction]:
        """``C(-x, k) C(-y, k)`` for k < count."""
        bx, by = binomial_prefix(-self.x, count), binomial_prefix(-self.y, count)
        return [a * b for a, b in zip(bx, by)]

    def right_factors(self, count: int) -> list[Fraction]:
        """``C(x-1, j) C(y-1, j)`` for j < count."""
        bx, by = binomial_prefix(self.x - 1, count), binomial_prefix(self.y - 1, count)
        return [a * b for a, b in zip(bx, by)]


SUN_KERNEL = ConvolutionKernel(Fraction(1, 3), Fraction(1, 6))


@dataclass(frozen=True)
class PolynomialWeight:
    """Weight polynomial; ``coefficients[i]`` multiplies n^i."""

    coefficients: tuple = (Fraction(1),)

    def __post_init__(self):
        coeffs = tuple(parse_rational(c) for c in self.coefficients)
        coeffs = poly.normalize(coeffs) or (Fraction(0),)
        object.__setattr__(self, "coefficients", coeffs)

    @classmethod
    def of(cls, *coefficients) -> "PolynomialWeight":
        return cls(tuple(coefficients))

    def __call__(self, n) -> Fraction:
        return poly.evaluate(self.coefficients, n)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __add__(self, other: "PolynomialWeight") -> "PolynomialWeight":
        return PolynomialWeight(poly.add(self.coefficients, other.coefficients))

    def __mul__(self, c) -> "PolynomialWeight":
        return PolynomialWeight(poly.scale(self.coefficients, parse_rational(c)))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return poly.render(self.coefficients)


@dataclass(frozen=True)
class SunSeries:
    weight: PolynomialWeight
    q: Fraction
    kernel: ConvolutionKernel = SUN_KERNEL
    claimed_alpha: AlgebraicNumber | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", parse_rational(self.q))

    def term(self, n: int) -> Fraction:
        return sun_term(self, n)

    def terms(self, count: int) -> list[Fraction]:
        """First ``count`` terms; O(count^2) rational operations in total."""
        values = kernel_prefix(self.kernel, count)
        out = []
        qn = Fraction(1)
        for n, t in enumerate(values):
            out.append(self.weight(n) * qn * t)
            qn *= self.q
        return out


@dataclass(frozen=True)
class HypSeries:
    """sum_k w(k) * prod (upper)_k / (prod (lower)_k * k!) * argument^k."""

    upper: tuple
    lower: tuple
    argument: Fraction
    weight: PolynomialWeight = PolynomialWeight()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        upper = tuple(parse_rational(a) for a in self.upper)
        lower = tuple(parse_rational(b) for b in self.lower)
        for b in lower:
            if b <= 0 and b.denominator == 1:
                raise ValueError(f"lower parameter {b} is a nonpositive integer")
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "argument", parse_rational(self.argument))

    @property
    def terminates_at(self) -> int | None:
        """Index of the first identically zero term, if an upper parameter is a nonpositive integer."""
        cut = [-a for a in self.upper if a <= 0 and a.denominator == 1]
        return int(min(cut)) + 1 if cut else None

    def ratio(self, k: int) -> Fraction:
        """Exact ratio of the unweighted terms, ``c_{k+1} / c_k``."""
        r = self.argument / (k + 1)
        for a in self.upper:
            r *= a + k
        for b in self.lower:
            r /= b + k
        return r

    def term(self, k: int) -> Fraction:
        return hyp_term(self, k)

    def terms(self, count: int) -> list[Fraction]:
        out = []
        c = Fraction(1)
        for k in range(count):
            out.append(self.weight(k) * c)
            if c:
                c *= self.ratio(k)
        return out


def kernel_term(kernel: ConvolutionKernel, n: int) -> Fraction:
    """T(n) by direct summation over k."""
    return sum(
        (
            rational_binomial(-kernel.x, k)
            * rational_binomial(kernel.x - 1, n - k)
            * rational_binomial(-kernel.y, k)
            * rational_binomial(kernel.y - 1, n - k)
            for k in range(n + 1)
        ),
        Fraction(0),
    )


def kernel_prefix(kernel: ConvolutionKernel, count: int) -> list[Fraction]:
    """``[T(0), ..., T(count-1)]`` sharing the binomial prefixes."""
    left, right = kernel.left_factors(count), kernel.right_factors(count)
    return [sum((left[k] * right[n - k] for k in range(n + 1)), Fraction(0)) for n in range(count)]


def sun_term(series: SunSeries, n: int) -> Fraction:
    return series.weight(n) * series.q**n * kernel_term(series.kernel, n)


def lemma1_lhs(n: int) -> Fraction:
    """``108^n sum_k C(-1/3,k) C(-1/6,k) C(-1/3,n-k) C(-1/6,n-k)``."""
    third, sixth = Fraction(-1, 3), Fraction(-1, 6)
    c = [rational_binomial(third, k) * rational_binomial(sixth, k) for k in range(n + 1)]
    return 108**n * sum((c[k] * c[n - k] for k in range(n + 1)), Fraction(0))


def lemma1_rhs(n: int) -> int:
    return integer_binomial(2 * n, n) ** 2 * integer_binomial(3 * n, n)


def hyp_term(series: HypSeries, k: int) -> Fraction:
    num = Fraction(1)
    for a in series.upper:
        for i in range(k):
            num *= a + i
    den = Fraction(1)
    for b in series.lower:
        for i in range(k):
            den *= b + i
    for i in range(1, k + 1):
        den *= i
    return series.weight(k) * num / den * series.argument**k


GUILLERA = HypSeries(
    upper=(Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)),
    lower=(Fraction(1), Fraction(1)),
    argument=Fraction(1, 2),
    weight=PolynomialWeight.of(1, 6),
    name="guillera",
)

THEOREM1 = SunSeries(
    PolynomialWeight.of(-1, 3),
    Fraction(1, 2),
    SUN_KERNEL,
    AlgebraicNumber(0, Fraction(3, 2), 6),
    name="theorem1",
)


def normalized_sequence(series: SunSeries) -> SequenceFn:
    """The unweighted sequence ``q^n T(n)`` of a series, memoized by prefix."""
    cache: list[Fraction] = []

    def seq(n: int) -> Fraction:
        if n >= len(cache):
            unit = SunSeries(PolynomialWeight(), series.q, series.kernel)
            cache[:] = unit.terms(max(2 * len(cache), n + 1))
        return cache[n]

    return seq


# Series definition objects (JSON).


def series_to_json(series: SunSeries) -> dict:
    obj = {
        "kernel": {"x": format_rational(series.kernel.x), "y": format_rational(series.kernel.y)},
        "weight": [format_rational(c) for c in series.weight.coefficients],
        "q": format_rational(series.q),
    }
    if series.claimed_alpha is not None:
        obj["alpha"] = series.claimed_alpha.to_json()
    return obj


def _field(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise SeriesDefinitionError(where or "<root>", "expected an object")
    if key not in obj:
        raise SeriesDefinitionError(f"{where}.{key}" if where else key, "missing")
    return obj[key]


def _rational_field(obj: dict, key: str, where: str = "") -> Fraction:
    path = f"{where}.{key}" if where else key
    try:
        return parse_rational(_field(obj, key, where))
    except ValueError as exc:
        raise SeriesDefinitionError(path, str(exc)) from None


def series_from_json(obj: dict, name: str = "") -> SunSeries:
    kernel_obj = _field(obj, "kernel", "")
    try:
        kernel = ConvolutionKernel(
            _rational_field(kernel_obj, "x", "kernel"), _rational_field(kernel_obj, "y", "kernel")
        )
    except SeriesDefinitionError:
        raise
    except ValueError as exc:
        raise SeriesDefinitionError("kernel", str(exc)) from None
    raw_weight = _field(obj, "weight", "")
    if not isinstance(raw_weight, list) or not raw_weight:
        raise SeriesDefinitionError("weight", "expected a nonempty list of rationals")
    weight = []
    for i, c in enumerate(raw_weight):
        try:
            weight.append(parse_rational(c))
        except ValueError as exc:
            raise SeriesDefinitionError(f"weight[{i}]", str(exc)) from None
    q = _rational_field(obj, "q")
    alpha = None
    if obj.get("alpha") is not None:
        try:
            alpha = AlgebraicNumber.from_json(obj["alpha"])
        except (ValueError, TypeError, AttributeError) as exc:
            raise SeriesDefinitionError("alpha", str(exc)) from None
    return SunSeries(PolynomialWeight(tuple(weight)), q, kernel, alpha, name=name or obj.get("name", ""))


def load_series(path) -> SunSeries:
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SeriesDefinitionError("<file>", f"invalid JSON: {exc}") from None
    return series_from_json(obj)


def hyp_series_to_json(series: HypSeries) -> dict:
    return {
        "upper": [format_rational(a) for a in series.upper],
        "lower": [format_rational(b) for b in series.lower],
        "argument": format_rational(series.argument),
        "weight": [format_rational(c) for c in series.weight.coefficients],
    }


def hyp_series_from_json(obj: dict, name: str = "") -> HypSeries:
    return HypSeries(
        tuple(parse_rational(a) for a in obj["upper"]),
        tuple(parse_rational(b) for b in obj["lower"]),
        parse_rational(obj["argument"]),
        PolynomialWeight(tuple(parse_rational(c) for c in obj.get("weight", ["1"]))),
        name=name,
    )


def iter_terms(series: SunSeries | HypSeries, chunk: int = 64) -> Iterator[Fraction]:
    """Exact terms in order, generated prefix-wise (kernel factors reused)."""
    if isinstance(series, HypSeries):
        c = Fraction(1)
        k = 0
        while True:
            yield series.weight(k) * c
            c *= series.ratio(k) if c else 0
            k += 1
    left: list[Fraction] = []
    right: list[Fraction] = []
    n = 0
    qn = Fraction(1)
    while True:
        if n >= len(left):
            size = len(left) + chunk
            left, right = series.kernel.left_factors(size), series.kernel.right_factors(size)
        t = sum((left[k] * right[n - k] for k in range(n + 1)), Fraction(0))
        yield series.weight(n) * qn * t
        qn *= series.q
        n += 1
