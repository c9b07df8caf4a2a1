"""High-precision summation with explicit truncation and rounding bounds.

Tail control: once at least ``WINDOW`` + 1 terms are summed, the last
``WINDOW`` term-ratio magnitudes must all be at most ``rho``, the midpoint
between the limiting ratio and 1. The remainder after the last summed term
t_N is then bounded by |t_N| rho / (1 - rho). This is a heuristic with a
safety margin; the exact-rational mode exists as a cross-check.

Rounding control (float mode): every term arrives with an absolute error
bound, and each addition to the partial sum contributes one unit roundoff of
the running sum. The working precision is target bits + 32 guard bits +
ceil(log2 N), and evaluation is restarted at higher precision if the
accumulated rounding bound would eat more than a quarter of the tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from typing import Callable, Iterable, Iterator

import mpmath
from mpmath.libmp import from_rational, round_up

from sunpi.exactmath import bigfloat_to_fraction, digits_to_bits, to_bigfloat
from sunpi.kernels import (
    ConvolutionKernel,
    HypSeries,
    PolynomialWeight,
    SunSeries,
    iter_terms,
    lemma1_rhs,
)

WINDOW = 16
GUARD_BITS = 32
EXACT_MAX_DIGITS = 30
EXACT_MAX_TERMS = 300
FLOAT = "float-with-guard"
EXACT = "exact-rational"


class EvaluationError(ArithmeticError):
    """Divergent input, invalid parameters, or an unvalidated tail."""


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpf
    error_bound: mpmath.mpf
    terms_used: int
    mode: str
    precision: int
    exact: Fraction | None = None

    def render(self, digits: int) -> str:
        return render_decimal(self.value, digits)

    def to_json(self, digits: int) -> dict:
        return {
            "value": self.render(digits),
            "error_bound": render_bound(self.error_bound),
            "terms_used": self.terms_used,
            "mode": self.mode,
            "precision_bits": self.precision,
        }


def render_decimal(x: mpmath.mpf, digits: int) -> str:
    """Round-half-even to ``digits`` places after the decimal point."""
    exact = bigfloat_to_fraction(x)
    with localcontext() as ctx:
        ctx.prec = digits + 20 + max(0, math.floor(math.log10(abs(exact) + 1)))
        d = Decimal(exact.numerator) / Decimal(exact.denominator)
        return str(d.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))


def render_bound(x: mpmath.mpf) -> str:
    """Scientific notation, three significant digits."""
    exact = bigfloat_to_fraction(x)
    if exact == 0:
        return "0.00e+0"
    with localcontext() as ctx:
        ctx.prec = 40
        d = Decimal(exact.numerator) / Decimal(exact.denominator)
        return format(d, ".2e")


def _tolerance(target_digits: int) -> Fraction:
    return Fraction(1, 10**target_digits)


def _upper_float(r: Fraction) -> mpmath.mpf:
    if r == 0:
        return mpmath.mpf(0)
    with mpmath.workprec(64):
        return mpmath.mpf(from_rational(r.numerator, r.denominator, 64, round_up))


def _exact_result(total: Fraction, terms_used: int, mode: str, prec: int, extra: Fraction = Fraction(0)):
    value = to_bigfloat(total, prec)
    conversion = abs(bigfloat_to_fraction(value) - total)
    return EvalResult(value, _upper_float(conversion + extra), terms_used, mode, prec, exact=total)


def _working_precision(target_digits: int, limit_ratio: float, precision_bits: int | None) -> int:
    if precision_bits is not None:
        return max(64, int(precision_bits))
    if limit_ratio > 0:
        n_est = target_digits * math.log(10) / -math.log(limit_ratio) + 2 * WINDOW
    else:
        n_est = 4 * WINDOW
    return max(64, digits_to_bits(target_digits) + GUARD_BITS + math.ceil(math.log2(n_est)))


def _window_ok(mags: list, rho) -> bool:
    if len(mags) < WINDOW + 1:
        return False
    for prev, cur in zip(mags[-WINDOW - 1 : -1], mags[-WINDOW:]):
        if cur == 0:
            continue
        if prev == 0 or cur > rho * prev:
            return False
    return True


def _sum_float(terms: Iterable, rho: Fraction, tol: Fraction, wp: int, max_terms: int):
    """Sum (value, abs_error) pairs at ``wp`` bits until the tail is certified.

    Returns (sum, tail_bound, rounding_bound, terms_used).
    """
    u = mpmath.ldexp(1, 1 - wp)
    rho_f = mpmath.mpf(rho.numerator) / rho.denominator
    factor = rho_f / (1 - rho_f)
    tol_f = mpmath.mpf(tol.numerator) / tol.denominator
    total = mpmath.mpf(0)
    rounding = mpmath.mpf(0)
    mags: list = []
    for n, (t, e) in enumerate(terms, start=1):
        total += t
        rounding += e + u * abs(total)
        mags.append(abs(t))
        if len(mags) > WINDOW + 1:
            del mags[0]
        if _window_ok(mags, rho_f):
            tail = (mags[-1] + e) * factor
            if tail + rounding <= tol_f:
                return total, tail, rounding, n
        if n >= max_terms:
            break
    raise EvaluationError(f"ratio window did not certify the tail within {max_terms} terms")


def _sum_exact(terms: Iterable[Fraction], rho: Fraction, tol: Fraction, max_terms: int):
    total = Fraction(0)
    mags: list[Fraction] = []
    for n, t in enumerate(terms, start=1):
        total += t
        mags.append(abs(t))
        if len(mags) > WINDOW + 1:
            del mags[0]
        if _window_ok(mags, rho):
            tail = mags[-1] * rho / (1 - rho)
            if tail <= tol / 2:
                return total, tail, n
        if n >= max_terms:
            break
    raise EvaluationError(f"exact mode did not certify the tail within {max_terms} terms")


def _run(
    float_terms: Callable[[int], Iterator],
    exact_terms: Callable[[], Iterator[Fraction]],
    limit_ratio: Fraction,
    target_digits: int,
    mode: str,
    precision_bits: int | None,
    max_terms: int,
) -> EvalResult:
    if limit_ratio >= 1:
        raise EvaluationError(f"limiting term ratio {limit_ratio} is not below 1")
    rho = (limit_ratio + 1) / 2
    tol = _tolerance(target_digits)
    wp = _working_precision(target_digits, float(limit_ratio), precision_bits)
    if mode == EXACT:
        if target_digits > EXACT_MAX_DIGITS:
            raise ValueError(f"exact mode is limited to {EXACT_MAX_DIGITS} digits")
        total, tail, n = _sum_exact(exact_terms(), rho, tol, min(max_terms, EXACT_MAX_TERMS))
        return _exact_result(total, n, EXACT, wp, extra=tail)
    if mode != FLOAT:
        raise ValueError(f"unknown evaluation mode {mode!r}")
    for _ in range(8):
        with mpmath.workprec(wp):
            total, tail, rounding, n = _sum_float(float_terms(wp), rho, tol, wp, max_terms)
            bound = tail + rounding
        if precision_bits is not None or rounding <= mpmath.mpf(tol.numerator) / (4 * tol.denominator):
            return EvalResult(total, bound, n, FLOAT, wp)
        wp += max(32, int(mpmath.log(rounding * 4 * tol.denominator / tol.numerator, 2)) + 16)
    raise EvaluationError("rounding error bound did not settle")


# Float term generators. Each yields (term, absolute error bound) at the
# ambient working precision.


def _kernel_float_terms(
    kernel: ConvolutionKernel,
    weight: Callable[[int], Fraction],
    q: Fraction,
    wp: int,
    shift: int = 0,
    chunk: int = 64,
) -> Iterator:
    """Terms weight(n) * q^n * T(n + shift) by convolution of rounded kernel factors."""
    u = mpmath.ldexp(1, 1 - wp)
    q_f = to_bigfloat(q, wp)
    left: list = []
    right: list = []
    size = 0
    nonneg = True
    qn = mpmath.mpf(1)
    n = 0
    while True:
        m = n + shift
        if m >= size:
            size += chunk
            left_exact, right_exact = kernel.left_factors(size), kernel.right_factors(size)
            nonneg = all(v >= 0 for v in left_exact) and all(v >= 0 for v in right_exact)
            left = [to_bigfloat(v, wp) for v in left_exact]
            right = [to_bigfloat(v, wp) for v in right_exact]
        conv = mpmath.fsum(left[k] * right[m - k] for k in range(m + 1))
        mag = conv if nonneg else mpmath.fsum(abs(left[k] * right[m - k]) for k in range(m + 1))
        w = weight(n)
        t = to_bigfloat(w, wp) * qn * conv
        # factors and products: 3 roundings each; q^n: n roundings; weight, final product: 3
        e = u * abs(to_bigfloat(w, wp) * qn) * mag * (n + m + 12)
        yield t, e
        qn *= q_f
        n += 1


def _rounded_exact_terms(terms: Iterator[Fraction], wp: int) -> Iterator:
    u = mpmath.ldexp(1, -wp)
    for t in terms:
        v = to_bigfloat(t, wp)
        yield v, abs(v) * u


def _ratio_limit(series: SunSeries | HypSeries) -> Fraction:
    if isinstance(series, SunSeries):
        return abs(series.q)
    upper, lower = len(series.upper), len(series.lower) + 1
    if upper < lower:
        return Fraction(0)
    if upper == lower:
        return abs(series.argument)
    raise EvaluationError("hypergeometric series with more upper than lower parameters diverges")


def eval_series(
    series: SunSeries | HypSeries,
    target_digits: int,
    mode: str = FLOAT,
    precision_bits: int | None = None,
    max_terms: int = 200_000,
) -> EvalResult:
    """Sum a kernel or hypergeometric series to an absolute error of 10^-target_digits."""
    wp0 = _working_precision(target_digits, 0.5, precision_bits)
    if isinstance(series, HypSeries) and series.terminates_at is not None:
        total = sum(series.terms(series.terminates_at), Fraction(0))
        return _exact_result(total, series.terminates_at, mode, wp0)
    if isinstance(series, SunSeries) and series.q == 0:
        return _exact_result(series.term(0), 1, mode, wp0)
    if isinstance(series, HypSeries) and series.argument == 0:
        return _exact_result(series.weight(0), 1, mode, wp0)
    limit = _ratio_limit(series)
    if isinstance(series, SunSeries):
        if limit >= 1:
            raise EvaluationError(f"|q| = {limit} is not below 1")

        def float_terms(wp):
            return _kernel_float_terms(series.kernel, series.weight, series.q, wp)

    else:

        def float_terms(wp):
            return _rounded_exact_terms(iter_terms(series), wp)

    return _run(float_terms, lambda: iter_terms(series), limit, target_digits, mode, precision_bits, max_terms)


def eval_2f1(a, b, c, z, target_digits: int, mode: str = FLOAT) -> EvalResult:
    """Gauss series sum (a)_n (b)_n / ((c)_n n!) z^n."""
    try:
        series = HypSeries((a, b), (c,), z)
    except ValueError as exc:
        raise EvaluationError(str(exc)) from None
    if series.terminates_at is None and abs(series.argument) >= 1:
        raise EvaluationError(f"|z| = {abs(series.argument)} is not below 1")
    return eval_series(series, target_digits, mode)


def eval_terms(
    term: Callable[[int], Fraction],
    limit_ratio: Fraction,
    target_digits: int,
    mode: str = FLOAT,
    max_terms: int = 200_000,
) -> EvalResult:
    """Sum an arbitrary exactly computable term sequence with known limiting ratio."""

    def exact_terms():
        n = 0
        while True:
            yield term(n)
            n += 1

    return _run(
        lambda wp: _rounded_exact_terms(exact_terms(), wp),
        exact_terms,
        Fraction(limit_ratio),
        target_digits,
        mode,
        None,
        max_terms,
    )


def eval_P_and_derivative(z, target_digits: int, kernel: ConvolutionKernel | None = None):
    """(P(z), P'(z)) for P(z) = sum_n T(n) z^n, derivative taken termwise."""
    from sunpi.kernels import SUN_KERNEL, kernel_term

    kernel = kernel or SUN_KERNEL
    z = Fraction(z)
    if abs(z) >= 1:
        raise EvaluationError(f"|z| = {abs(z)} is not below 1")
    p = eval_series(SunSeries(PolynomialWeight(), z, kernel), target_digits)
    if z == 0:
        dp = _exact_result(kernel_term(kernel, 1), 1, FLOAT, p.precision)
        return p, dp

    def float_terms(wp):
        return _kernel_float_terms(kernel, lambda n: Fraction(n + 1), z, wp, shift=1)

    def exact_terms():
        for n, t in enumerate(iter_terms(SunSeries(PolynomialWeight.of(0, 1), z, kernel))):
            if n:
                yield t / z

    dp = _run(float_terms, exact_terms, abs(z), target_digits, FLOAT, None, 200_000)
    return p, dp


def eval_lemma1_side(z, target_digits: int, mode: str = FLOAT) -> EvalResult:
    """sum_n (z/108)^n C(2n,n)^2 C(3n,n), the closed-form side of the product identity."""
    w = Fraction(z) / 108
    return eval_terms(lambda n: lemma1_rhs(n) * w**n, abs(Fraction(z)), target_digits, mode)


def combine_bounds(*results: EvalResult) -> mpmath.mpf:
    return mpmath.fsum(r.error_bound for r in results)


@dataclass(frozen=True)
class ProductCheck:
    label: str
    difference: mpmath.mpf
    bound: mpmath.mpf

    @property
    def holds(self) -> bool:
        return bool(abs(self.difference) <= self.bound)


def product_identity_checks(z, target_digits: int) -> tuple[list[ProductCheck], EvalResult, EvalResult]:
    """Compare P(z) with its factorizations; returns the checks, P and P'.

    Each bound adds the propagated evaluation bounds and a few ulps of
    working precision for the final products.
    """
    z = Fraction(z)
    p, dp = eval_P_and_derivative(z, target_digits)
    f1 = eval_2f1(Fraction(1, 3), Fraction(1, 6), 1, z, target_digits)
    f2 = eval_2f1(Fraction(2, 3), Fraction(5, 6), 1, z, target_digits)
    side = eval_lemma1_side(z, target_digits)
    wp = p.precision + 16
    with mpmath.workprec(wp):
        root = 1 / mpmath.sqrt(to_bigfloat(1 - z, wp))
        slack = mpmath.ldexp(1, -p.precision + 8)
        e1, e2 = f1.error_bound, f2.error_bound
        checks = [
            ProductCheck(
                "P - F1*F2",
                p.value - f1.value * f2.value,
                p.error_bound + e1 * abs(f2.value) + e2 * abs(f1.value) + e1 * e2 + slack,
            ),
            ProductCheck(
                "P - (1-z)^(-1/2) F1^2",
                p.value - root * f1.value**2,
                p.error_bound + root * (2 * abs(f1.value) + e1) * e1 + slack,
            ),
            ProductCheck(
                "P - (1-z)^(-1/2) sum (z/108)^n C(2n,n)^2 C(3n,n)",
                p.value - root * side.value,
                p.error_bound + root * side.error_bound + slack,
            ),
        ]
    return checks, p, dp
