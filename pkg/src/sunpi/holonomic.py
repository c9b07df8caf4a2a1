"""Linear recurrences with polynomial coefficients: verify, guess, certify ratios.

Recurrences are found by exact linear algebra over the rationals and then
checked on an extended range. No creative-telescoping certificate is
produced, so a guessed recurrence for a definite sum is verified rather
than proved. The closed-form side of a hypergeometric identity is proved
exactly through its term ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from sunpi import polynomials as poly

SequenceFn = Callable[[int], Fraction]

EXTRA_EQUATIONS = 10
VERIFY_EXTRA = 50


@dataclass(frozen=True)
class Recurrence:
    """sum_j p_j(n) a(n+j) = 0, stored primitive with positive leading coefficient."""

    coefficient_polys: tuple

    def __post_init__(self):
        polys = [poly.normalize(tuple(Fraction(c) for c in p)) for p in self.coefficient_polys]
        while polys and not polys[-1]:
            polys.pop()
        if len(polys) < 2:
            raise ValueError("a recurrence needs a nonzero leading polynomial and order >= 1")
        flat = [c for p in polys for c in p]
        den = math.lcm(*(c.denominator for c in flat))
        ints = [[int(c * den) for c in p] for p in polys]
        g = math.gcd(*(c for p in ints for c in p))
        sign = 1 if ints[-1][-1] > 0 else -1
        canon = tuple(tuple(sign * c // g for c in p) for p in ints)
        object.__setattr__(self, "coefficient_polys", canon)

    @property
    def order(self) -> int:
        return len(self.coefficient_polys) - 1

    @property
    def degree(self) -> int:
        return max(poly.degree(p) for p in self.coefficient_polys)

    def apply(self, seq: SequenceFn, n: int) -> Fraction:
        return sum(
            (poly.evaluate(p, n) * seq(n + j) for j, p in enumerate(self.coefficient_polys) if p),
            Fraction(0),
        )

    def to_json(self) -> list:
        return [[str(c) for c in p] for p in self.coefficient_polys]

    @classmethod
    def from_json(cls, obj: list) -> "Recurrence":
        if not isinstance(obj, list) or not all(isinstance(p, list) for p in obj):
            raise ValueError("recurrence must be a list of coefficient lists")
        return cls(tuple(tuple(int(c) for c in p) for p in obj))

    def __str__(self) -> str:
        parts = []
        for j, p in enumerate(self.coefficient_polys):
            if p:
                shift = "n" if j == 0 else f"n+{j}"
                parts.append(f"({poly.render(p)})*a({shift})")
        return " + ".join(reversed(parts)) + " = 0"


def verify_recurrence(rec: Recurrence, seq: SequenceFn, n_max: int) -> bool:
    """Exact check of the recurrence for 0 <= n <= n_max - order."""
    if n_max < rec.order:
        raise ValueError("n_max must be at least the recurrence order")
    return all(rec.apply(seq, n) == 0 for n in range(n_max - rec.order + 1))


def _integer_rows(rows: list[list[Fraction]]) -> list[list[int]]:
    out = []
    for r in rows:
        den = math.lcm(*(v.denominator for v in r))
        out.append([int(v * den) for v in r])
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Right nullspace basis: Bareiss fraction-free echelon form, then back substitution."""
    m = _integer_rows(rows)
    pivots: list[int] = []
    rank, prev = 0, 1
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for i in range(rank + 1, len(m)):
            mi = m[i]
            m[i] = [(pr[c] * mi[k] - mi[c] * pr[k]) // prev for k in range(ncols)]
        prev = pr[c]
        pivots.append(c)
        rank += 1
        if rank == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i in range(rank - 1, -1, -1):
            pc = pivots[i]
            acc = sum((m[i][k] * v[k] for k in range(pc + 1, ncols) if v[k]), Fraction(0))
            v[pc] = -acc / m[i][pc]
        basis.append(v)
    return basis


def _unknown_order(order: int, degree: int) -> list[tuple[int, int]]:
    # high shifts and high powers first, so free columns fall on low-degree terms
    return [(j, i) for j in range(order, -1, -1) for i in range(degree, -1, -1)]


def _cost(rec: Recurrence) -> tuple:
    total_degree = sum(poly.degree(p) for p in rec.coefficient_polys if p)
    return (rec.order, total_degree, rec.coefficient_polys)


def guess_recurrence(seq: SequenceFn, order: int, degree: int) -> Recurrence | None:
    """Find sum_{j<=order} p_j(n) seq(n+j) = 0 with deg p_j <= degree, if one exists."""
    if order < 1 or degree < 0:
        raise ValueError("order must be >= 1 and degree >= 0")
    unknowns = _unknown_order(order, degree)
    n_eq = len(unknowns) + EXTRA_EQUATIONS
    values = [Fraction(seq(n)) for n in range(n_eq + order)]
    rows = [[n**i * values[n + j] for (j, i) in unknowns] for n in range(n_eq)]
    basis = _nullspace(rows, len(unknowns))
    if not basis:
        return None
    candidates = []
    for v in basis:
        polys = [[Fraction(0)] * (degree + 1) for _ in range(order + 1)]
        for (j, i), c in zip(unknowns, v):
            polys[j][i] = c
        try:
            candidates.append(Recurrence(tuple(tuple(p) for p in polys)))
        except ValueError:
            # only p_0 survives: the data has zeros, not a recurrence
            continue
    if not candidates:
        return None
    best = min(candidates, key=_cost)
    extended = n_eq + order + VERIFY_EXTRA
    if not verify_recurrence(best, seq, extended):
        return None
    return best


# Hypergeometric closed forms: products of binomials C(a n + b, c n + d)^e.


def _factorial_shift_ratio(a: int, b: int) -> tuple:
    """(a(n+1) + b)! / (a n + b)! as a polynomial in n, for a >= 0."""
    if a < 0:
        raise ValueError("factorial arguments must have nonnegative slope")
    return poly.product((b + k, a) for k in range(1, a + 1))


def binomial_product_ratio(factors: Sequence[tuple[int, int, int, int, int]]) -> tuple[tuple, tuple]:
    """Term ratio f(n+1)/f(n) of f(n) = prod C(a n + b, c n + d)^e.

    Returns (numerator, denominator) as coprime integer polynomials with no
    common integer content and a positive leading denominator coefficient.
    """
    num: tuple = (1,)
    den: tuple = (1,)
    for a, b, c, d, e in factors:
        top = _factorial_shift_ratio(a, b)
        bottom = poly.mul(_factorial_shift_ratio(c, d), _factorial_shift_ratio(a - c, b - d))
        for _ in range(e):
            num, den = poly.mul(num, top), poly.mul(den, bottom)
    g = poly.gcd(num, den)
    num = poly.divmod_poly(num, g)[0]
    den = poly.divmod_poly(den, g)[0]
    both = [Fraction(c) for c in num + den]
    scale = Fraction(math.lcm(*(c.denominator for c in both)), math.gcd(*(c.numerator for c in both)))
    if den[-1] < 0:
        scale = -scale
    return tuple(int(c * scale) for c in num), tuple(int(c * scale) for c in den)


LEMMA1_FACTORS = ((2, 0, 1, 0, 2), (3, 0, 1, 0, 1))


def closed_form_term_ratio() -> tuple[tuple, tuple]:
    """Exact ratio C(2n+2,n+1)^2 C(3n+3,n+1) / (C(2n,n)^2 C(3n,n))."""
    return binomial_product_ratio(LEMMA1_FACTORS)


def ratio_value(ratio: tuple[tuple, tuple], n) -> Fraction:
    num, den = ratio
    return Fraction(poly.evaluate(num, n)) / poly.evaluate(den, n)


def ratio_satisfies(ratio: tuple[tuple, tuple], rec: Recurrence) -> bool:
    """Whether a term with this ratio satisfies an order-1 recurrence identically.

    p_1(n) * num(n) + p_0(n) * den(n) must be the zero polynomial.
    """
    if rec.order != 1:
        raise ValueError("only order-1 recurrences are checked against a term ratio")
    num, den = ratio
    p0, p1 = rec.coefficient_polys
    return poly.add(poly.mul(p1, num), poly.mul(p0, den)) == ()


# Recurrences quoted from the derivation, in expanded form.

LEMMA1_RECURRENCE = Recurrence(
    (
        poly.scale(poly.product([(2, 3), (1, 2), (1, 3)]), -6),
        poly.product([(1, 1)] * 3),
    )
)

SUN_RECURRENCE = Recurrence(
    (
        poly.product([(1, 1), (5, 6), (7, 6)]),
        poly.scale(poly.mul((3, 2), (47, 54, 18)), -4),
        poly.scale(poly.product([(2, 1)] * 3), 144),
    )
)
