#!/usr/bin/env python3
"""For each table row, evaluate S*pi at high precision and identify it.

Rows whose printed constant fails are compared with the recovered one; the
ratio recovered/printed is reported so a dropped factor stands out. A
weight scan over a*n + b with small a looks for the nearest row that the
printed constant does fit.
"""

import argparse
import sys
from fractions import Fraction

import mpmath

from sunpi.evaluator import eval_series
from sunpi.identify import find_alpha, verify_alpha
from sunpi.kernels import PolynomialWeight, SunSeries
from sunpi.table import load_table

DIGITS = 60


def identify_sum(series, digits=DIGITS):
    r = eval_series(series, digits)
    with mpmath.workprec(r.precision):
        v = r.value * mpmath.pi
        return v, find_alpha(v, coeff_bound=10**18, digits=digits - 5)


def scan_weights(row, a_max):
    """Weights a*n + b (b fixed) whose sum is a quadratic surd over pi."""
    hits = []
    for a in range(1, a_max + 1):
        s = SunSeries(PolynomialWeight.of(row.b, a), row.q, row.kernel)
        _, alpha = identify_sum(s, 50)
        if alpha is not None and alpha.q0 == 0:
            hits.append((a, alpha))
    return hits


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scan", type=int, default=40, help="largest a tried for failing rows")
    args = ap.parse_args(argv)

    rows, fixtures = load_table()
    for row in rows + list(fixtures.values()):
        check = verify_alpha(row.series, row.alpha, 30)
        v, alpha = identify_sum(row.series)
        print(f"row {row.key}: {row.b:+d} + {row.a}n, q={row.q}")
        print(f"   printed   {row.alpha_text}: {'PASS' if check.holds else 'FAIL'}")
        print(f"   S*pi      {mpmath.nstr(v, 30)}")
        print(f"   recovered {alpha}")
        if not check.holds:
            if alpha is not None and alpha.q1 and row.alpha.q1 and alpha.d == row.alpha.d:
                print(f"   recovered/printed = {alpha.q1 / row.alpha.q1}")
            for a, hit in scan_weights(row, args.scan):
                mark = "  <- printed constant" if hit == row.alpha else ""
                print(f"   weight {a}n{row.b:+d}: {hit}{mark}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
