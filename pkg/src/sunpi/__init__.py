"""Evaluation, verification and derivation of Sun-type double-binomial series for 1/pi."""

from sunpi.exactmath import Rational, integer_binomial, parse_rational, pochhammer, rational_binomial
from sunpi.algebraic import AlgebraicNumber
from sunpi.kernels import ConvolutionKernel, HypSeries, PolynomialWeight, SunSeries

__all__ = [
    "AlgebraicNumber",
    "ConvolutionKernel",
    "HypSeries",
    "PolynomialWeight",
    "Rational",
    "SunSeries",
    "integer_binomial",
    "parse_rational",
    "pochhammer",
    "rational_binomial",
]

__version__ = "0.1.0"
