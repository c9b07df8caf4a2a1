"""The bundled table of (a, b, q, alpha) rows and negative fixtures."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from sunpi.algebraic import AlgebraicNumber
from sunpi.exactmath import parse_rational
from sunpi.kernels import ConvolutionKernel, PolynomialWeight, SunSeries

DATASET = "table1.json"


@dataclass(frozen=True)
class TableRow:
    key: str
    a: int
    b: int
    q: Fraction
    alpha: AlgebraicNumber
    alpha_text: str
    kernel: ConvolutionKernel

    @property
    def series(self) -> SunSeries:
        return SunSeries(PolynomialWeight.of(self.b, self.a), self.q, self.kernel, self.alpha, name=self.key)


def dataset_bytes() -> bytes:
    return resources.files("sunpi").joinpath("data", DATASET).read_bytes()


def _row(obj: dict, kernel: ConvolutionKernel) -> TableRow:
    return TableRow(
        str(obj["row"]),
        int(obj["a"]),
        int(obj["b"]),
        parse_rational(obj["q"]),
        AlgebraicNumber.from_json(obj["alpha"]),
        obj.get("alpha_text", ""),
        kernel,
    )


def load_table() -> tuple[list[TableRow], dict[str, TableRow]]:
    data = json.loads(dataset_bytes())
    kernel = ConvolutionKernel(parse_rational(data["kernel"]["x"]), parse_rational(data["kernel"]["y"]))
    rows = [_row(r, kernel) for r in data["rows"]]
    fixtures = {str(f["row"]): _row(f, kernel) for f in data.get("fixtures", [])}
    return rows, fixtures


def lookup(key: str) -> TableRow:
    rows, fixtures = load_table()
    for r in rows:
        if r.key == str(key):
            return r
    if str(key) in fixtures:
        return fixtures[str(key)]
    raise KeyError(f"no table row or fixture named {key!r}")
