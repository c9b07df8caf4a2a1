"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or parse error.
Reports on stdout are deterministic for fixed flags; wall time goes to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

import mpmath

from sunpi import congruence, holonomic, identify, transformer
from sunpi.evaluator import (
    EXACT,
    FLOAT,
    EvaluationError,
    eval_series,
    product_identity_checks,
    render_bound,
    render_decimal,
)
from sunpi.exactmath import format_rational, parse_rational, to_bigfloat
from sunpi.kernels import (
    SUN_KERNEL,
    THEOREM1,
    PolynomialWeight,
    SeriesDefinitionError,
    SunSeries,
    lemma1_lhs,
    load_series,
    normalized_sequence,
)
from sunpi.table import load_table, lookup

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SEQUENCES = ("sun", "lemma1")
IDENTIFY_MIN_DIGITS = 50


class UsageError(Exception):
    pass


class Report:
    def __init__(self, argv: list[str], as_json: bool):
        self.command = "sunpi " + " ".join(argv)
        self.as_json = as_json
        self.lines: list[str] = []
        self.items: list[dict] = []
        self.summary: dict = {}

    def add(self, line: str, **item):
        self.lines.append(line)
        if item:
            self.items.append(item)

    def emit(self, out=None):
        out = sys.stdout if out is None else out
        if self.as_json:
            json.dump({"command": self.command, "items": self.items, **self.summary}, out, indent=2)
            out.write("\n")
        else:
            out.write(f"# {self.command}\n")
            for line in self.lines:
                out.write(line + "\n")


def _series_from_args(args) -> SunSeries:
    if getattr(args, "series_file", None):
        return load_series(args.series_file)
    if getattr(args, "row", None) is not None:
        try:
            return lookup(args.row).series
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    raise UsageError("give a series file or --row")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def cmd_eval(args, report: Report) -> int:
    series = _series_from_args(args)
    result = eval_series(series, args.digits, mode=args.mode, precision_bits=args.precision_bits)
    if not series.weight.is_integral:
        report.add("note: weight has non-integer coefficients")
    report.add(
        f"value {render_decimal(result.value, args.digits)}",
        series=series.name or "file",
        **result.to_json(args.digits),
    )
    report.add(f"error_bound {render_bound(result.error_bound)}")
    report.add(f"terms_used {result.terms_used}")
    return EXIT_OK


def _check_line(label: str, check, digits: int) -> tuple[str, dict]:
    status = "PASS" if check.holds else "FAIL"
    with mpmath.workprec(64):
        residual = render_bound(abs(check.residual))
        rel = render_bound(check.relative_residual)
    line = f"{label}: {status} residual {residual} relative {rel}"
    return line, {"row": label, "status": status, "residual": residual, "relative_residual": rel,
                  "error_bound": render_bound(check.evaluation.error_bound),
                  "terms_used": check.evaluation.terms_used}


def cmd_verify_table(args, report: Report) -> int:
    if args.row is not None:
        try:
            rows = [lookup(args.row)]
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    else:
        rows = load_table()[0]
    failures = 0
    for row in rows:
        check = identify.verify_alpha(row.series, row.alpha, args.digits)
        label = f"row {row.key} ({row.a}n{row.b:+d}, q={format_rational(row.q)}, alpha={row.alpha_text})"
        line, item = _check_line(label, check, args.digits)
        report.add(line, **item)
        failures += not check.holds
    passed = len(rows) - failures
    report.add(f"{passed}/{len(rows)} pass")
    report.summary = {"passed": passed, "total": len(rows)}
    return EXIT_OK if failures == 0 else EXIT_FAIL


def _theorem2_pipeline(report: Report, digits: int):
    rec, zero = transformer.sun_recurrence_identity(THEOREM1.q, THEOREM1.kernel)
    report.add(f"recurrence: {rec}")
    report.add(f"zero identity: sum ({zero.weight}) a(n) = {format_rational(zero.boundary)} ({zero.convergence})")
    base = transformer.SeriesIdentity.from_series(THEOREM1)
    return base, zero


def _report_identity(name: str, ident: transformer.SeriesIdentity, digits: int, report: Report) -> bool:
    result = eval_series(ident.series, digits)
    with mpmath.workprec(result.precision + 16):
        claimed = ident.value.algebraic.value(result.precision + 16)
        if ident.value.pi_power == -1:
            claimed /= mpmath.pi
        residual = abs(result.value - claimed)
        ok = residual <= mpmath.mpf(10) ** (-digits) + result.error_bound
    report.add(
        f"{name}: weight {ident.weight}, value {ident.value}, residual {render_bound(residual)}"
        f" {'PASS' if ok else 'FAIL'}",
        name=name,
        weight=[format_rational(c) for c in ident.weight.coefficients],
        value=ident.to_json()["value"],
        residual=render_bound(residual),
        status="PASS" if ok else "FAIL",
    )
    return bool(ok)


def cmd_theorem2(args, report: Report) -> int:
    base, zero = _theorem2_pipeline(report, args.digits)
    derived = transformer.derive_theorem2(base, zero)
    names = list(derived) if args.which == "all" else [args.which]
    ok = all(_report_identity(n, derived[n], args.digits, report) for n in names)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_derive(args, report: Report) -> int:
    base, zero = _theorem2_pipeline(report, args.digits)
    ident = transformer.combine_identities(base, zero, args.lam, args.mu)
    ok = _report_identity(f"lambda={format_rational(args.lam)} mu={format_rational(args.mu)}", ident, args.digits, report)
    return EXIT_OK if ok else EXIT_FAIL


def _sequence(args):
    if args.sequence == "lemma1":
        return lemma1_lhs, "lemma1_lhs"
    return normalized_sequence(SunSeries(PolynomialWeight(), args.q, SUN_KERNEL)), f"q^n T(n), q={format_rational(args.q)}"


def cmd_guess_recurrence(args, report: Report) -> int:
    seq, label = _sequence(args)
    rec = holonomic.guess_recurrence(seq, args.order, args.degree)
    if rec is None:
        report.add(f"{label}: no recurrence of order {args.order}, degree {args.degree}", found=False)
        return EXIT_FAIL
    report.add(f"{label}: {rec}", found=True, recurrence=rec.to_json())
    return EXIT_OK


def cmd_verify_recurrence(args, report: Report) -> int:
    if args.recurrence_file:
        with open(args.recurrence_file) as fh:
            try:
                rec = holonomic.Recurrence.from_json(json.load(fh))
            except (ValueError, json.JSONDecodeError) as exc:
                raise SeriesDefinitionError("recurrence", str(exc)) from None
    else:
        rec = holonomic.LEMMA1_RECURRENCE if args.sequence == "lemma1" else holonomic.SUN_RECURRENCE
    seq, label = _sequence(args)
    ok = holonomic.verify_recurrence(rec, seq, args.n_max)
    report.add(f"{label}: {rec} {'HOLDS' if ok else 'FAILS'} for n <= {args.n_max}", holds=ok)
    if args.sequence == "lemma1" and rec == holonomic.LEMMA1_RECURRENCE:
        ratio = holonomic.closed_form_term_ratio()
        proved = holonomic.ratio_satisfies(ratio, rec) and lemma1_lhs(0) == 1 and lemma1_lhs(1) == 12
        report.add(f"closed form C(2n,n)^2 C(3n,n) satisfies it identically: {proved}", closed_form=proved)
        ok = ok and proved
    return EXIT_OK if ok else EXIT_FAIL


def cmd_identify(args, report: Report) -> int:
    # recognition needs at least 40 certified digits
    digits = max(args.digits, IDENTIFY_MIN_DIGITS)
    if args.value is not None:
        with mpmath.workdps(digits + 10):
            value = mpmath.mpf(args.value)
    else:
        series = _series_from_args(args)
        result = eval_series(series, digits + 10)
        with mpmath.workprec(result.precision):
            value = result.value * mpmath.pi
    with mpmath.workdps(digits + 10):
        alpha = identify.find_alpha(value, args.coeff_bound, digits=digits)
    if alpha is None:
        report.add("no relation of degree <= 2 within the coefficient bound", found=False)
        return EXIT_FAIL
    rel = identify.minimal_relation(alpha)
    report.add(f"alpha = {alpha}  relation {rel}", found=True, alpha=alpha.to_json(), relation=list(rel))
    return EXIT_OK


def cmd_congruence(args, report: Report) -> int:
    if args.pmin > args.pmax:
        raise UsageError(f"--pmin {args.pmin} exceeds --pmax {args.pmax}")
    verdicts = congruence.sweep(args.pmin, args.pmax, workers=args.workers)
    for v in verdicts:
        report.add(v.line(), **v.to_json())
    fails = sum(not v.holds for v in verdicts)
    report.summary = {"primes": len(verdicts), "fails": fails}
    return EXIT_OK if fails == 0 else EXIT_FAIL


def cmd_p_check(args, report: Report) -> int:
    z, digits = args.z, args.digits
    checks, p, dp = product_identity_checks(z, digits)
    for c in checks:
        status = "PASS" if c.holds else "FAIL"
        with mpmath.workprec(64):
            diff, bound = render_bound(abs(c.difference)), render_bound(c.bound)
        report.add(f"{c.label}: |diff| {diff} <= {bound} {status}", check=c.label, diff=diff, bound=bound, status=status)
    with mpmath.workprec(p.precision + 16):
        op = 3 * to_bigfloat(z, p.precision + 16) * dp.value - p.value
        report.add(f"P({format_rational(z)}) = {render_decimal(p.value, digits)}")
        report.add(f"P'({format_rational(z)}) = {render_decimal(dp.value, digits)}")
        report.add(f"3z P'(z) - P(z) = {render_decimal(op, digits)}", operator=render_decimal(op, digits))
    return EXIT_OK if all(c.holds for c in checks) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sunpi", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--digits", type=int, default=30)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate a series")
    p.add_argument("series_file", nargs="?")
    p.add_argument("--row")
    p.add_argument("--mode", choices=(FLOAT, EXACT), default=FLOAT)
    p.add_argument("--precision-bits", type=int)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify-table", parents=[common], help="check every table row")
    p.add_argument("--row")
    p.set_defaults(func=cmd_verify_table)

    p = sub.add_parser("theorem2", parents=[common], help="derive the cubic-weight identities")
    p.add_argument("--which", choices=("th2", "th2.2", "all"), default="all")
    p.set_defaults(func=cmd_theorem2)

    p = sub.add_parser("derive", parents=[common], help="lambda * zero identity + mu * Theorem 1")
    p.add_argument("--lambda", dest="lam", type=_rational_arg, required=True)
    p.add_argument("--mu", type=_rational_arg, required=True)
    p.set_defaults(func=cmd_derive)

    for name, func in (("guess-recurrence", cmd_guess_recurrence), ("verify-recurrence", cmd_verify_recurrence)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--sequence", choices=SEQUENCES, default="sun")
        p.add_argument("--q", type=_rational_arg, default=Fraction(1, 2))
        if name == "guess-recurrence":
            p.add_argument("--order", type=int, default=2)
            p.add_argument("--degree", type=int, default=3)
        else:
            p.add_argument("--recurrence-file")
            p.add_argument("--n-max", type=int, default=100)
        p.set_defaults(func=func)

    p = sub.add_parser("identify", parents=[common], help="recover alpha from a series or value")
    p.add_argument("series_file", nargs="?")
    p.add_argument("--row")
    p.add_argument("--value", help="decimal value of sum*pi")
    p.add_argument("--coeff-bound", type=int, default=identify.DEFAULT_COEFF_BOUND)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("congruence", parents=[common], help="mod p^2 sweep")
    p.add_argument("--pmin", type=int, default=5)
    p.add_argument("--pmax", type=int, default=199)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_congruence)

    p = sub.add_parser("p-check", parents=[common], help="product and operator identities for P(z)")
    p.add_argument("--z", type=_rational_arg, default=Fraction(1, 2))
    p.set_defaults(func=cmd_p_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(argv, args.json)
    start = time.perf_counter()
    try:
        status = args.func(args, report)
    except (UsageError, congruence.NonLiftableError) as exc:
        parser.error(str(exc))
    except SeriesDefinitionError as exc:
        print(f"sunpi: invalid series definition: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvaluationError, transformer.TransformError, ValueError) as exc:
        print(f"sunpi: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"sunpi: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report.emit()
    print(f"wall time {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
