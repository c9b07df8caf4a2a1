#!/usr/bin/env python3
"""Run every identity check in sequence and write one text report.

    python3 scripts/reproduce_identities.py --digits 30 --out results/identities.txt
"""

import argparse
import contextlib
import io
import sys
import time
from pathlib import Path

from sunpi.cli import main as sunpi

STEPS = [
    ["eval", "--row", "1"],
    ["verify-recurrence", "--sequence", "lemma1", "--n-max", "100"],
    ["guess-recurrence"],
    ["theorem2"],
    ["p-check", "--z", "1/4"],
    ["p-check", "--z", "1/2"],
    ["verify-table"],
    ["verify-table", "--row", "sun-incorrect-422"],
    ["identify", "--row", "1"],
    ["congruence", "--pmin", "5", "--pmax", "199"],
]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--digits", type=int, default=30)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args(argv)

    chunks, statuses = [], []
    for step in STEPS:
        buf = io.StringIO()
        start = time.perf_counter()
        with contextlib.redirect_stdout(buf):
            status = sunpi(step + ["--digits", str(args.digits)])
        statuses.append(status)
        chunks.append(buf.getvalue() + f"exit {status}\n")
        print(f"{' '.join(step):55s} exit {status}  {time.perf_counter() - start:6.2f} s", file=sys.stderr)

    report = "\n".join(chunks)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(report)
    else:
        sys.stdout.write(report)
    return 0 if all(s == 0 for s in statuses) else 1


if __name__ == "__main__":
    sys.exit(main())
