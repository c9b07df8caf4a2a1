#!/usr/bin/env python3
"""Sweep the mod p^2 supercongruence over a prime range, with timing per prime.

    python3 scripts/congruence_sweep.py --pmax 1000 --workers 4
"""

import argparse
import json
import sys
import time

from sunpi.congruence import check_supercongruence, check_supercongruence_exact, primes_in, sweep

ORACLE_MAX = 13


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pmin", type=int, default=5)
    ap.add_argument("--pmax", type=int, default=199)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    primes = primes_in(args.pmin, args.pmax)
    slowest = max(primes[-3:], default=None)
    if slowest:
        t0 = time.perf_counter()
        check_supercongruence(slowest)
        per_prime = time.perf_counter() - t0
        print(f"largest prime {slowest}: {per_prime:.3f} s", file=sys.stderr)

    start = time.perf_counter()
    verdicts = sweep(args.pmin, args.pmax, workers=args.workers)
    elapsed = time.perf_counter() - start

    disagree = [p for p in primes if p <= ORACLE_MAX and check_supercongruence(p) != check_supercongruence_exact(p)]
    fails = [v.p for v in verdicts if not v.holds]
    if args.json:
        json.dump({"verdicts": [v.to_json() for v in verdicts], "fails": fails, "oracle_disagreements": disagree}, sys.stdout, indent=1)
        print()
    else:
        for v in verdicts:
            print(v.line())
        print(f"{len(verdicts) - len(fails)}/{len(verdicts)} hold; oracle disagreements {disagree}")
    print(f"sweep {elapsed:.2f} s with {args.workers} worker(s)", file=sys.stderr)
    return 1 if fails or disagree else 0


if __name__ == "__main__":
    sys.exit(main())
