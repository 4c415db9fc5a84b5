#!/usr/bin/env python3
"""Run the acceptance suite and print a PASS/FAIL table.

Full reports go to --out as JSON lines when given.
"""

import argparse
import json
import time

from matforge.suite import CRITERIA, DEFAULT_SEED, SuiteConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--only", help="comma-separated criterion numbers")
    ap.add_argument("--out")
    args = ap.parse_args()

    only = {int(x) for x in args.only.split(",")} if args.only else None
    cfg = SuiteConfig(seed=args.seed, workers=args.workers)
    sink = open(args.out, "w") if args.out else None
    failures = 0
    try:
        t0 = time.perf_counter()
        for k, reports in run_suite(cfg, only):
            bad = [r for r in reports if not r.passed]
            failures += bool(bad)
            print(f"{k:>2}  {'FAIL' if bad else 'PASS'}  {CRITERIA[k][0]}  ({len(reports)} reports)")
            for r in bad:
                print(f"      {r.claim}: {json.dumps(r.params, sort_keys=True)}")
            if sink:
                for r in reports:
                    sink.write(json.dumps({"criterion": k, **r.to_dict()}, sort_keys=True) + "\n")
        print(f"done in {time.perf_counter() - t0:.1f}s, {failures} failing")
    finally:
        if sink:
            sink.close()
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
