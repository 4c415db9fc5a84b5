#!/usr/bin/env python3
"""Check every U candidate and print a per-k summary plus the overall report."""

import argparse
import json
from collections import Counter

from matforge.frame import sweep_all_U


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--jsonl", help="also write one line per U to this file")
    args = ap.parse_args()

    results = []
    report = sweep_all_U(workers=args.workers, emit=results.append)
    by_k = Counter(r["k"] for r in results)
    ranks = Counter(r["rank"] for r in results)
    for k in sorted(by_k):
        print(f"k={k}: {by_k[k]} matrices checked")
    print(f"ranks seen: {dict(ranks)}")
    print(f"signed-graphic: {sum(r['signed_graphic'] for r in results)}")
    if args.jsonl:
        with open(args.jsonl, "w") as fh:
            for r in results:
                fh.write(json.dumps(r) + "\n")
    print(report.to_json())
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
