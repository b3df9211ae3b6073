"""Run every suite once and print a per-suite summary with timings.

    python3 scripts/run_acceptance.py --seed 0 --out reports.jsonl
"""

import argparse
import sys
import time

from harmreps import suites as SU
from harmreps.report import write_jsonl


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", help="write all reports as JSON lines")
    a = ap.parse_args()

    cfg = SU.SuiteConfig(seed=a.seed)
    everything, nfail = [], 0
    for name in SU.SUITES:
        t0 = time.perf_counter()
        reps = SU.run([name], cfg)
        dt = time.perf_counter() - t0
        bad = [r for r in reps if not r.passed]
        nfail += len(bad)
        print(f"{name:14s} {len(reps):4d} checks  {len(bad):2d} failed  {dt:6.2f}s")
        for r in bad:
            print("    " + r.line())
        everything += reps
    if a.out:
        with open(a.out, "w") as fh:
            write_jsonl(everything, fh)
    return 1 if nfail else 0


if __name__ == "__main__":
    sys.exit(main())
