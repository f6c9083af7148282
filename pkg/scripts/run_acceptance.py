#!/usr/bin/env python3
"""Run every verification suite and print a one-line result per report.

Usage: python scripts/run_acceptance.py [--seed N] [--out report.json]
"""

from __future__ import annotations

import argparse
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from semiflow.cli import write_report_file
from semiflow.suites import SUITES, SuiteConfig


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    config = SuiteConfig(seed=args.seed)
    all_reports = {}
    failures = 0
    started = time.time()
    for name, suite in SUITES.items():
        t0 = time.time()
        reports = suite(config)
        all_reports[name] = reports
        for rep in reports:
            print(rep.one_line())
            failures += not rep.passed
        print(f"  [{name}: {time.time() - t0:.2f}s]")
    print(f"total wall time {time.time() - started:.1f}s, {failures} failing report(s)")
    if args.out:
        write_report_file(
            args.out,
            {
                "seed": config.seed,
                "suites": {n: [r.to_dict() for r in reps] for n, reps in all_reports.items()},
            },
        )
        print(f"report written to {args.out}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
