#!/usr/bin/env python3
"""Run the full acceptance grid and write the report as JSON.

The largest oracle cells (several hundred cosets) take minutes each; pass
--max-dim to cap the grid for a quicker partial run.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

# Ensure project root is on sys.path so the packages can be imported
PROJECT_ROOT = Path(__file__).resolve().parent.parent
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from config.logging_setup import configure_logging
from config.settings import DEFAULT_TOLERANCE_TEXT, MAX_ORACLE_DIM
from services.export import to_json, write_output
from utils.rationals import parse_rational
from verification.runner import run_acceptance


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=str, default=DEFAULT_TOLERANCE_TEXT, help="Enclosure tolerance.")
    parser.add_argument(
        "--max-dim",
        type=int,
        default=MAX_ORACLE_DIM,
        help="Skip oracle cells with more cosets than this.",
    )
    parser.add_argument("--threads", type=int, default=1, help="Worker threads.")
    parser.add_argument("--out", type=Path, default=None, help="Report path; stdout when omitted.")
    parser.add_argument("-v", "--verbose", action="count", default=1)
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    configure_logging(args.verbose)
    started = time.monotonic()
    report = run_acceptance(parse_rational(args.tol), args.threads, args.max_dim)
    write_output(to_json(report.to_dict()), args.out)

    elapsed = time.monotonic() - started
    summary = report.summary
    print(
        f"{summary.passed} passed, {summary.fail} failed, {summary.skipped} skipped in {elapsed:.1f}s",
        file=sys.stderr,
    )
    for failure in report.failures():
        print(f"  FAILED {failure.name} {failure.params}", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
