"""Verify every catalog entry and print one line per entry.

    python scripts/reproduce_tables.py            # full depth, about 10 minutes
    python scripts/reproduce_tables.py --depth fast
    python scripts/reproduce_tables.py --id C68.3 --id C82.1
"""
from __future__ import annotations

import argparse
import sys

from borderedsd.catalog import verify_all


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", choices=("fast", "full"), default="full")
    ap.add_argument("--id", action="append", dest="ids", help="restrict to these entry ids")
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args(argv)

    summary = verify_all(args.depth, threads=args.threads, ids=args.ids,
                         on_report=lambda rep: print(rep.line(), flush=True))
    n = len(summary.reports)
    print(f"{n - len(summary.failures)}/{n} passed in {summary.elapsed:.1f}s")
    return 0 if summary.ok and n else 1


if __name__ == "__main__":
    sys.exit(main())
