"""Run a seeded random search from a config file and print the discoveries.

    python scripts/random_search.py scripts/configs/f2_n13.cfg --max-trials 2000
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from borderedsd.cli import MatrixFile
from borderedsd.search import SearchConfig, neighbour_sweep, run_search


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("config", type=Path)
    ap.add_argument("--seed", type=int)
    ap.add_argument("--max-trials", type=int)
    ap.add_argument("--workers", type=int)
    ap.add_argument("--out", type=Path, help="append discoveries to this file")
    args = ap.parse_args(argv)

    overrides = {k: v for k, v in (("seed", args.seed), ("max_trials", args.max_trials),
                                   ("workers", args.workers)) if v is not None}
    cfg = SearchConfig.from_file(args.config, **overrides)
    t0 = time.perf_counter()
    if cfg.mode == "neighbour":
        parent = MatrixFile.read(args.config.parent / cfg.seed_code).code()
        res = neighbour_sweep(parent, cfg)
    else:
        res = run_search(cfg, results_path=args.out)
    for disc in res.discoveries:
        print(disc.describe())
    stats = " ".join(f"{k}={v}" for k, v in sorted(res.stats.items()))
    print(f"# {stats} time={time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
