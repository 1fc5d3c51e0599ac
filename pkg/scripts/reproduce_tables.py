#!/usr/bin/env python3
"""Reproduce the core-size and consumption-winner tables under Impartial Culture.

Usage:
    python scripts/reproduce_tables.py [--table core|winners|both] [--samples N]
                                       [--n 2,3,...] [--m 2,3,...] [--seed S] [--workers K]

Defaults use 1,000 samples per cell on n, m in 2..11.  The published winner
table used 1,000,000 samples; pass --samples 1000000 for a full-scale run.
"""

import argparse
import time

from propveto.montecarlo import SimulationSpec, render_table, run_simulation


def int_list(text):
    return [int(x) for x in text.split(",")]


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--table", choices=("core", "winners", "both"), default="both")
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--n", type=int_list, default=list(range(2, 12)))
    parser.add_argument("--m", type=int_list, default=list(range(2, 12)))
    parser.add_argument("--seed", type=int, default=2021)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    grid = tuple((n, m) for n in args.n for m in args.m)
    stats = {"core": "core-proportion", "winners": "winner-count"}
    wanted = ["core", "winners"] if args.table == "both" else [args.table]
    for name in wanted:
        t0 = time.perf_counter()
        result = run_simulation(SimulationSpec(stats[name], grid, args.samples, args.seed, args.workers))
        title = "Proportion of candidates in the core" if name == "core" else "Number of veto by consumption winners"
        print(f"{title}, mean of {args.samples} IC profiles per cell ({time.perf_counter() - t0:.0f} s)")
        print(render_table(result))


if __name__ == "__main__":
    main()
