#!/usr/bin/env python3
"""Large-n behaviour of the core for a fixed number of candidates.

For each n, prints the mean core size over IC profiles and how often the core
equals the set of candidates ranked last by fewer than n/m voters.  As n grows
the first should approach m/2 and the second 1.
"""

import argparse

from propveto.montecarlo import SimulationSpec, run_simulation


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--n", default="10,100,999,4001")
    parser.add_argument("--samples", type=int, default=500)
    parser.add_argument("--seed", type=int, default=2021)
    args = parser.parse_args()

    print(f"{'n':>6} {'mean |core|':>12} {'agreement':>10}")
    for n in (int(x) for x in args.n.split(",")):
        size = run_simulation(SimulationSpec("core-size", ((n, args.m),), args.samples, args.seed)).cells[0]
        agree = run_simulation(SimulationSpec("prop4", ((n, args.m),), args.samples, args.seed)).cells[0]
        print(f"{n:>6} {size.mean:>12.3f} {agree.mean:>10.3f}")


if __name__ == "__main__":
    main()
