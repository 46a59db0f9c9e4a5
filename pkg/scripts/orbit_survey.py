#!/usr/bin/env python3
"""Survey orbit counts on small lattices under the default generators.

Prints, for each (lattice, square, divisibility) cell, the number of
in-bound vectors and the orbit counts for the full generator set and
its spinor-norm-+1 subset.  With two hyperbolic planes the spinor-one
count collapses to 1; with a single plane it splits.
"""

import argparse
import sys

import genlat as g


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=2, help="coordinate bound")
    ap.add_argument("--budget", type=int, default=g.DEFAULT_BUDGET)
    args = ap.parse_args()

    cells = [
        ("H", 0, 1),
        ("H", 2, 1),
        ("2H", 0, 1),
        ("2H", 2, 1),
        ("2H", 4, 1),
        ("2H", -2, 1),
        ("2H", 0, 2),
    ]
    header = f"{'lattice':8} {'square':>6} {'div':>3} {'vectors':>8} {'full':>5} {'spinor1':>8}"
    print(header)
    print("-" * len(header))
    gens_cache = {}
    for spec, sq, div in cells:
        lat = g.lattice_from_spec(spec)
        if spec not in gens_cache:
            gens_cache[spec] = g.default_generators(lat)
        seeds = g.enumerate_vectors(lat, sq, div, args.bound, max_states=args.budget)
        report = g.orbit_bfs(
            lat, seeds, gens_cache[spec], args.bound,
            max_states=args.budget, progress=sys.stderr,
        )
        print(
            f"{spec:8} {sq:>6} {div:>3} {report.vectors_found:>8} "
            f"{report.orbit_count_full:>5} {report.orbit_count_spinor1:>8}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
