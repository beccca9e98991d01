#!/usr/bin/env python3
"""Edge density of random pattern hosts.

Each triple of a pattern host is an edge exactly when its three pair colours
match the position pattern, so a uniformly random colouring keeps a triple
with probability 1/27.  This experiment builds many hosts and summarizes how
tightly the empirical density concentrates around 1/27, and how often the
heuristic vertex auditor finds any density violation just below that level.

Usage: python scripts/host_density_experiment.py [n] [seeds]
"""

import sys
from math import comb

from hyperdense import (
    DensityQuery,
    build_pattern_host,
    random_pair_colouring,
    vertex_density_check,
)


def main() -> None:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    seeds = int(sys.argv[2]) if len(sys.argv) > 2 else 100
    total = comb(n, 3)
    densities = []
    for seed in range(seeds):
        host = build_pattern_host(random_pair_colouring(n, 3, seed))
        densities.append(len(host.edges) / total)
    densities.sort()
    mean = sum(densities) / len(densities)
    print(f"n={n}, seeds={seeds}, triples per host={total}")
    print(f"density: min={densities[0]:.5f} mean={mean:.5f} max={densities[-1]:.5f}")
    print(f"target 1/27 = {1 / 27:.5f}")
    inside = sum(1 for d in densities if abs(d - 1 / 27) <= 0.01)
    print(f"within 1/27 +- 0.01: {inside}/{seeds}")

    host = build_pattern_host(random_pair_colouring(n, 3, 0))
    query = DensityQuery(
        d=1 / 27 - 0.02, eta=0.01, mode="heuristic", restarts=8, budget=200, seed=0
    )
    report = vertex_density_check(host, query)
    print(f"heuristic audit at d=1/27-0.02: verdict={report.verdict}")


if __name__ == "__main__":
    main()
