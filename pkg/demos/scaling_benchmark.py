#!/usr/bin/env python3
"""Check the per-iteration cost model against wall-clock measurements.

One ADMM sweep on an n-point graph with q ~ log2(n) neighbors per row
costs roughly 2nK(3K + 2 log2 n) flops, so doubling n should a bit more
than double the time per iteration.  This script prints the model's
predicted per-iteration flops next to measured seconds per iteration
for a range of problem sizes, plus the doubling ratios of each column.

Timings use a fixed iteration count on a prebuilt graph, so neither
graph construction nor convergence luck enters the measurement.

Run:
    python3 demos/scaling_benchmark.py
"""

from snmfkit import (
    SyntheticSpec,
    build_weight_matrix,
    flops_admm,
    generate,
    measure_seconds_per_iteration,
    normalize_adjacency,
)

K = 5
SIZES = (500, 1000, 2000, 4000)


def main():
    rows = []
    for n in SIZES:
        data = generate(SyntheticSpec(kind="blobs", n_per_cluster=n // K,
                                      k=K, noise=0.05, seed=0))
        a = normalize_adjacency(build_weight_matrix(data)).matrix
        estimate = flops_admm(n, K)
        # best of three to shed scheduler noise
        seconds = min(measure_seconds_per_iteration(a, K, iterations=200)
                      for _ in range(3))
        rows.append((n, estimate, seconds))

    print(f"{'n':>6} {'q':>3} {'model flops/iter':>17} "
          f"{'approx':>12} {'measured s/iter':>16}")
    for n, estimate, seconds in rows:
        print(f"{n:6d} {estimate.q:3d} {estimate.flops_admm:17.0f} "
              f"{estimate.approx_flops:12.0f} {seconds:16.6f}")

    print("\ndoubling ratios (each row vs the previous):")
    for (n0, e0, s0), (n1, e1, s1) in zip(rows, rows[1:]):
        print(f"  n {n0} -> {n1}: model x{e1.flops_admm / e0.flops_admm:.2f}, "
              f"measured x{s1 / s0:.2f}")


if __name__ == "__main__":
    main()
