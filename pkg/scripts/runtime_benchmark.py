#!/usr/bin/env python3
"""Measure neighborhood-search wall time as instance size grows.

Runs the search on fixed linear-law instances (n = 5*n0 circles) and prints
seconds per run and microseconds per iteration. Useful for checking the
iteration budget before launching a long study.

Usage:
    python scripts/runtime_benchmark.py [--iters N] [--n0 4,8,12,16,20]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cbpp.alns import SolverConfig, alns_solve
from cbpp.benchgen import BenchmarkSpec, generate, radius_of
from cbpp.gacoa import warm_up_kernels
from cbpp.model import compute_metrics


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iters", type=int, default=20_000)
    parser.add_argument("--n0", default="4,8,12,16,20")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    warm_up_kernels()
    print(f"{'n':>5} {'K':>4} {'f':>12} {'seconds':>9} {'us/iter':>9}")
    for n0 in (int(v) for v in args.n0.split(",")):
        # 4x the largest diameter leaves room without making packing trivial
        bin_side = 4.0 * radius_of("linear", n0)
        inst = generate(BenchmarkSpec(n0, "linear", "fixed", bin_side))
        t0 = time.perf_counter()
        layout, _ = alns_solve(
            inst, SolverConfig(iterations=args.iters, seed=args.seed)
        )
        elapsed = time.perf_counter() - t0
        m = compute_metrics(layout)
        print(f"{inst.n:>5} {m.bins_used:>4} {m.objective:>12.6f} "
              f"{elapsed:>9.2f} {1e6 * elapsed / args.iters:>9.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
