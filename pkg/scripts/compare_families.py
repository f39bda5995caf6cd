#!/usr/bin/env python3
"""Benchmark-family study: greedy constructor vs neighborhood search.

Runs both solvers over the benchmark families whose bin sides have been
filled into data/bin_sides.json (best-known square-packing records are
external data and must be supplied by hand). Emits one comparison CSV per
family and prints the mean objective improvement plus any bin-count
reductions.

Usage:
    python scripts/compare_families.py [--iters N] [--seeds 0,1,2]
        [--bin-sides data/bin_sides.json] [--out-dir results/]
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cbpp.alns import SolverConfig, alns_solve
from cbpp.benchgen import BenchmarkSpec, generate, load_bin_sides
from cbpp.gacoa import gacoa_solve
from cbpp.model import compute_metrics
from cbpp.render import emit_comparison_csv

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--iters", type=int, default=100_000)
    parser.add_argument("--temp", type=float, default=1.0)
    parser.add_argument("--seeds", default="0")
    parser.add_argument("--mode", choices=["fixed", "random"], default="fixed")
    parser.add_argument("--bin-sides", default=ROOT / "data" / "bin_sides.json")
    parser.add_argument("--out-dir", default=ROOT / "results")
    args = parser.parse_args()

    sides = load_bin_sides(args.bin_sides)
    if not sides:
        print(
            f"no bin sides populated in {args.bin_sides}; fill in the "
            "best-known square-packing sizes first",
            file=sys.stderr,
        )
        return 1
    seeds = [int(s) for s in args.seeds.split(",")]
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    exit_code = 0
    for law in ("linear", "sqrt"):
        entries = sorted((n0, L) for (lw, n0), L in sides.items() if lw == law)
        if not entries:
            continue
        rows = []
        diffs = []
        reductions = []
        for n0, bin_side in entries:
            name = f"{law}-n0{n0}"
            inst = generate(BenchmarkSpec(n0, law, args.mode, bin_side))
            t0 = time.perf_counter()
            greedy = gacoa_solve(inst)
            greedy_time = time.perf_counter() - t0
            gm = compute_metrics(greedy)
            rows.append((name, "gacoa", gm.objective, gm.bins_used,
                         list(gm.bin_densities), greedy_time))
            best_k = None
            for seed in seeds:
                label = "alns" if len(seeds) == 1 else f"alns(seed={seed})"
                cfg = SolverConfig(iterations=args.iters,
                                   initial_temperature=args.temp, seed=seed)
                improved, stats = alns_solve(inst, cfg)
                im = compute_metrics(improved)
                rows.append((name, label, im.objective, im.bins_used,
                             list(im.bin_densities), stats.wall_time))
                diffs.append(im.objective - gm.objective)
                best_k = im.bins_used if best_k is None else min(best_k, im.bins_used)
                print(f"{name} seed={seed}: f_G={gm.objective:.6f} "
                      f"f_A={im.objective:.6f} K {gm.bins_used}->{im.bins_used} "
                      f"({stats.wall_time:.1f}s)")
            if best_k is not None and best_k < gm.bins_used:
                reductions.append(name)
        out = out_dir / f"compare_{law}.csv"
        out.write_text(emit_comparison_csv(rows))
        mean = sum(diffs) / len(diffs)
        print(f"[{law}] mean f_A - f_G over {len(diffs)} runs: {mean:.6f} -> {out}")
        for name in reductions:
            print(f"[{law}] bin reduction: {name}")
        if mean <= 0:
            print(f"[{law}] WARNING: no mean improvement", file=sys.stderr)
            exit_code = 1
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
