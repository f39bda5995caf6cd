"""Command-line entry point: generate, solve, validate, render, compare.

Exit codes: 0 success, 1 domain failure (invalid input data, failed
validation), 2 usage error (argparse handles the latter).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .alns import SolverConfig, alns_solve, lns_solve, stats_to_json, trace_to_csv
from .benchgen import BenchmarkSpec, generate, read_instance, write_instance
from .gacoa import gacoa_solve
from .model import ParseError, solution_from_json, solution_to_json, validate
from .render import RenderOptions, emit_comparison_csv, render_svg

DEFAULT_ITERS = 2_000_000
DEFAULT_TEMP = 1.0


def _default_seed() -> int:
    return int(os.environ.get("CBPP_SEED", "0"))


def _load_spec_config(path: str) -> dict:
    text = Path(path).read_bytes()
    if path.endswith(".toml"):
        try:
            import tomllib
        except ImportError as exc:  # python < 3.11
            raise ParseError("TOML config requires Python 3.11+; use JSON") from exc
        return tomllib.loads(text.decode())
    import json

    return json.loads(text)


def cmd_generate(args) -> int:
    fields = {
        "n0": args.n0,
        "law": args.law,
        "mode": args.mode,
        "bin_side": args.bin_side,
        "seed": args.seed,
    }
    if args.config:
        loaded = _load_spec_config(args.config)
        for key in fields:
            if key in loaded and fields[key] is None:
                fields[key] = loaded[key]
    missing = [k for k, v in fields.items() if v is None and k != "seed"]
    if missing:
        raise ParseError(f"missing required generate parameters: {', '.join(missing)}")
    if fields["seed"] is None:
        fields["seed"] = _default_seed()
    spec = BenchmarkSpec(**fields)
    instance = generate(spec)
    write_instance(instance, args.output)
    print(f"wrote {instance.n} circles to {args.output}")
    return 0


def _solve_one(instance, alg: str, iters: int, temp: float, seed: int):
    if alg == "gacoa":
        return gacoa_solve(instance), None
    config = SolverConfig(iterations=iters, initial_temperature=temp, seed=seed)
    solver = alns_solve if alg == "alns" else lns_solve
    return solver(instance, config)


def cmd_solve(args) -> int:
    instance = read_instance(args.input)
    seed = args.seed if args.seed is not None else _default_seed()
    layout, stats = _solve_one(instance, args.alg, args.iters, args.temp, seed)
    report = validate(layout)
    if not report.ok:
        print(f"internal error: solver produced an invalid layout:\n{report}",
              file=sys.stderr)
        return 1
    Path(args.output).write_text(solution_to_json(layout))
    if args.trace and stats is not None:
        Path(args.trace).write_text(trace_to_csv(stats))
    if args.stats and stats is not None:
        Path(args.stats).write_text(stats_to_json(stats))
    from .model import compute_metrics

    metrics = compute_metrics(layout)
    print(
        f"{args.alg}: bins_used={metrics.bins_used} "
        f"objective={metrics.objective:.6f} -> {args.output}"
    )
    return 0


def cmd_validate(args) -> int:
    instance = read_instance(args.instance)
    layout = solution_from_json(Path(args.input).read_text(), instance)
    report = validate(layout)
    if report.ok:
        print("OK")
        return 0
    print(report, file=sys.stderr)
    return 1


def cmd_render(args) -> int:
    instance = read_instance(args.instance)
    layout = solution_from_json(Path(args.input).read_text(), instance)
    options = RenderOptions(
        pixels_per_unit=args.scale, bins_per_row=args.bins_per_row
    )
    Path(args.output).write_text(render_svg(layout, options))
    print(f"wrote {args.output}")
    return 0


def cmd_compare(args) -> int:
    from .model import compute_metrics

    paths = sorted(Path(args.dir).glob("*.json"))
    if not paths:
        raise ParseError(f"no instance files (*.json) found in {args.dir}")
    algs = [a.strip() for a in args.algs.split(",") if a.strip()]
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else [_default_seed()]
    rows = []
    failures = 0
    reductions = []
    for path in paths:
        try:
            instance = read_instance(path)
        except ParseError as exc:
            print(f"skipping {path}: {exc}", file=sys.stderr)
            failures += 1
            continue
        per_alg_k: dict[str, int] = {}
        for alg in algs:
            for seed in seeds if alg != "gacoa" else [seeds[0]]:
                label = alg if alg == "gacoa" or len(seeds) == 1 else f"{alg}(seed={seed})"
                layout, stats = _solve_one(instance, alg, args.iters, args.temp, seed)
                report = validate(layout)
                if not report.ok:
                    print(f"{path} {label}: INVALID\n{report}", file=sys.stderr)
                    failures += 1
                    continue
                metrics = compute_metrics(layout)
                per_alg_k.setdefault(alg, metrics.bins_used)
                per_alg_k[alg] = min(per_alg_k[alg], metrics.bins_used)
                rows.append(
                    (
                        path.stem,
                        label,
                        metrics.objective,
                        metrics.bins_used,
                        list(metrics.bin_densities),
                        stats.wall_time if stats else 0.0,
                    )
                )
        if "gacoa" in per_alg_k and "alns" in per_alg_k:
            if per_alg_k["alns"] < per_alg_k["gacoa"]:
                reductions.append(path.stem)
    Path(args.output).write_text(emit_comparison_csv(rows))
    gacoa_f = {r[0]: r[2] for r in rows if r[1] == "gacoa"}
    diffs = [
        r[2] - gacoa_f[r[0]]
        for r in rows
        if r[1].startswith("alns") and r[0] in gacoa_f
    ]
    if diffs:
        print(f"mean f_A - f_G over {len(diffs)} instances: {sum(diffs) / len(diffs):.6f}")
    for name in reductions:
        print(f"bin reduction: {name}")
    print(f"wrote {args.output}")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbpp", description="Circle bin packing solver kit"
    )
    parser.add_argument("--version", action="version", version=f"cbpp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a benchmark instance")
    p.add_argument("--law", choices=["linear", "sqrt"])
    p.add_argument("--n0", type=int)
    p.add_argument("--mode", choices=["fixed", "random"])
    p.add_argument("--bin-side", dest="bin_side", type=float)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--config", help="JSON/TOML file with spec fields")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--alg", choices=["gacoa", "lns", "alns"], default="alns")
    p.add_argument("--iters", type=int, default=DEFAULT_ITERS)
    p.add_argument("--temp", type=float, default=DEFAULT_TEMP)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--trace", help="write best-objective trace CSV here")
    p.add_argument("--stats", help="write search stats JSON here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("validate", help="validate a solution file")
    p.add_argument("-i", "--input", required=True, help="solution JSON")
    p.add_argument("--instance", required=True, help="instance JSON the solution refers to")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("render", help="render a solution to SVG")
    p.add_argument("-i", "--input", required=True, help="solution JSON")
    p.add_argument("--instance", required=True, help="instance JSON the solution refers to")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--scale", type=float, default=10.0)
    p.add_argument("--bins-per-row", type=int, default=3)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("compare", help="run algorithms over an instance directory")
    p.add_argument("--dir", required=True)
    p.add_argument("--algs", default="gacoa,alns")
    p.add_argument("--iters", type=int, default=DEFAULT_ITERS)
    p.add_argument("--temp", type=float, default=DEFAULT_TEMP)
    p.add_argument("--seeds", default="")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
