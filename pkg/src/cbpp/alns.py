"""Neighborhood search over complete layouts: destroy, repair, accept, cool.

Each iteration removes the circles hit by one random rectangle in each of
two random bins, re-packs them greedily, and accepts the resulting layout
under a simulated-annealing criterion with a linearly decaying temperature.
The best complete layout ever generated (accepted or not) is returned, so
the search never reports worse than the greedy construction.

Reproducibility contract: all stochastic choices are drawn from a single
``random.Random`` (Mersenne Twister, semantics pinned by CPython) in a
fixed per-iteration order: bin pair, then for each selected bin the rect
width, height and seed-circle pick, then (for non-improving candidates
only) the acceptance draw.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field

from .gacoa import PackingState, QualityDirection, gacoa_solve, repair
from .geometry import Point, Rect
from .model import Instance, Layout, PartialLayout, format_number, validate


@dataclass(frozen=True)
class SolverConfig:
    iterations: int
    initial_temperature: float = 1.0
    seed: int = 0
    tolerance: float | None = None  # None -> 1e-9 * bin_side
    quality_direction: QualityDirection = "min"
    record_temperatures: bool = False
    validate_each_iteration: bool = False  # debug/test mode, slow

    def __post_init__(self):
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.initial_temperature <= 0:
            raise ValueError(
                f"initial_temperature must be > 0, got {self.initial_temperature}"
            )


@dataclass
class SearchStats:
    iterations_run: int = 0
    acceptances: int = 0
    rejections: int = 0
    improvements: int = 0
    best_objective_trace: list[tuple[int, float]] = field(default_factory=list)
    wall_time: float = 0.0
    temperatures: list[float] = field(default_factory=list)


def random_real(rng: random.Random, scale: float) -> float:
    """Uniform draw on (0, scale]: a half-open uniform with zeros rejected."""
    while True:
        u = rng.random()
        if u > 0.0:
            return u * scale


def _sample_rect_raw(
    contents: tuple[list[int], list[float], list[float], list[float]] | None,
    bin_side: float,
    rng: random.Random,
) -> Rect:
    w = random_real(rng, bin_side)
    h = random_real(rng, bin_side)
    lx = ly = 0.0
    if contents is not None and contents[0]:
        i = rng.randrange(len(contents[0]))
        lx = contents[2][i] - 0.5 * w
        ly = contents[3][i] - 0.5 * h
    return Rect(Point(lx, ly), w, h)


def sample_rect(bin_index: int, layout: Layout, rng: random.Random) -> Rect:
    """A random destruction rectangle, centered on a random circle of the bin.

    Width and height are uniform on (0, L]; an empty bin anchors the rect at
    the origin. The rect may extend beyond the bin.
    """
    entry = None
    members = [p for p in layout.placements if p.bin == bin_index]
    if members:
        entry = (
            [p.id for p in members],
            [layout.instance.radii[p.id] for p in members],
            [p.x for p in members],
            [p.y for p in members],
        )
    return _sample_rect_raw(entry, layout.instance.bin_side, rng)


def _destroy(
    state: PackingState, rng: random.Random
) -> tuple[int, int, list[tuple[int, float]]]:
    """Pick bins, sample one rect per bin, remove envelope-intersecting circles."""
    bins = state.nonempty_bins()
    if len(bins) >= 2:
        k1, k2 = rng.sample(bins, 2)
    else:
        k1 = k2 = bins[0]
    rects = [_sample_rect_raw(state.bins.get(k), state.bin_side, rng) for k in (k1, k2)]
    removed: list[tuple[int, float]] = []
    seen: set[int] = set()
    for k, rect in zip((k1, k2), rects):
        entry = state.bins.get(k)
        if entry is None:
            continue
        hit = {
            cid
            for cid, r, x, y in zip(*entry)
            if cid not in seen and _envelope_intersects(x, y, r, rect)
        }
        if hit:
            removed.extend(state.remove_ids(k, hit))
            seen |= hit
    return k1, k2, removed


def _envelope_intersects(x: float, y: float, r: float, rect: Rect) -> bool:
    lx, ly = rect.bottom_left.x, rect.bottom_left.y
    if x - r >= lx + rect.width:
        return False
    if y - r >= ly + rect.height:
        return False
    if x + r <= lx:
        return False
    if y + r <= ly:
        return False
    return True


def generate_partial(layout: Layout, rng: random.Random) -> PartialLayout:
    """Perturb a complete layout by emptying two random rectangular regions.

    With a single used bin, both rectangles are sampled in that bin (no
    bin-selection draw occurs).
    """
    state = PackingState.from_layout(layout)
    k1, k2, removed = _destroy(state, rng)
    removed_ids = {cid for cid, _ in removed}
    base = Layout(
        layout.instance,
        tuple(p for p in layout.placements if p.id not in removed_ids),
    )
    return PartialLayout(base, frozenset(removed_ids), (k1, k2))


def accept_move(
    f_new: float, f_old: float, temperature: float, rng: random.Random
) -> bool:
    """Simulated-annealing acceptance; draws randomness only on non-improvement."""
    if temperature <= 0:
        raise ValueError(f"temperature must be > 0, got {temperature}")
    if f_new > f_old:
        return True
    u = random_real(rng, 1.0)
    return u <= math.exp((f_new - f_old) / temperature)


def _search(
    instance: Instance, config: SolverConfig, annealing: bool
) -> tuple[Layout, SearchStats]:
    start = time.perf_counter()
    tolerance = config.tolerance
    if tolerance is None:
        tolerance = instance.default_tolerance()
    rng = random.Random(config.seed)
    initial = gacoa_solve(instance, tolerance, config.quality_direction)
    state = PackingState.from_layout(initial, tolerance, config.quality_direction)
    f_cur = state.objective()
    best = state.clone()
    f_best = f_cur
    stats = SearchStats(best_objective_trace=[(0, f_cur)])
    n_iters = config.iterations
    theta0 = config.initial_temperature
    for i in range(1, n_iters + 1):
        # computed directly, not accumulated, so theta is exact and > 0
        theta = theta0 * (1.0 - (i - 1) / n_iters)
        if config.record_temperatures:
            stats.temperatures.append(theta)
        cand = state.clone()
        k1, k2, removed = _destroy(cand, rng)
        repair(cand, removed, k1, k2)
        f_new = cand.objective()
        if config.validate_each_iteration:
            report = validate(
                Layout(instance, tuple(cand.to_placements())), tolerance
            )
            if not report.ok:
                raise AssertionError(f"iteration {i} produced an invalid layout:\n{report}")
        if f_new > f_best:
            f_best = f_new
            best = cand.clone()
            stats.best_objective_trace.append((i, f_new))
        improving = f_new > f_cur
        if annealing:
            accepted = accept_move(f_new, f_cur, theta, rng)
        else:
            accepted = improving
        if accepted:
            stats.acceptances += 1
            if improving:
                stats.improvements += 1
            state = cand
            f_cur = f_new
        else:
            stats.rejections += 1
    stats.iterations_run = n_iters
    stats.wall_time = time.perf_counter() - start
    layout = Layout(instance, tuple(best.to_placements()))
    return layout, stats


def alns_solve(instance: Instance, config: SolverConfig) -> tuple[Layout, SearchStats]:
    """Annealing-accepted neighborhood search seeded by the greedy layout."""
    return _search(instance, config, annealing=True)


def lns_solve(instance: Instance, config: SolverConfig) -> tuple[Layout, SearchStats]:
    """Ablation mode: identical loop, but only strict improvements are accepted."""
    return _search(instance, config, annealing=False)


def stats_to_json(stats: SearchStats) -> str:
    trace = ", ".join(
        "[%d, %s]" % (i, format_number(f)) for i, f in stats.best_objective_trace
    )
    temps = ", ".join(format_number(t) for t in stats.temperatures)
    return (
        "{\n"
        '  "iterations_run": %d,\n'
        '  "acceptances": %d,\n'
        '  "rejections": %d,\n'
        '  "improvements": %d,\n'
        '  "wall_time": %s,\n'
        '  "best_objective_trace": [%s],\n'
        '  "temperatures": [%s]\n'
        "}\n"
        % (
            stats.iterations_run,
            stats.acceptances,
            stats.rejections,
            stats.improvements,
            format_number(stats.wall_time),
            trace,
            temps,
        )
    )


def trace_to_csv(stats: SearchStats) -> str:
    """Best-objective trace as RFC-4180 CSV: one (iteration, f) row per entry."""
    rows = ["iteration,f"]
    rows.extend(
        "%d,%s" % (i, format_number(f)) for i, f in stats.best_objective_trace
    )
    return "\r\n".join(rows) + "\r\n"
