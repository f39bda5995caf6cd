"""Greedy constructor: corner-occupying placement of circles into square bins.

Circles are packed one by one in decreasing radius order. For each circle,
bins are tried in a fixed order; within a bin the feasible tangency
candidates (corner, circle+wall, circle+circle) are ranked by a border-
hugging quality and the best one wins. The same routine also completes
perturbed layouts during the neighborhood search, restricted first to the
two perturbed bins.

The candidate enumeration exists twice on purpose: a readable object-level
path (``candidate_actions``, built on the scalar geometry functions) used by
the API and the tests, and a numba kernel (``_best_candidate``) used by the
solver hot loop. A test asserts the two agree on randomized bins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np
from numba import njit

from .geometry import (
    WALLS,
    PlacedCircle,
    Point,
    circle_circle_tangent_positions,
    circle_wall_tangent_positions,
    corner_positions,
    is_feasible_position,
)
from .model import DEFAULT_TOLERANCE_FACTOR, Instance, Layout, PartialLayout, Placement

QualityDirection = Literal["min", "max"]

DEDUP_FACTOR = 1e-12


@dataclass(frozen=True)
class Quality:
    """Border-hugging rank of a candidate center.

    ``primary``/``secondary`` are the sorted distances from the center to
    the closest vertical and horizontal walls; smaller is better.
    """

    primary: float
    secondary: float

    @classmethod
    def at(cls, x: float, y: float, bin_side: float) -> "Quality":
        dx = min(x, bin_side - x)
        dy = min(y, bin_side - y)
        return cls(min(dx, dy), max(dx, dy))


def quality_less(a: Quality, b: Quality) -> bool:
    """Lexicographic on (primary, secondary); smaller is preferred."""
    return (a.primary, a.secondary) < (b.primary, b.secondary)


@dataclass(frozen=True)
class CandidateAction:
    position: Point
    quality: Quality
    provenance: tuple  # ("corner",) | ("circle+wall", id, wall) | ("circle+circle", id, id)


def candidate_actions(
    radius: float,
    bin_contents: list[PlacedCircle],
    bin_side: float,
    tolerance: float | None = None,
    quality_direction: QualityDirection = "min",
) -> list[CandidateAction]:
    """All feasible tangency placements for a new circle, best first.

    Sorted by quality (direction per ``quality_direction``), ties broken
    ascending by (x, y); near-coincident candidates are deduplicated within
    1e-12 * bin_side.
    """
    if not (0 < 2 * radius <= bin_side):
        raise ValueError(f"need 0 < 2*radius <= bin_side, got radius={radius}, bin_side={bin_side}")
    if tolerance is None:
        tolerance = DEFAULT_TOLERANCE_FACTOR * bin_side
    raw: list[tuple[Point, tuple]] = []
    for p in corner_positions(radius, bin_side):
        raw.append((p, ("corner",)))
    for placed in bin_contents:
        for wall in WALLS:
            for p in circle_wall_tangent_positions(placed, wall, radius, bin_side):
                raw.append((p, ("circle+wall", placed.id, wall)))
    for i in range(len(bin_contents)):
        for j in range(i + 1, len(bin_contents)):
            a, b = bin_contents[i], bin_contents[j]
            for p in circle_circle_tangent_positions(a, b, radius):
                raw.append((p, ("circle+circle", a.id, b.id)))

    feasible = [
        (p, prov)
        for p, prov in raw
        if is_feasible_position(p, radius, bin_contents, bin_side, tolerance)
    ]
    sign = 1.0 if quality_direction == "min" else -1.0

    def key(item):
        q = Quality.at(item[0].x, item[0].y, bin_side)
        return (sign * q.primary, sign * q.secondary, item[0].x, item[0].y)

    feasible.sort(key=key)
    eps = DEDUP_FACTOR * bin_side
    kept: list[CandidateAction] = []
    for p, prov in feasible:
        if any(math.hypot(p.x - c.position.x, p.y - c.position.y) <= eps for c in kept):
            continue
        kept.append(CandidateAction(p, Quality.at(p.x, p.y, bin_side), prov))
    return kept


# ---------------------------------------------------------------------------
# Hot-path kernel: same candidate set and the same (quality, x, y) ordering
# as candidate_actions, but returning only the winning position.
# ---------------------------------------------------------------------------

@njit(cache=True)
def _enumerate_positions(radius, xs, ys, rs, bin_side):  # pragma: no cover - jitted
    m = xs.shape[0]
    cap = 4 + 8 * m + m * (m - 1)
    out_x = np.empty(cap)
    out_y = np.empty(cap)
    k = 0
    lo = radius
    hi = bin_side - radius
    for px in (lo, hi):
        for py in (lo, hi):
            out_x[k] = px
            out_y[k] = py
            k += 1
    for i in range(m):
        reach = rs[i] + radius
        for wy in (lo, hi):
            disc = reach * reach - (wy - ys[i]) ** 2
            if disc >= 0.0:
                s = math.sqrt(disc)
                out_x[k] = xs[i] - s
                out_y[k] = wy
                k += 1
                if s > 0.0:
                    out_x[k] = xs[i] + s
                    out_y[k] = wy
                    k += 1
        for wx in (lo, hi):
            disc = reach * reach - (wx - xs[i]) ** 2
            if disc >= 0.0:
                s = math.sqrt(disc)
                out_x[k] = wx
                out_y[k] = ys[i] - s
                k += 1
                if s > 0.0:
                    out_x[k] = wx
                    out_y[k] = ys[i] + s
                    k += 1
    for i in range(m):
        for j in range(i + 1, m):
            ra = rs[i] + radius
            rb = rs[j] + radius
            dx = xs[j] - xs[i]
            dy = ys[j] - ys[i]
            d2 = dx * dx + dy * dy
            if d2 == 0.0:
                continue
            d = math.sqrt(d2)
            if d > ra + rb or d < abs(ra - rb):
                continue
            t = (d2 + ra * ra - rb * rb) / (2.0 * d)
            h2 = ra * ra - t * t
            if h2 < 0.0:
                h2 = 0.0
            h = math.sqrt(h2)
            ux = dx / d
            uy = dy / d
            px = xs[i] + t * ux
            py = ys[i] + t * uy
            out_x[k] = px - h * uy
            out_y[k] = py + h * ux
            k += 1
            if h > 0.0:
                out_x[k] = px + h * uy
                out_y[k] = py - h * ux
                k += 1
    return out_x[:k], out_y[:k]


@njit(cache=True)
def _best_candidate(radius, xs, ys, rs, bin_side, tolerance, maximize):  # pragma: no cover - jitted
    cand_x, cand_y = _enumerate_positions(radius, xs, ys, rs, bin_side)
    m = xs.shape[0]
    lo = radius - tolerance
    hi = bin_side - radius + tolerance
    found = False
    bq1 = bq2 = bx = by = 0.0
    for c in range(cand_x.shape[0]):
        x = cand_x[c]
        y = cand_y[c]
        if x < lo or x > hi or y < lo or y > hi:
            continue
        ok = True
        for j in range(m):
            need = radius + rs[j] - tolerance
            dx = x - xs[j]
            dy = y - ys[j]
            if dx * dx + dy * dy < need * need:
                ok = False
                break
        if not ok:
            continue
        ddx = min(x, bin_side - x)
        ddy = min(y, bin_side - y)
        q1 = min(ddx, ddy)
        q2 = max(ddx, ddy)
        if maximize:
            q1 = -q1
            q2 = -q2
        if not found:
            better = True
        elif q1 != bq1:
            better = q1 < bq1
        elif q2 != bq2:
            better = q2 < bq2
        elif x != bx:
            better = x < bx
        else:
            better = y < by
        if better:
            found = True
            bq1, bq2, bx, by = q1, q2, x, y
    return found, bx, by


def warm_up_kernels() -> None:
    """Force numba compilation (cached on disk) outside timed sections."""
    empty = np.empty(0)
    _best_candidate(1.0, empty, empty, empty, 4.0, 0.0, False)
    one = np.ones(1)
    _best_candidate(1.0, one, one, one, 4.0, 0.0, True)


# ---------------------------------------------------------------------------
# Packing state and the greedy loop.
# ---------------------------------------------------------------------------

class PackingState:
    """Mutable per-bin contents of a layout under construction.

    Bins exist only while non-empty; parallel lists keep insertion order,
    which the perturbation step relies on for reproducible circle picks.
    """

    __slots__ = ("bin_side", "tolerance", "maximize", "bins")

    def __init__(self, bin_side: float, tolerance: float,
                 quality_direction: QualityDirection = "min"):
        self.bin_side = bin_side
        self.tolerance = tolerance
        self.maximize = quality_direction == "max"
        # bin index -> [ids], [radii], [xs], [ys]
        self.bins: dict[int, tuple[list[int], list[float], list[float], list[float]]] = {}

    @classmethod
    def from_layout(cls, layout: Layout, tolerance: float | None = None,
                    quality_direction: QualityDirection = "min") -> "PackingState":
        inst = layout.instance
        if tolerance is None:
            tolerance = inst.default_tolerance()
        state = cls(inst.bin_side, tolerance, "max" if quality_direction == "max" else "min")
        for p in layout.placements:
            state.place(p.id, inst.radii[p.id], p.bin, p.x, p.y)
        return state

    def clone(self) -> "PackingState":
        other = PackingState.__new__(PackingState)
        other.bin_side = self.bin_side
        other.tolerance = self.tolerance
        other.maximize = self.maximize
        other.bins = {
            k: (ids[:], rads[:], xs[:], ys[:])
            for k, (ids, rads, xs, ys) in self.bins.items()
        }
        return other

    def place(self, cid: int, radius: float, bin_index: int, x: float, y: float) -> None:
        entry = self.bins.get(bin_index)
        if entry is None:
            entry = ([], [], [], [])
            self.bins[bin_index] = entry
        entry[0].append(cid)
        entry[1].append(radius)
        entry[2].append(x)
        entry[3].append(y)

    def remove_ids(self, bin_index: int, ids: set[int]) -> list[tuple[int, float]]:
        """Drop the given circles from a bin, preserving order of the rest."""
        entry = self.bins[bin_index]
        removed = []
        kept: tuple[list, list, list, list] = ([], [], [], [])
        for cid, r, x, y in zip(*entry):
            if cid in ids:
                removed.append((cid, r))
            else:
                kept[0].append(cid)
                kept[1].append(r)
                kept[2].append(x)
                kept[3].append(y)
        if kept[0]:
            self.bins[bin_index] = kept
        else:
            del self.bins[bin_index]
        return removed

    def nonempty_bins(self) -> list[int]:
        return sorted(self.bins)

    def fresh_bin(self, also_reserved: Iterable[int] = ()) -> int:
        return max([0, *self.bins, *also_reserved]) + 1

    def densities(self) -> dict[int, float]:
        # id-sorted summation keeps the value bit-identical to bin_density()
        area = self.bin_side ** 2
        out = {}
        for k, entry in self.bins.items():
            total = 0.0
            for _, r in sorted(zip(entry[0], entry[1])):
                total += math.pi * r * r
            out[k] = total / area
        return out

    def objective(self) -> float:
        dens = self.densities()
        return -len(dens) + max(dens.values()) - min(dens.values())

    def best_position(self, radius: float, bin_index: int) -> Point | None:
        entry = self.bins.get(bin_index)
        if entry is None:
            xs = ys = rs = _EMPTY
        else:
            rs = np.array(entry[1])
            xs = np.array(entry[2])
            ys = np.array(entry[3])
        found, x, y = _best_candidate(
            radius, xs, ys, rs, self.bin_side, self.tolerance, self.maximize
        )
        return Point(x, y) if found else None

    def to_placements(self) -> list[Placement]:
        out = []
        for k in sorted(self.bins):
            ids, _, xs, ys = self.bins[k]
            out.extend(Placement(cid, k, x, y) for cid, x, y in zip(ids, xs, ys))
        out.sort(key=lambda p: p.id)
        return out


_EMPTY = np.empty(0)


def pack_one(
    circle: tuple[int, float],
    state: PackingState,
    bin_order: list[int],
) -> tuple[int, Point]:
    """Place one circle in the first listed bin that admits it.

    Falls back to a fresh bin at its corner position when no listed bin has
    a feasible candidate (always possible since 2r <= L).
    """
    cid, radius = circle
    for k in bin_order:
        pos = state.best_position(radius, k)
        if pos is not None:
            state.place(cid, radius, k, pos.x, pos.y)
            return k, pos
    k = state.fresh_bin(bin_order)
    pos = state.best_position(radius, k)
    assert pos is not None  # a fresh bin always admits the corner position
    state.place(cid, radius, k, pos.x, pos.y)
    return k, pos


def _packing_order(circles: Iterable[tuple[int, float]]) -> list[tuple[int, float]]:
    return sorted(circles, key=lambda c: (-c[1], c[0]))


def gacoa_solve(
    instance: Instance,
    tolerance: float | None = None,
    quality_direction: QualityDirection = "min",
) -> Layout:
    """Deterministic greedy construction of a complete feasible layout.

    Placements in the returned layout appear in packing order (decreasing
    radius, ties by ascending id).
    """
    if tolerance is None:
        tolerance = instance.default_tolerance()
    state = PackingState(instance.bin_side, tolerance, quality_direction)
    placements = []
    for cid, radius in _packing_order(instance.circles()):
        k, pos = pack_one((cid, radius), state, state.nonempty_bins())
        placements.append(Placement(cid, k, pos.x, pos.y))
    return Layout(instance, tuple(placements))


def repair(
    state: PackingState,
    removed: list[tuple[int, float]],
    k1: int,
    k2: int,
) -> list[Placement]:
    """Pack removed circles back, trying the perturbed bins first.

    Bin order per circle: k1, k2, then the other currently non-empty bins
    ascending; pack_one opens fresh bins as a last resort.
    """
    new_placements = []
    for cid, radius in _packing_order(removed):
        order = [k1] + ([k2] if k2 != k1 else [])
        order += [k for k in state.nonempty_bins() if k != k1 and k != k2]
        k, pos = pack_one((cid, radius), state, order)
        new_placements.append(Placement(cid, k, pos.x, pos.y))
    return new_placements


def gacoa_complete(
    partial: PartialLayout,
    tolerance: float | None = None,
    quality_direction: QualityDirection = "min",
) -> Layout:
    """Complete a perturbed layout; identity when nothing is unassigned."""
    base = partial.base
    inst = base.instance
    if not partial.unassigned:
        return base
    state = PackingState.from_layout(base, tolerance, quality_direction)
    removed = [(cid, inst.radii[cid]) for cid in sorted(partial.unassigned)]
    k1, k2 = partial.perturbed_bins
    new_placements = repair(state, removed, k1, k2)
    return Layout(inst, base.placements + tuple(new_placements))
