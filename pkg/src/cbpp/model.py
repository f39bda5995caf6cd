"""Problem/solution data model: instances, layouts, metrics and validation.

The objective of a complete layout is f = -K + d_max - d_min, where K is the
number of non-empty bins and d_k the area fraction of bin k covered by its
circles. Larger f is better: the bin count dominates, the density gap acts
as a regularizer (0 <= d_max - d_min <= 1, so -K <= f <= -K + 1).
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

from .geometry import PlacedCircle, Point

DEFAULT_TOLERANCE_FACTOR = 1e-9


def format_number(x: float) -> str:
    """17-significant-digit decimal form; round-trips IEEE doubles exactly."""
    return format(float(x), ".17g")


class ParseError(ValueError):
    """Malformed instance or solution file."""

    def __init__(self, message: str, location: str = ""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


@dataclass(frozen=True)
class Instance:
    """A bin side length and the multiset of circle radii to pack.

    Circle ids are the dense 0-based indices into ``radii``.
    """

    bin_side: float
    radii: tuple[float, ...]

    def __post_init__(self):
        if not (math.isfinite(self.bin_side) and self.bin_side > 0):
            raise ValueError(f"bin_side must be a positive finite number, got {self.bin_side}")
        if not self.radii:
            raise ValueError("instance must contain at least one circle")
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        for i, r in enumerate(self.radii):
            if not (math.isfinite(r) and r > 0):
                raise ValueError(f"circle {i}: radius must be a positive finite number, got {r}")
            if 2 * r > self.bin_side:
                raise ValueError(
                    f"circle {i}: diameter {2 * r} exceeds bin side {self.bin_side}"
                )

    @property
    def n(self) -> int:
        return len(self.radii)

    def circles(self) -> list[tuple[int, float]]:
        return list(enumerate(self.radii))

    def default_tolerance(self) -> float:
        return DEFAULT_TOLERANCE_FACTOR * self.bin_side


@dataclass(frozen=True)
class Placement:
    id: int
    bin: int
    x: float
    y: float


@dataclass(frozen=True)
class Layout:
    """An assignment of circles to (bin, center) positions.

    May hold a subset of the instance's circles while under construction or
    perturbation; completeness is a property checked by consumers that need
    it (``objective``, ``validate``). Duplicate placements are rejected
    outright.
    """

    instance: Instance
    placements: tuple[Placement, ...]

    def __post_init__(self):
        object.__setattr__(self, "placements", tuple(self.placements))
        seen = set()
        n = self.instance.n
        for p in self.placements:
            if p.id in seen:
                raise ValueError(f"circle {p.id} placed more than once")
            if not (0 <= p.id < n):
                raise ValueError(f"placement references unknown circle id {p.id}")
            if p.bin < 1:
                raise ValueError(f"circle {p.id}: bin index must be >= 1, got {p.bin}")
            seen.add(p.id)

    def is_complete(self) -> bool:
        return len(self.placements) == self.instance.n

    def bins(self) -> dict[int, list[Placement]]:
        """Non-empty bins, keyed by bin index, in placement order."""
        out: dict[int, list[Placement]] = {}
        for p in self.placements:
            out.setdefault(p.bin, []).append(p)
        return out

    def placed_circle(self, p: Placement) -> PlacedCircle:
        return PlacedCircle(p.id, self.instance.radii[p.id], Point(p.x, p.y), p.bin)


@dataclass(frozen=True)
class PartialLayout:
    """A layout with some circles removed, awaiting repair.

    ``base`` holds the surviving placements; ``unassigned`` the removed ids;
    ``perturbed_bins`` the two bin indices the destruction targeted (equal
    when the layout had a single bin).
    """

    base: Layout
    unassigned: frozenset[int]
    perturbed_bins: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "unassigned", frozenset(self.unassigned))
        placed = {p.id for p in self.base.placements}
        if placed & self.unassigned:
            raise ValueError("placed and unassigned circle sets overlap")
        if placed | self.unassigned != set(range(self.base.instance.n)):
            raise ValueError("placed and unassigned sets do not cover the instance")


@dataclass(frozen=True)
class Metrics:
    bin_densities: tuple[float, ...]
    bins_used: int
    d_min: float
    d_max: float
    objective: float


@dataclass
class Violation:
    kind: str  # "unplaced" | "containment" | "overlap"
    ids: tuple[int, ...]
    magnitude: float
    message: str


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "OK"
        return "\n".join(v.message for v in self.violations)


def bin_density(layout: Layout, bin_index: int) -> float:
    """Area fraction of the bin covered by its circles: sum(pi r^2) / L^2.

    Terms are summed in ascending circle-id order so the value depends only
    on the bin's membership, never on placement order.
    """
    members = sorted(p.id for p in layout.placements if p.bin == bin_index)
    if not members:
        raise ValueError(f"bin {bin_index} is empty or unknown")
    area = 0.0
    for cid in members:
        r = layout.instance.radii[cid]
        area += math.pi * r * r
    return area / layout.instance.bin_side ** 2


def bins_used(layout: Layout) -> int:
    """Number of distinct non-empty bins (indices may be non-contiguous)."""
    return len({p.bin for p in layout.placements})


def compute_metrics(layout: Layout) -> Metrics:
    if not layout.placements:
        raise ValueError("layout has no placements")
    dens = {k: bin_density(layout, k) for k in sorted(layout.bins())}
    values = tuple(dens.values())
    d_min, d_max = min(values), max(values)
    k = len(values)
    return Metrics(values, k, d_min, d_max, -k + d_max - d_min)


def objective(layout: Layout) -> float:
    """f = -K + d_max - d_min over non-empty bins; requires a complete layout."""
    if not layout.is_complete():
        raise ValueError("objective requires a complete layout")
    return compute_metrics(layout).objective


def compare_layouts(a: Layout, b: Layout) -> int:
    """Total order by objective: 1 if a is better, -1 if worse, 0 on ties."""
    if a.instance != b.instance:
        raise ValueError("cannot compare layouts of different instances")
    fa, fb = objective(a), objective(b)
    if fa > fb:
        return 1
    if fa < fb:
        return -1
    return 0


def validate(layout: Layout, tolerance: float | None = None) -> ValidationReport:
    """Check placement completeness, containment and pairwise non-overlap.

    Violations are returned as data, never raised. ``tolerance`` defaults to
    1e-9 * bin_side.
    """
    inst = layout.instance
    if tolerance is None:
        tolerance = inst.default_tolerance()
    report = ValidationReport()
    placed = {p.id for p in layout.placements}
    for cid in range(inst.n):
        if cid not in placed:
            report.violations.append(
                Violation("unplaced", (cid,), 1.0, f"circle {cid} is not placed")
            )
    lo_hi = inst.bin_side
    for p in layout.placements:
        r = inst.radii[p.id]
        excess = max(r - p.x, p.x - (lo_hi - r), r - p.y, p.y - (lo_hi - r))
        if excess > tolerance:
            report.violations.append(
                Violation(
                    "containment", (p.id,), excess,
                    f"circle {p.id} leaves the bin by {excess:.6g}",
                )
            )
    for members in layout.bins().values():
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                a, b = members[i], members[j]
                need = inst.radii[a.id] + inst.radii[b.id]
                dist = math.hypot(a.x - b.x, a.y - b.y)
                if dist < need - tolerance:
                    report.violations.append(
                        Violation(
                            "overlap", (a.id, b.id), need - dist,
                            f"circles {a.id} and {b.id} overlap: "
                            f"distance {dist:.6g} < {need:.6g} by {need - dist:.6g}",
                        )
                    )
    return report


# ---------------------------------------------------------------------------
# Serialization. Instance and solution JSON use 17-significant-digit numbers
# for bit-faithful round-trips and byte-stable output.
# ---------------------------------------------------------------------------

def instance_to_json(instance: Instance) -> str:
    circles = ", ".join(
        '{"id": %d, "radius": %s}' % (i, format_number(r))
        for i, r in enumerate(instance.radii)
    )
    return '{"bin_side": %s, "circles": [%s]}\n' % (
        format_number(instance.bin_side), circles
    )


def instance_from_json(text: str) -> Instance:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    if "bin_side" not in data or "circles" not in data:
        raise ParseError("missing required keys 'bin_side' and/or 'circles'")
    circles = data["circles"]
    if not isinstance(circles, list) or not circles:
        raise ParseError("'circles' must be a non-empty array", "circles")
    by_id: dict[int, float] = {}
    for pos, entry in enumerate(circles):
        loc = f"circles[{pos}]"
        if not isinstance(entry, dict) or "id" not in entry or "radius" not in entry:
            raise ParseError("each circle needs 'id' and 'radius'", loc)
        cid = entry["id"]
        if not isinstance(cid, int) or isinstance(cid, bool):
            raise ParseError(f"id must be an integer, got {cid!r}", loc)
        if cid in by_id:
            raise ParseError(f"duplicate circle id {cid}", loc)
        by_id[cid] = entry["radius"]
    if sorted(by_id) != list(range(len(by_id))):
        raise ParseError("circle ids must be dense 0-based integers", "circles")
    try:
        return Instance(data["bin_side"], tuple(by_id[i] for i in range(len(by_id))))
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def instance_hash(instance: Instance) -> str:
    return hashlib.sha256(instance_to_json(instance).encode()).hexdigest()


def _compact_bin_map(layout: Layout) -> dict[int, int]:
    """Internal (possibly gappy) bin indices -> reporting indices 1..K."""
    return {k: i + 1 for i, k in enumerate(sorted(layout.bins()))}


def solution_to_json(layout: Layout) -> str:
    """Canonical solution document: compacted 1..K bins, placements by id."""
    metrics = compute_metrics(layout)
    remap = _compact_bin_map(layout)
    lines = ["{"]
    lines.append('  "instance_hash": "%s",' % instance_hash(layout.instance))
    lines.append('  "bins_used": %d,' % metrics.bins_used)
    lines.append('  "objective": %s,' % format_number(metrics.objective))
    lines.append(
        '  "bin_densities": [%s],'
        % ", ".join(format_number(d) for d in metrics.bin_densities)
    )
    rows = [
        '    {"id": %d, "bin": %d, "x": %s, "y": %s}'
        % (p.id, remap[p.bin], format_number(p.x), format_number(p.y))
        for p in sorted(layout.placements, key=lambda p: p.id)
    ]
    lines.append('  "placements": [\n%s\n  ]' % ",\n".join(rows))
    lines.append("}")
    return "\n".join(lines) + "\n"


def solution_from_json(text: str, instance: Instance) -> Layout:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "placements" not in data:
        raise ParseError("solution must be an object with a 'placements' array")
    stored_hash = data.get("instance_hash")
    if stored_hash is not None and stored_hash != instance_hash(instance):
        raise ParseError("solution does not match the given instance (hash mismatch)")
    placements = []
    for pos, entry in enumerate(data["placements"]):
        loc = f"placements[{pos}]"
        try:
            placements.append(
                Placement(entry["id"], entry["bin"], float(entry["x"]), float(entry["y"]))
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad placement record: {exc}", loc) from exc
    try:
        return Layout(instance, tuple(placements))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
