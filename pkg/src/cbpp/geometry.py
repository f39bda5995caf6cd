"""2D geometric primitives for packing circles into square bins.

Tangent-position generators and feasibility predicates. All functions are
pure and deterministic: identical inputs yield identical output lists, and
generated point lists are sorted ascending by (x, y) unless a wall direction
dictates otherwise.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

logger = logging.getLogger(__name__)

WALLS = ("left", "right", "bottom", "top")


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")


@dataclass(frozen=True)
class PlacedCircle:
    id: int
    radius: float
    center: Point
    bin: int = 1

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"circle {self.id}: radius must be > 0, got {self.radius}")
        if self.bin < 1:
            raise ValueError(f"circle {self.id}: bin index must be >= 1, got {self.bin}")


@dataclass(frozen=True)
class Rect:
    bottom_left: Point
    width: float
    height: float

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise ValueError(f"rect sides must be > 0, got {self.width} x {self.height}")

    @property
    def top_right(self) -> Point:
        return Point(self.bottom_left.x + self.width, self.bottom_left.y + self.height)


def corner_positions(radius: float, bin_side: float) -> list[Point]:
    """The four centers that put a circle tangent to two perpendicular walls.

    Degenerate positions (radius == bin_side/2) are all returned;
    deduplication is the caller's concern.
    """
    if not (0 < 2 * radius <= bin_side):
        raise ValueError(f"need 0 < 2*radius <= bin_side, got radius={radius}, bin_side={bin_side}")
    lo, hi = radius, bin_side - radius
    return [Point(lo, lo), Point(lo, hi), Point(hi, lo), Point(hi, hi)]


def circle_wall_tangent_positions(
    placed: PlacedCircle, wall: str, radius: float, bin_side: float
) -> list[Point]:
    """Centers of a new circle tangent to ``placed`` and resting on ``wall``.

    Returns 0, 1 or 2 points, ordered ascending along the wall direction.
    """
    if wall not in WALLS:
        raise ValueError(f"unknown wall {wall!r}, expected one of {WALLS}")
    if not (0 < 2 * radius <= bin_side):
        raise ValueError(f"need 0 < 2*radius <= bin_side, got radius={radius}, bin_side={bin_side}")
    cx, cy = placed.center.x, placed.center.y
    reach = placed.radius + radius
    if wall in ("bottom", "top"):
        y = radius if wall == "bottom" else bin_side - radius
        disc = reach * reach - (y - cy) ** 2
        if disc < 0:
            return []
        s = math.sqrt(disc)
        if s == 0.0:
            return [Point(cx, y)]
        return [Point(cx - s, y), Point(cx + s, y)]
    x = radius if wall == "left" else bin_side - radius
    disc = reach * reach - (x - cx) ** 2
    if disc < 0:
        return []
    s = math.sqrt(disc)
    if s == 0.0:
        return [Point(x, cy)]
    return [Point(x, cy - s), Point(x, cy + s)]


def circle_circle_tangent_positions(
    a: PlacedCircle, b: PlacedCircle, radius: float
) -> list[Point]:
    """Centers of a new circle simultaneously tangent to circles ``a`` and ``b``.

    Intersection of the two expanded circles (radii grown by ``radius``):
    two points when they properly intersect, one at external tangency, none
    otherwise. Coincident expanded circles have infinitely many solutions;
    that degenerate configuration yields an empty list and a logged
    diagnostic (it cannot arise from a feasible layout of distinct circles).
    """
    ra = a.radius + radius
    rb = b.radius + radius
    dx = b.center.x - a.center.x
    dy = b.center.y - a.center.y
    d2 = dx * dx + dy * dy
    if d2 == 0.0:
        if ra == rb:
            logger.warning(
                "degenerate tangency query: circles %s and %s share a center "
                "with equal expanded radii", a.id, b.id,
            )
        return []
    d = math.sqrt(d2)
    if d > ra + rb or d < abs(ra - rb):
        return []
    t = (d2 + ra * ra - rb * rb) / (2.0 * d)
    h2 = ra * ra - t * t
    if h2 < 0.0:
        h2 = 0.0
    h = math.sqrt(h2)
    ux, uy = dx / d, dy / d
    px = a.center.x + t * ux
    py = a.center.y + t * uy
    if h == 0.0:
        return [Point(px, py)]
    p1 = Point(px - h * uy, py + h * ux)
    p2 = Point(px + h * uy, py - h * ux)
    return sorted([p1, p2], key=lambda p: (p.x, p.y))


def is_feasible_position(
    candidate: Point,
    radius: float,
    others: list[PlacedCircle],
    bin_side: float,
    tolerance: float,
) -> bool:
    """True iff the circle stays inside the bin and clear of ``others``.

    Containment and pairwise separation are both relaxed by the additive
    ``tolerance`` so tangency-generated candidates survive float noise.
    Monotone in tolerance: feasible at t implies feasible at any t' >= t.
    """
    if tolerance < 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    lo = radius - tolerance
    hi = bin_side - radius + tolerance
    if not (lo <= candidate.x <= hi and lo <= candidate.y <= hi):
        return False
    for other in others:
        need = radius + other.radius - tolerance
        dx = candidate.x - other.center.x
        dy = candidate.y - other.center.y
        if dx * dx + dy * dy < need * need:
            return False
    return True


def circle_rect_intersects(circle: PlacedCircle, rect: Rect) -> bool:
    """Envelope test: does the circle's bounding box overlap the rectangle?

    Boundary contact (equality) counts as NON-intersecting.
    """
    lx, ly = rect.bottom_left.x, rect.bottom_left.y
    cx, cy, r = circle.center.x, circle.center.y, circle.radius
    if cx - r >= lx + rect.width:
        return False
    if cy - r >= ly + rect.height:
        return False
    if cx + r <= lx:
        return False
    if cy + r <= ly:
        return False
    return True
