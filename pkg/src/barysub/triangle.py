"""Planar triangle geometry under similarity.

A triangle is reduced to its characterizing point ``(x, y)``: the similarity
sending the longest edge onto ``[(0, 0), (1, 0)]`` with the shortest edge at
the origin puts the remaining vertex at ``(x, y)`` with ``0 <= x <= 1/2`` and
``y >= 0``.  Flat triangles are exactly those with ``y == 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateAngle, PointDegenerate
from .flat import z_map

Point = tuple[float, float]

# Vertex index pairs (a-b, b-c, c-a) give the tie-break order for equal edges.
_EDGE_PAIRS = ((0, 1), (1, 2), (2, 0))


class TrianglePoints(NamedTuple):
    a: Point
    b: Point
    c: Point


@dataclass(frozen=True)
class ShapePoint:
    """Characterizing point of a triangle."""

    x: float
    y: float

    def __post_init__(self):
        if not (0.0 <= self.x <= 0.5) or self.y < 0.0 or self.x * self.x + self.y * self.y > 1.0 + 1e-12:
            raise ValueError(f"({self.x}, {self.y}) is not a valid characterizing point")

    @property
    def is_flat(self) -> bool:
        return self.y == 0.0


def _dist2(p: Point, q: Point) -> float:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def _shape_from_vertices(p: Point, q: Point, r: Point) -> tuple[float, float, float]:
    """Return ``(x, y, longest_sq)`` for a non-point triangle.

    ``y`` is obtained from the area rather than from the edge-length formula
    so that nearly flat triangles keep full relative precision.
    """
    pts = (p, q, r)
    edges = sorted(
        (_dist2(pts[i], pts[j]), k) for k, (i, j) in enumerate(_EDGE_PAIRS)
    )
    l1, l2, l3 = (e[0] for e in edges)
    if l3 == 0.0:
        raise PointDegenerate("all three vertices coincide")
    x = (l3 - l2 + l1) / (2.0 * l3)
    x = min(max(x, 0.0), 0.5)
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    y = abs(cross) / l3
    return x, y, l3


def normalize(t: TrianglePoints | tuple[Point, Point, Point]) -> ShapePoint:
    """Characterizing point of the triangle with vertices ``t``.

    Raises PointDegenerate when the three vertices are equal.
    """
    x, y, _ = _shape_from_vertices(*t)
    return ShapePoint(x, y)


def subdivision_vertices(s: ShapePoint) -> tuple[TrianglePoints, ...]:
    """The six raw sub-triangles of the normalized triangle ``s``, in index order.

    With A=(0,0), B=(x,y), C=(1,0), D, E, F the midpoints of AB, BC, CA and
    G the barycenter, the children are ADG, DBG, BEG, ECG, CFG, FAG.
    """
    return tuple(TrianglePoints(*_child_vertices(s.x, s.y, i)) for i in range(1, 7))


def child_step(x: float, y: float, i: int) -> tuple[float, float, float]:
    """Characterizing point of child ``i`` of ``(x, y)`` plus ``ln(y_i / y)``.

    Every child has one sixth of the parent's area, so after rescaling by the
    child's longest edge ``y_i = y / (6 * l3)`` where ``l3`` is that edge
    squared.  Carrying the log ratio lets callers follow ``ln(y)`` long after
    ``y`` itself underflows.  Flat parents map through ``z_map`` exactly.
    """
    if y == 0.0:
        return z_map(i, x), 0.0, -math.inf
    pts = _child_vertices(x, y, i)
    edges = sorted(_dist2(pts[u], pts[v]) for u, v in _EDGE_PAIRS)
    l1, l2, l3 = edges
    xi = min(max((l3 - l2 + l1) / (2.0 * l3), 0.0), 0.5)
    scale = 6.0 * l3
    return xi, y / scale, -math.log(scale)


def flat_child_step(x: float, i: int) -> tuple[float, float]:
    """``z_i(x)`` and the log height ratio of child ``i`` in the flat limit.

    Used once ``y`` has underflowed while ``ln(y)`` is still being tracked:
    the ratio ``1 / (6 * l3)`` then depends on ``x`` alone.
    """
    pts = _child_vertices(x, 0.0, i)
    l3 = max(_dist2(pts[u], pts[v]) for u, v in _EDGE_PAIRS)
    return z_map(i, x), -math.log(6.0 * l3)


def _child_vertices(x: float, y: float, i: int) -> tuple[Point, Point, Point]:
    g = ((1.0 + x) / 3.0, y / 3.0)
    if i == 1:
        return (0.0, 0.0), (x / 2.0, y / 2.0), g
    if i == 2:
        return (x / 2.0, y / 2.0), (x, y), g
    if i == 3:
        return (x, y), ((1.0 + x) / 2.0, y / 2.0), g
    if i == 4:
        return ((1.0 + x) / 2.0, y / 2.0), (1.0, 0.0), g
    if i == 5:
        return (1.0, 0.0), (0.5, 0.0), g
    if i == 6:
        return (0.5, 0.0), (0.0, 0.0), g
    raise ValueError(f"child index must be in 1..6, got {i}")


def subdivide(s: ShapePoint) -> tuple[ShapePoint, ...]:
    """Characterizing points of the six children of ``s``, in index order."""
    return tuple(ShapePoint(*child_step(s.x, s.y, i)[:2]) for i in range(1, 7))


def functional_J(s: ShapePoint) -> float:
    """Sum of squared edge lengths over area; ``inf`` for flat triangles."""
    if s.y == 0.0:
        return math.inf
    return 4.0 * (s.x * s.x + s.y * s.y - s.x + 1.0) / s.y


def functional_I(s: ShapePoint) -> float:
    """Isoperimetric ratio perimeter**2 / area; ``inf`` for flat triangles."""
    if s.y == 0.0:
        return math.inf
    x, y = s.x, s.y
    perimeter = 1.0 + math.hypot(x, y) + math.hypot(1.0 - x, y)
    return perimeter * perimeter / (y / 2.0)


def largest_angle(s: ShapePoint) -> float:
    """Angle at ``(x, y)`` between the edges to ``(0, 0)`` and ``(1, 0)``.

    Computed as ``atan2(|BA x BC|, BA . BC)``, which equals the law of
    cosines value but stays accurate as the angle approaches pi.
    """
    x, y = s.x, s.y
    if x == 0.0 and y == 0.0:
        raise DegenerateAngle("angle undefined at a coincident vertex")
    return math.atan2(y, y * y - x * (1.0 - x))


def median_lengths_sq(s: ShapePoint) -> tuple[float, float, float]:
    """Squared lengths of the medians DC, EA, FB of the normalized triangle."""
    x, y = s.x, s.y
    d = (x / 2.0, y / 2.0)
    e = ((1.0 + x) / 2.0, y / 2.0)
    return _dist2(d, (1.0, 0.0)), _dist2(e, (0.0, 0.0)), _dist2((0.5, 0.0), (x, y))


def edge_lengths_sq(s: ShapePoint) -> tuple[float, float, float]:
    """Squared lengths of AB, BC, CA of the normalized triangle."""
    x, y = s.x, s.y
    return x * x + y * y, (1.0 - x) ** 2 + y * y, 1.0


def area(t: TrianglePoints) -> float:
    (ax, ay), (bx, by), (cx, cy) = t
    return abs((bx - ax) * (cy - ay) - (by - ay) * (cx - ax)) / 2.0


def diameter(t: TrianglePoints) -> float:
    return math.sqrt(max(_dist2(t.a, t.b), _dist2(t.b, t.c), _dist2(t.c, t.a)))
