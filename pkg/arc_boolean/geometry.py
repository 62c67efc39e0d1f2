"""Geometric primitives: points, boxes, tolerances and edges.

An edge is either a straight segment or a circular arc. Arcs are stored the way the
polygon encoding stores them, as start, appendix and end point; center, radius and the
signed angular sweep are derived once at construction. Angles are measured at the
center and normalized to [0, 2*pi); positive sweeps run counter-clockwise.

All values are immutable, so every function in this module is safe to call from any
thread.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from itertools import pairwise
from typing import Self

from pydantic import BaseModel, ConfigDict, Field

from arc_boolean.errors import (
    InvalidEdge,
    InvalidPoint,
    OutOfSpan,
    OverlapUnsupported,
    PointNotOnEdge,
    UnsortedSplitPoints,
)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

# Angles of the circle extremes together with the offset of the extreme point from
# the center. The first and third entries are the horizontal extremes.
_AXIS_EXTREMES = (
    (0.0, 1.0, 0.0),
    (0.5 * math.pi, 0.0, 1.0),
    (math.pi, -1.0, 0.0),
    (1.5 * math.pi, 0.0, -1.0),
)
_HORIZONTAL_EXTREMES = (_AXIS_EXTREMES[0], _AXIS_EXTREMES[2])


class Tolerances(BaseModel):
    """Point coincidence, relative metric and parametric tolerances."""

    model_config = ConfigDict(frozen=True)

    eps_pt: float = Field(default=1e-9, gt=0)
    eps_rel: float = Field(default=1e-12, gt=0)
    eps_param: float = Field(default=1e-12, gt=0)

    def angular(self, radius: float) -> float:
        """Angular tolerance on a circle of the given radius."""
        return max(self.eps_param, self.eps_pt / radius)


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True, slots=True)
class Point:
    """A point in the plane."""

    x: float
    y: float

    def __post_init__(self) -> None:
        """Reject NaN and infinite coordinates."""
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidPoint(f"Non-finite coordinate ({self.x}, {self.y})")
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))

    def distance(self, other: "Point") -> float:
        """Euclidean distance to another point."""
        return math.hypot(self.x - other.x, self.y - other.y)

    def close_to(self, other: "Point", eps: float) -> bool:
        """Whether the two points coincide within ``eps``."""
        return self.distance(other) <= eps

    def midpoint(self, other: "Point") -> "Point":
        """Midpoint of the segment to another point."""
        return Point(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))


@dataclass(frozen=True, slots=True)
class Box:
    """Axis-aligned bounding box."""

    xmin: float
    xmax: float
    ymin: float
    ymax: float

    @classmethod
    def around(cls, points: list[Point]) -> Self:
        """Smallest box containing the given points."""
        xs = [p.x for p in points]
        ys = [p.y for p in points]
        return cls(min(xs), max(xs), min(ys), max(ys))

    @property
    def width(self) -> float:
        """Horizontal extent."""
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        """Vertical extent."""
        return self.ymax - self.ymin

    def union(self, other: "Box") -> "Box":
        """Smallest box containing both boxes."""
        return Box(
            min(self.xmin, other.xmin),
            max(self.xmax, other.xmax),
            min(self.ymin, other.ymin),
            max(self.ymax, other.ymax),
        )

    def intersects(self, other: "Box", eps: float = 0.0) -> bool:
        """Whether the boxes overlap, closed and widened by ``eps``."""
        return (
            self.xmin <= other.xmax + eps
            and other.xmin <= self.xmax + eps
            and self.ymin <= other.ymax + eps
            and other.ymin <= self.ymax + eps
        )


class EdgeKind(Enum):
    """Shape of an edge."""

    SEGMENT = "segment"
    ARC = "arc"


@dataclass(frozen=True, slots=True)
class Edge:
    """A straight segment or a circular arc from ``start`` to ``end``.

    Build instances through :meth:`segment` and :meth:`arc`; the remaining fields are
    derived for arcs and left at their defaults for segments.
    """

    kind: EdgeKind
    start: Point
    end: Point
    appendix: Point | None = None
    center: Point | None = None
    radius: float = 0.0
    theta_start: float = 0.0
    sweep: float = 0.0
    box: Box = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        """Compute the bounding box once."""
        object.__setattr__(self, "box", self._compute_box())

    @classmethod
    def segment(cls, start: Point, end: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> Self:
        """Create a straight segment.

        :raises InvalidEdge: If both endpoints coincide.
        """
        if start.close_to(end, tol.eps_pt):
            raise InvalidEdge(f"Segment endpoints coincide at ({start.x}, {start.y})")
        return cls(EdgeKind.SEGMENT, start, end)

    @classmethod
    def arc(cls, start: Point, appendix: Point, end: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> Self:
        """Create the circular arc running from ``start`` through ``appendix`` to ``end``.

        :raises InvalidEdge: If the points coincide or are collinear.
        """
        if min(start.distance(appendix), appendix.distance(end), start.distance(end)) <= tol.eps_pt:
            raise InvalidEdge(f"Arc points are not pairwise distinct: {start}, {appendix}, {end}")
        mx, my = appendix.x - start.x, appendix.y - start.y
        ex, ey = end.x - start.x, end.y - start.y
        cross = mx * ey - my * ex
        if abs(cross) <= tol.eps_pt * math.hypot(ex, ey):
            raise InvalidEdge(f"Arc points are collinear: {start}, {appendix}, {end}")

        # circumcenter relative to start
        d = 2.0 * cross
        m2 = mx * mx + my * my
        e2 = ex * ex + ey * ey
        ux = (ey * m2 - my * e2) / d
        uy = (mx * e2 - ex * m2) / d
        center = Point(start.x + ux, start.y + uy)
        radius = math.hypot(ux, uy)
        for p in (appendix, end):
            if abs(p.distance(center) - radius) > tol.eps_rel * radius + tol.eps_pt:
                raise InvalidEdge(f"Arc points are not concyclic: {start}, {appendix}, {end}")

        direction = 1.0 if cross > 0 else -1.0
        theta_start = math.atan2(start.y - center.y, start.x - center.x) % TWO_PI
        theta_end = math.atan2(end.y - center.y, end.x - center.x) % TWO_PI
        span = ((theta_end - theta_start) * direction) % TWO_PI
        return cls(EdgeKind.ARC, start, end, appendix, center, radius, theta_start, direction * span)

    @property
    def is_arc(self) -> bool:
        """Whether this edge is a circular arc."""
        return self.kind is EdgeKind.ARC

    @property
    def direction(self) -> float:
        """+1 for counter-clockwise arcs, -1 for clockwise arcs."""
        return 1.0 if self.sweep > 0 else -1.0

    @property
    def span(self) -> float:
        """Unsigned central angle of an arc."""
        return abs(self.sweep)

    def angle_offset(self, theta: float) -> float:
        """Angular distance from the arc start to the angle ``theta`` in sweep direction."""
        return ((theta - self.theta_start) * self.direction) % TWO_PI

    def angle_param(self, p: Point, ang_tol: float = 0.0) -> float:
        """Angular parameter of ``p`` along the arc.

        Values just below 2*pi (within ``ang_tol``) wrap to small negatives so points
        at the start read as 0.
        """
        t = self.angle_offset(math.atan2(p.y - self.center.y, p.x - self.center.x))
        if t > TWO_PI - ang_tol:
            t -= TWO_PI
        return t

    def point_at_angle(self, t: float) -> Point:
        """Point on the arc at angular parameter ``t``."""
        theta = self.theta_start + self.direction * t
        return Point(self.center.x + self.radius * math.cos(theta), self.center.y + self.radius * math.sin(theta))

    def sub_arc(self, start: Point, end: Point, t0: float, t1: float) -> "Edge":
        """Piece of this arc between angular parameters ``t0`` and ``t1``.

        The piece keeps the parent's circle, takes ``start`` and ``end`` verbatim and
        gets a fresh appendix at its angular midpoint.
        """
        theta0 = (self.theta_start + self.direction * t0) % TWO_PI
        return Edge(
            EdgeKind.ARC,
            start,
            end,
            self.point_at_angle(0.5 * (t0 + t1)),
            self.center,
            self.radius,
            theta0,
            self.direction * (t1 - t0),
        )

    def reversed(self) -> "Edge":
        """The same curve traversed from ``end`` to ``start``."""
        if not self.is_arc:
            return Edge(EdgeKind.SEGMENT, self.end, self.start)
        theta_end = (self.theta_start + self.sweep) % TWO_PI
        return Edge(EdgeKind.ARC, self.end, self.start, self.appendix, self.center, self.radius, theta_end, -self.sweep)

    def with_midpoint_appendix(self) -> "Edge":
        """The same curve with its appendix moved to the angular midpoint."""
        if not self.is_arc:
            return self
        return self.sub_arc(self.start, self.end, 0.0, self.span)

    def midpoint(self) -> Point:
        """Point halfway along the edge."""
        if self.is_arc:
            return self.point_at_angle(0.5 * self.span)
        return self.start.midpoint(self.end)

    def _compute_box(self) -> Box:
        points = [self.start, self.end]
        if self.is_arc:
            for theta, ox, oy in _AXIS_EXTREMES:
                if self.angle_offset(theta) <= self.span:
                    points.append(Point(self.center.x + ox * self.radius, self.center.y + oy * self.radius))
        return Box.around(points)


def edge_bbox(e: Edge) -> Box:
    """Tightest axis-aligned box around an edge."""
    return e.box


def is_x_monotone(e: Edge, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether every vertical line meets the edge at most once.

    Segments always qualify; an arc qualifies unless its interior properly contains
    one of the horizontal extremes of its circle.
    """
    if not e.is_arc:
        return True
    ang_tol = tol.angular(e.radius)
    return not any(ang_tol < e.angle_offset(theta) < e.span - ang_tol for theta, _, _ in _HORIZONTAL_EXTREMES)


def decompose_arc(e: Edge, tol: Tolerances = DEFAULT_TOLERANCES) -> list[Edge]:
    """Split an arc at the horizontal extremes inside it.

    Segments come back unchanged. An arc yields one to three x-monotone pieces that
    chain from its start to its end, each with an appendix at its angular midpoint.

    :raises InvalidEdge: If ``e`` is an arc without a derived circle.
    """
    if not e.is_arc:
        return [e]
    if e.center is None or e.radius <= 0:
        raise InvalidEdge(f"Arc without a circle: {e}")

    ang_tol = tol.angular(e.radius)
    cuts = sorted(
        (e.angle_offset(theta), ox)
        for theta, ox, _ in _HORIZONTAL_EXTREMES
        if ang_tol < e.angle_offset(theta) < e.span - ang_tol
    )
    pieces = []
    t0, p0 = 0.0, e.start
    for t, ox in cuts:
        p = Point(e.center.x + ox * e.radius, e.center.y)
        pieces.append(e.sub_arc(p0, p, t0, t))
        t0, p0 = t, p
    pieces.append(e.sub_arc(p0, e.end, t0, e.span))
    return pieces


def edge_parameter(e: Edge, p: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Position of a point along an edge.

    Segments use the normalized parameter in [0, 1], arcs the angular parameter in
    [0, span]. Only compare values taken on the same edge.
    """
    if e.is_arc:
        return e.angle_param(p, tol.angular(e.radius))
    dx, dy = e.end.x - e.start.x, e.end.y - e.start.y
    return ((p.x - e.start.x) * dx + (p.y - e.start.y) * dy) / (dx * dx + dy * dy)


def point_on_edge(p: Point, e: Edge, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """Whether ``p`` lies on ``e`` within ``eps_pt``."""
    if p.close_to(e.start, tol.eps_pt) or p.close_to(e.end, tol.eps_pt):
        return True
    if not e.is_arc:
        dx, dy = e.end.x - e.start.x, e.end.y - e.start.y
        length = math.hypot(dx, dy)
        t = ((p.x - e.start.x) * dx + (p.y - e.start.y) * dy) / (length * length)
        if not 0.0 <= t <= 1.0:
            return False
        return abs((p.x - e.start.x) * dy - (p.y - e.start.y) * dx) / length <= tol.eps_pt
    if abs(p.distance(e.center) - e.radius) > tol.eps_pt:
        return False
    ang_tol = tol.angular(e.radius)
    return -ang_tol <= e.angle_param(p, ang_tol) <= e.span + ang_tol


def y_at_x(e: Edge, x: float, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """The y coordinate of the x-monotone edge ``e`` at ``x``.

    Vertical segments report their midpoint.

    :raises OutOfSpan: If ``x`` lies outside the edge's x-span by more than ``eps_pt``.
    """
    box = e.box
    if x < box.xmin - tol.eps_pt or x > box.xmax + tol.eps_pt:
        raise OutOfSpan(f"x={x} outside [{box.xmin}, {box.xmax}]")
    x = min(max(x, box.xmin), box.xmax)
    if not e.is_arc:
        dx = e.end.x - e.start.x
        if abs(dx) <= tol.eps_pt:
            return 0.5 * (e.start.y + e.end.y)
        t = (x - e.start.x) / dx
        return e.start.y + t * (e.end.y - e.start.y)
    dx = x - e.center.x
    h = math.sqrt(max(e.radius * e.radius - dx * dx, 0.0))
    return e.center.y + h if e.appendix.y > e.center.y else e.center.y - h


def split_edge_at(e: Edge, pts: list[Point], tol: Tolerances = DEFAULT_TOLERANCES) -> list[Edge]:
    """Cut an edge at interior points ordered along it.

    Sub-arcs keep the parent circle and receive appendixes at their angular midpoints.

    :raises PointNotOnEdge: If a point is off the edge or coincides with an endpoint.
    :raises UnsortedSplitPoints: If the points are not strictly increasing along the edge.
    """
    if not pts:
        return [e]
    params = []
    for p in pts:
        if not point_on_edge(p, e, tol) or p.close_to(e.start, tol.eps_pt) or p.close_to(e.end, tol.eps_pt):
            raise PointNotOnEdge(f"({p.x}, {p.y}) is not strictly inside {e.kind.value} {e.start} -> {e.end}")
        params.append(edge_parameter(e, p, tol))
    for (a, b), (ta, tb) in zip(pairwise(pts), pairwise(params), strict=True):
        if tb <= ta or a.close_to(b, tol.eps_pt):
            raise UnsortedSplitPoints(f"({b.x}, {b.y}) does not follow ({a.x}, {a.y}) along the edge")

    chain = [e.start, *pts, e.end]
    if not e.is_arc:
        return [Edge(EdgeKind.SEGMENT, a, b) for a, b in pairwise(chain)]
    ts = [0.0, *params, e.span]
    return [e.sub_arc(a, b, t0, t1) for (a, b), (t0, t1) in zip(pairwise(chain), pairwise(ts), strict=True)]


def edge_area_term(e: Edge) -> float:
    """Contribution of an edge to the signed area of a closed boundary.

    Chord shoelace term plus, for arcs, the signed circular segment between chord
    and arc.
    """
    chord = 0.5 * (e.start.x * e.end.y - e.end.x * e.start.y)
    if not e.is_arc:
        return chord
    theta = e.span
    return chord + math.copysign(0.5 * e.radius * e.radius * (theta - math.sin(theta)), e.sweep)


def intersect_edges(a: Edge, b: Edge, tol: Tolerances = DEFAULT_TOLERANCES) -> list[Point]:
    """Transversal crossing points of two edges, sorted by (x, y).

    Tangential touches are not reported.

    :raises OverlapUnsupported: If the edges share a piece of positive length.
    """
    if a.is_arc and not b.is_arc:
        a, b = b, a
    if not a.is_arc and not b.is_arc:
        candidates = _segment_segment(a, b, tol)
    elif not a.is_arc:
        candidates = _segment_circle(a, b, tol)
    else:
        candidates = _circle_circle(a, b, tol)

    points: list[Point] = []
    for p in candidates:
        if not (point_on_edge(p, a, tol) and point_on_edge(p, b, tol)):
            continue
        if any(p.close_to(q, tol.eps_pt) for q in points):
            continue
        points.append(p)
    return sorted(points, key=lambda p: (p.x, p.y))


def _segment_segment(a: Edge, b: Edge, tol: Tolerances) -> list[Point]:
    rx, ry = a.end.x - a.start.x, a.end.y - a.start.y
    sx, sy = b.end.x - b.start.x, b.end.y - b.start.y
    qx, qy = b.start.x - a.start.x, b.start.y - a.start.y
    len_r = math.hypot(rx, ry)
    len_s = math.hypot(sx, sy)
    denom = rx * sy - ry * sx
    if abs(denom) <= tol.eps_rel * len_r * len_s:
        if abs(qx * ry - qy * rx) / len_r > tol.eps_pt:
            return []
        t0 = (qx * rx + qy * ry) / len_r
        t1 = ((b.end.x - a.start.x) * rx + (b.end.y - a.start.y) * ry) / len_r
        overlap = min(len_r, max(t0, t1)) - max(0.0, min(t0, t1))
        if overlap > tol.eps_pt:
            raise OverlapUnsupported(f"Collinear segments overlap: {a.start}->{a.end} and {b.start}->{b.end}")
        return []
    t = (qx * sy - qy * sx) / denom
    return [Point(a.start.x + t * rx, a.start.y + t * ry)]


def _segment_circle(seg: Edge, arc: Edge, tol: Tolerances) -> list[Point]:
    dx, dy = seg.end.x - seg.start.x, seg.end.y - seg.start.y
    length2 = dx * dx + dy * dy
    fx, fy = seg.start.x - arc.center.x, seg.start.y - arc.center.y
    t_foot = -(fx * dx + fy * dy) / length2
    foot_x, foot_y = seg.start.x + t_foot * dx, seg.start.y + t_foot * dy
    dist = math.hypot(foot_x - arc.center.x, foot_y - arc.center.y)
    if dist >= arc.radius - tol.eps_pt:
        # missed or tangent
        return []
    h = math.sqrt(arc.radius * arc.radius - dist * dist) / math.sqrt(length2)
    return [
        Point(seg.start.x + (t_foot - h) * dx, seg.start.y + (t_foot - h) * dy),
        Point(seg.start.x + (t_foot + h) * dx, seg.start.y + (t_foot + h) * dy),
    ]


def _circle_circle(a: Edge, b: Edge, tol: Tolerances) -> list[Point]:
    c1, r1, c2, r2 = a.center, a.radius, b.center, b.radius
    d = c1.distance(c2)
    if d <= tol.eps_pt and abs(r1 - r2) <= tol.eps_pt:
        if _cocircular_overlap(a, b, tol):
            raise OverlapUnsupported(f"Co-circular arcs overlap: {a.start}->{a.end} and {b.start}->{b.end}")
        return []
    if d > r1 + r2 + tol.eps_pt or d < abs(r1 - r2) - tol.eps_pt:
        return []
    if abs(d - (r1 + r2)) <= tol.eps_pt or abs(d - abs(r1 - r2)) <= tol.eps_pt:
        # tangent circles
        return []
    along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d)
    h = math.sqrt(max(r1 * r1 - along * along, 0.0))
    ux, uy = (c2.x - c1.x) / d, (c2.y - c1.y) / d
    bx, by = c1.x + along * ux, c1.y + along * uy
    return [Point(bx - h * uy, by + h * ux), Point(bx + h * uy, by - h * ux)]


def _cocircular_overlap(a: Edge, b: Edge, tol: Tolerances) -> bool:
    ang_tol = tol.angular(a.radius)

    def strictly_inside(arc: Edge, p: Point) -> bool:
        return ang_tol < arc.angle_param(p, ang_tol) < arc.span - ang_tol

    return (
        strictly_inside(b, a.start)
        or strictly_inside(b, a.end)
        or strictly_inside(a, b.start)
        or strictly_inside(a, b.end)
        or strictly_inside(b, a.midpoint())
    )
