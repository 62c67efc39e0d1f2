"""Appendix-point doubly linked rings.

A polygon boundary is a circular doubly linked list of nodes. Vertices bound the
edges; an appendix node between two vertices turns the edge between them into the
circular arc through all three points. The same ring type carries the result
circuits of a boolean operation.
"""

import logging
import math
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from enum import Enum
from itertools import pairwise

from arc_boolean.errors import (
    BadAppendix,
    InvalidEdge,
    NotCCW,
    NotSimple,
    OverlapUnsupported,
    TooFewVertices,
)
from arc_boolean.geometry import (
    DEFAULT_TOLERANCES,
    Edge,
    Point,
    Tolerances,
    edge_area_term,
    intersect_edges,
    point_on_edge,
)

logger = logging.getLogger(__name__)

_RAY_RETRIES = 8
_RAY_OFFSET_FACTOR = 8.0


class NodeTag(Enum):
    """Role of a node in the ring."""

    VERTEX = "vertex"
    APPENDIX = "appendix"


class EntryExit(Enum):
    """Whether the boundary of the first polygon enters or leaves the second one at a crossing."""

    ENTRY = "entry"
    EXIT = "exit"


class Location(Enum):
    """Position of a point relative to a polygon."""

    INSIDE = "inside"
    OUTSIDE = "outside"
    ON_BOUNDARY = "on_boundary"


class BooleanOperation(Enum):
    """Supported boolean operations."""

    INTERSECTION = "intersect"
    UNION = "union"
    DIFFERENCE = "difference"


class Node:
    """A ring node: a vertex, an appendix point or a crossing of two boundaries.

    :param point: Location of the node.
    :param tag: Vertex or appendix.
    :param crossing: True for crossings of the two input boundaries.
    :param source: Id of the polygon the node was taken from.
    """

    __slots__ = ("arc", "crossing", "entry_exit", "next", "point", "prev", "source", "tag", "twin")

    def __init__(self, point: Point, tag: NodeTag = NodeTag.VERTEX, crossing: bool = False, source: int = 0):
        """Initialize an unlinked node."""
        self.point = point
        self.tag = tag
        self.crossing = crossing
        self.entry_exit: EntryExit | None = None
        self.source = source
        self.prev: Node | None = None
        self.next: Node | None = None
        self.twin: Node | None = None
        # arc this appendix node belongs to, when it is known exactly
        self.arc: Edge | None = None

    def __repr__(self) -> str:
        """Return a debug-friendly representation."""
        flag = f", {self.entry_exit.value}" if self.entry_exit else ""
        return f"Node({self.kind}, ({self.point.x:.6g}, {self.point.y:.6g}){flag})"

    @property
    def kind(self) -> str:
        """One of ``vertex``, ``appendix`` or ``crossing``."""
        if self.crossing:
            return "crossing"
        return self.tag.value

    def copy(self) -> "Node":
        """Unlinked copy carrying the same data and flags."""
        node = Node(self.point, self.tag, self.crossing, self.source)
        node.entry_exit = self.entry_exit
        node.arc = self.arc
        return node


class Ring:
    """Circular doubly linked list of nodes starting at ``first``."""

    def __init__(self) -> None:
        """Initialize an empty ring."""
        self.first: Node | None = None
        self._size = 0
        self._edges: list[Edge] | None = None

    def __repr__(self) -> str:
        """Return a debug-friendly representation."""
        return f"{type(self).__name__}(nodes={self._size})"

    def __iter__(self) -> Iterator[Node]:
        """Iterate the nodes once around, starting at ``first``."""
        node = self.first
        for _ in range(self._size):
            yield node
            node = node.next

    def __len__(self) -> int:
        """Number of nodes."""
        return self._size

    def append(self, node: Node) -> Node:
        """Link ``node`` in as the last node of the ring."""
        if self.first is None:
            node.prev = node.next = node
            self.first = node
            self._size = 1
            self._edges = None
            return node
        return self.insert_after(self.first.prev, node)

    def insert_after(self, anchor: Node, node: Node) -> Node:
        """Link ``node`` in directly after ``anchor``."""
        node.prev = anchor
        node.next = anchor.next
        anchor.next.prev = node
        anchor.next = node
        self._size += 1
        self._edges = None
        return node

    def reverse(self) -> None:
        """Flip the traversal direction in place, keeping ``first``."""
        for node in list(self):
            node.prev, node.next = node.next, node.prev
        self._edges = None

    def is_linked(self) -> bool:
        """Whether ``next`` and ``prev`` are exact inverses around a closed ring."""
        nodes = list(self)
        if not nodes:
            return True
        return all(n.next.prev is n and n.prev.next is n for n in nodes) and nodes[-1].next is self.first

    def edges(self, tol: Tolerances = DEFAULT_TOLERANCES) -> list[Edge]:
        """Edges in ring order, starting at ``first``.

        :raises InvalidEdge: If consecutive nodes do not form a valid edge.
        """
        if self._edges is None:
            self._edges = list(_edges_of(list(self), tol))
        return self._edges

    def point_list(self) -> list[tuple[Point, NodeTag]]:
        """Points and tags in ring order."""
        return [(node.point, node.tag) for node in self]


def _edges_of(nodes: Sequence[Node], tol: Tolerances) -> Iterator[Edge]:
    n = len(nodes)
    for i, node in enumerate(nodes):
        if node.tag is NodeTag.APPENDIX:
            continue
        nxt = nodes[(i + 1) % n]
        if nxt.tag is not NodeTag.APPENDIX:
            yield Edge.segment(node.point, nxt.point, tol)
            continue
        end = nodes[(i + 2) % n]
        arc = nxt.arc
        if arc is not None and arc.start == node.point and arc.end == end.point:
            yield arc
        elif arc is not None and arc.start == end.point and arc.end == node.point:
            yield arc.reversed()
        else:
            yield Edge.arc(node.point, nxt.point, end.point, tol)


class ArcPolygon(Ring):
    """A simple counter-clockwise circular-arc polygon.

    Build instances with :func:`from_point_list`. The ring is treated as immutable
    once built.
    """

    def __init__(self, polygon_id: int = 1):
        """Initialize an empty polygon ring.

        :param polygon_id: Id recorded as ``source`` on the nodes.
        """
        super().__init__()
        self.polygon_id = polygon_id

    def __repr__(self) -> str:
        """Return a debug-friendly representation."""
        return f"ArcPolygon(id={self.polygon_id}, edges={self.n_edges})"

    @property
    def n_edges(self) -> int:
        """Number of edges; an arc with its appendix counts once."""
        return sum(1 for node in self if node.tag is NodeTag.VERTEX)

    def copy(self) -> "ArcPolygon":
        """Independent copy of the ring."""
        clone = ArcPolygon(self.polygon_id)
        for node in self:
            clone.append(node.copy())
        clone._edges = self._edges
        return clone


class Circuit(Ring):
    """One closed loop of a boolean result.

    :param provenance: Per node, the id of the ring it was copied from and its kind.
    :param reoriented: True when the loop was traced clockwise and flipped afterwards.
    """

    def __init__(self) -> None:
        """Initialize an empty circuit."""
        super().__init__()
        self.provenance: list[tuple[int, str]] = []
        self.reoriented = False

    def kinds(self) -> list[str]:
        """Node kinds in ring order."""
        return [node.kind for node in self]

    def to_polygon(self, tol: Tolerances = DEFAULT_TOLERANCES, polygon_id: int = 1) -> ArcPolygon:
        """The circuit as a polygon, skipping the simplicity check."""
        return from_point_list(self.point_list(), tol, trusted=True, polygon_id=polygon_id)


@dataclass
class BoolResult:
    """Result of a boolean operation: zero or more circuits."""

    op: BooleanOperation
    circuits: list[Circuit] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        """True iff there are no circuits."""
        return not self.circuits

    def area(self, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
        """Total signed area of all circuits."""
        return sum(area(c, tol) for c in self.circuits)


def from_point_list(
    pts: Iterable[tuple[Point, NodeTag]],
    tol: Tolerances = DEFAULT_TOLERANCES,
    trusted: bool = False,
    normalize: bool = False,
    polygon_id: int = 1,
) -> ArcPolygon:
    """Build and validate a polygon from its counter-clockwise point list.

    The list is rotated to start at a vertex. ``trusted`` skips the quadratic
    simplicity check; ``normalize`` reverses clockwise input instead of rejecting it.

    :raises TooFewVertices: If the points cannot enclose an area.
    :raises BadAppendix: If an appendix does not define an arc with its neighbours.
    :raises NotCCW: If the signed area is not positive.
    :raises NotSimple: If the boundary intersects itself.
    """
    pts = list(pts)
    n_vertices = sum(1 for _, tag in pts if tag is NodeTag.VERTEX)
    n_appendix = len(pts) - n_vertices
    if n_vertices < 2 or (n_vertices == 2 and n_appendix == 0):
        raise TooFewVertices(f"Polygon needs at least 3 vertices or 2 with an arc, got {n_vertices}")

    start = next(i for i, (_, tag) in enumerate(pts) if tag is NodeTag.VERTEX)
    pts = pts[start:] + pts[:start]
    for i, ((_, tag), (p, next_tag)) in enumerate(pairwise([*pts, pts[0]])):
        if tag is NodeTag.APPENDIX and next_tag is NodeTag.APPENDIX:
            raise BadAppendix(f"Consecutive appendix points at index {i} ({p.x}, {p.y})")

    polygon = _link(pts, tol, polygon_id)
    signed_area = area(polygon, tol)
    if signed_area < 0 and normalize:
        logger.debug(f"Reversing clockwise polygon {polygon_id} (area {signed_area:.6g})")
        polygon = _link(pts[:1] + pts[:0:-1], tol, polygon_id)
        signed_area = -signed_area
    if signed_area <= 0:
        raise NotCCW(f"Polygon {polygon_id} is not counter-clockwise (signed area {signed_area:.6g})")
    if not trusted:
        _check_simple(polygon.edges(tol), tol)
    return polygon


def _link(pts: list[tuple[Point, NodeTag]], tol: Tolerances, polygon_id: int) -> ArcPolygon:
    polygon = ArcPolygon(polygon_id)
    for point, tag in pts:
        polygon.append(Node(point, tag, source=polygon_id))
    nodes = list(polygon)
    edges = []
    for i, node in enumerate(nodes):
        if node.tag is NodeTag.APPENDIX:
            continue
        nxt = nodes[(i + 1) % len(nodes)]
        try:
            if nxt.tag is NodeTag.APPENDIX:
                nxt.arc = Edge.arc(node.point, nxt.point, nodes[(i + 2) % len(nodes)].point, tol)
                edges.append(nxt.arc)
            else:
                edges.append(Edge.segment(node.point, nxt.point, tol))
        except InvalidEdge as e:
            if nxt.tag is NodeTag.APPENDIX:
                raise BadAppendix(str(e)) from e
            raise
    polygon._edges = edges
    return polygon


def _check_simple(edges: list[Edge], tol: Tolerances) -> None:
    n = len(edges)
    for i in range(n):
        for j in range(i + 1, n):
            a, b = edges[i], edges[j]
            if not a.box.intersects(b.box, tol.eps_pt):
                continue
            try:
                points = intersect_edges(a, b, tol)
            except OverlapUnsupported as e:
                raise NotSimple(f"Edges {i} and {j} overlap") from e
            shared = []
            if j == i + 1:
                shared.append(a.end)
            if i == 0 and j == n - 1:
                shared.append(a.start)
            for p in points:
                if not any(p.close_to(s, tol.eps_pt) for s in shared):
                    raise NotSimple(f"Edges {i} and {j} intersect at ({p.x}, {p.y})")


def to_point_list(p: Ring) -> list[tuple[Point, NodeTag]]:
    """Points and tags of a ring, starting at its first node."""
    return p.point_list()


def edges(p: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> list[Edge]:
    """Edges of a ring in ring order."""
    return p.edges(tol)


def area(p: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Signed area enclosed by a ring, positive for counter-clockwise rings."""
    return math.fsum(edge_area_term(e) for e in p.edges(tol))


def point_in_polygon(p: Point, poly: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> Location:
    """Locate a point relative to a polygon by horizontal ray parity.

    A ray that grazes a vertex or the top or bottom of an arc is shifted up by
    ``8 * eps_pt`` and cast again, at most 8 times.
    """
    poly_edges = poly.edges(tol)
    if any(point_on_edge(p, e, tol) for e in poly_edges):
        return Location.ON_BOUNDARY
    for attempt in range(_RAY_RETRIES + 1):
        y0 = p.y + attempt * _RAY_OFFSET_FACTOR * tol.eps_pt
        crossings = _ray_crossings(p.x, y0, poly_edges, tol)
        if crossings is not None:
            return Location.INSIDE if crossings % 2 else Location.OUTSIDE
    logger.debug(f"Ray casting from ({p.x}, {p.y}) stayed degenerate, reporting boundary")
    return Location.ON_BOUNDARY


def _ray_crossings(x0: float, y0: float, poly_edges: list[Edge], tol: Tolerances) -> int | None:
    """Count boundary crossings of the ray from (x0, y0) to +x; None if the ray is degenerate."""
    eps = tol.eps_pt
    count = 0
    for e in poly_edges:
        box = e.box
        if box.ymin > y0 + eps or box.ymax < y0 - eps or box.xmax < x0 - eps:
            continue
        if abs(e.start.y - y0) <= eps and e.start.x > x0 - eps:
            return None
        if not e.is_arc:
            if (e.start.y > y0) != (e.end.y > y0):
                x = e.start.x + (y0 - e.start.y) * (e.end.x - e.start.x) / (e.end.y - e.start.y)
                if x > x0:
                    count += 1
            continue
        dy = y0 - e.center.y
        if abs(abs(dy) - e.radius) <= eps:
            theta = 0.5 * math.pi if dy > 0 else 1.5 * math.pi
            if e.angle_offset(theta) <= e.span and e.center.x > x0 - eps:
                return None
            continue
        if abs(dy) > e.radius:
            continue
        h = math.sqrt(e.radius * e.radius - dy * dy)
        for x in (e.center.x - h, e.center.x + h):
            if x > x0 and 0.0 < e.angle_param(Point(x, y0)) < e.span:
                count += 1
    return count
