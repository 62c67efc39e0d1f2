"""Sequence lists and the two-label plane sweep.

Each polygon's related edges become a sequence list: one item per x-monotone piece
holding the piece, the crossings found on it (ordered along the edge) and a tri-value
switch that marks the pieces of a decomposed arc. The sweep attaches two labels to
every piece it handles: ``lb1`` names the polygon, so neighbours from the same polygon
are never tested, and ``lb2`` is the item index, so a crossing is filed in constant
time.

The sweep itself is a Bentley-Ottmann variant for x-monotone curves:

  * events are ordered by (x, y, kind, tie key); left ends come before crossings,
    crossings before vertical segments, vertical segments before right ends
  * a pair of arcs may cross twice, so every crossing of a newly adjacent pair that
    lies ahead of the sweep line is queued at once
  * vertical segments never enter the status; at their x they are tested against the
    status entries whose height falls within their range
"""

import bisect
import itertools
import logging
import math
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from enum import IntEnum

from sortedcontainers import SortedDict

from arc_boolean.errors import DegenerateConfiguration
from arc_boolean.geometry import (
    DEFAULT_TOLERANCES,
    Edge,
    Point,
    Tolerances,
    decompose_arc,
    edge_parameter,
    intersect_edges,
    is_x_monotone,
    y_at_x,
)
from arc_boolean.polygon import ArcPolygon
from arc_boolean.related_edges import RelatedEdgeSet, select_related

logger = logging.getLogger(__name__)


@dataclass
class SeqItem:
    """A processed related edge with the crossings found on it.

    :param edge: The x-monotone edge, oriented as in its polygon.
    :param tri: 0 for ordinary edges, 1 or 2 for pieces of a decomposed arc.
    :param origin: Index of the original edge in its polygon ring.
    :param xsecs: Crossings ordered along the edge.
    :param split_start: The start is a split point of a decomposed arc, not a vertex.
    :param split_end: The end is a split point of a decomposed arc, not a vertex.
    """

    edge: Edge
    tri: int = 0
    origin: int = 0
    xsecs: list[Point] = field(default_factory=list)
    _params: list[float] = field(default_factory=list, repr=False)
    split_start: bool = False
    split_end: bool = False

    def file(self, p: Point, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        """Insert a crossing at its place along the edge."""
        t = edge_parameter(self.edge, p, tol)
        i = bisect.bisect(self._params, t)
        self._params.insert(i, t)
        self.xsecs.insert(i, p)


@dataclass
class SeqList:
    """Sequence list of one polygon, in counter-clockwise order."""

    items: list[SeqItem] = field(default_factory=list)

    def __len__(self) -> int:
        """Number of items."""
        return len(self.items)

    def __getitem__(self, index: int) -> SeqItem:
        """Item at ``index``."""
        return self.items[index]

    def __iter__(self) -> Iterator[SeqItem]:
        """Iterate the items in order."""
        return iter(self.items)

    @property
    def crossing_count(self) -> int:
        """Number of crossings filed over all items."""
        return sum(len(item.xsecs) for item in self.items)

    def runs(self) -> Iterator[list[SeqItem]]:
        """Maximal blocks of consecutive items sharing a non-zero tri value."""
        for tri, group in itertools.groupby(self.items, key=lambda item: item.tri):
            if tri:
                yield list(group)


def initialize_sequence_list(
    r: Sequence[Edge], origins: Sequence[int] | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> SeqList:
    """Build a sequence list from the related edges of one polygon.

    Non-x-monotone arcs are decomposed; their pieces form a run whose tri value
    alternates 1, 2, 1, ... from one decomposed arc to the next. Other edges get 0.
    """
    if origins is None:
        origins = range(len(r))
    items = []
    switch = 1
    for e, origin in zip(r, origins, strict=True):
        if is_x_monotone(e, tol):
            items.append(SeqItem(e, 0, origin))
            continue
        pieces = decompose_arc(e, tol)
        items.extend(
            SeqItem(piece, switch, origin, split_start=k > 0, split_end=k < len(pieces) - 1)
            for k, piece in enumerate(pieces)
        )
        switch = 3 - switch
    return SeqList(items)


class EventKind(IntEnum):
    """Event kinds in processing order at equal coordinates."""

    LEFT = 0
    CROSSING = 1
    VERTICAL = 2
    RIGHT = 3


@dataclass(eq=False)
class SweepSegment:
    """An x-monotone edge as seen by the sweep, with endpoints ordered left to right.

    :param edge: The edge.
    :param order: Deterministic tie breaker.
    :param splits: Whether the start and the end of the edge are split points of a
        decomposed arc rather than polygon vertices.
    :param tol: Tolerances; ``eps_pt`` decides whether a segment is vertical.
    """

    edge: Edge
    order: int = 0
    splits: tuple[bool, bool] = (False, False)
    tol: Tolerances = DEFAULT_TOLERANCES
    left: Point = field(init=False)
    right: Point = field(init=False)
    vertical: bool = field(init=False)
    split_left: bool = field(init=False)
    split_right: bool = field(init=False)

    def __post_init__(self) -> None:
        """Order the endpoints by (x, y)."""
        a, b = self.edge.start, self.edge.end
        if (a.x, a.y) <= (b.x, b.y):
            self.left, self.right = a, b
            self.split_left, self.split_right = self.splits
        else:
            self.left, self.right = b, a
            self.split_right, self.split_left = self.splits
        self.vertical = not self.edge.is_arc and self.right.x - self.left.x <= self.tol.eps_pt

    def vertex_ends(self) -> Iterator[Point]:
        """The endpoints that are polygon vertices."""
        if not self.split_left:
            yield self.left
        if not self.split_right:
            yield self.right

    def split_ends(self) -> Iterator[Point]:
        """The endpoints where a decomposed arc was cut."""
        if self.split_left:
            yield self.left
        if self.split_right:
            yield self.right

    @property
    def tie_key(self) -> tuple:
        """Key that orders otherwise indistinguishable segments."""
        return (self.order,)


@dataclass(eq=False)
class LabeledSegment(SweepSegment):
    """A sweep segment carrying its polygon flag and sequence-list index.

    :param lb1: True iff the edge belongs to polygon 1.
    :param lb2: Index of the edge's item in its sequence list.
    """

    lb1: bool = True
    lb2: int = 0

    @property
    def tie_key(self) -> tuple:
        """Polygon flag, then sequence-list index."""
        return (self.lb1, self.lb2)


@dataclass(eq=False)
class Event:
    """A queued sweep event."""

    kind: EventKind
    point: Point
    segments: tuple[SweepSegment, ...]


@dataclass
class SweepCounters:
    """Instrumentation counters of one sweep."""

    pair_tests: int = 0
    same_polygon_tests: int = 0
    suppressed_tests: int = 0
    discarded_reports: int = 0
    events: int = 0
    status_ops: int = 0
    crossings: int = 0


class EventQueue:
    """Priority queue of sweep events plus an index of every crossing ever queued.

    The crossing index buckets points into cells of size ``eps_pt`` so membership
    within ``eps_pt`` needs to look at nine cells only.
    """

    def __init__(self, tol: Tolerances = DEFAULT_TOLERANCES):
        """Initialize an empty queue."""
        self.tol = tol
        self._events: SortedDict = SortedDict()
        self._seq = itertools.count()
        self._known: dict[tuple[int, int], list[tuple[Point, frozenset]]] = {}

    def __len__(self) -> int:
        """Number of pending events."""
        return len(self._events)

    def push(self, event: Event, tie_key: tuple = ()) -> None:
        """Queue an event."""
        key = (event.point.x, event.point.y, int(event.kind), tie_key, next(self._seq))
        self._events[key] = event

    def pop(self) -> Event:
        """Remove and return the first event."""
        _, event = self._events.popitem(0)
        return event

    def _cell(self, p: Point) -> tuple[int, int]:
        return math.floor(p.x / self.tol.eps_pt), math.floor(p.y / self.tol.eps_pt)

    def known_pair(self, p: Point) -> frozenset | None:
        """The edge pair a crossing within ``eps_pt`` of ``p`` was recorded for, if any."""
        cx, cy = self._cell(p)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for q, pair in self._known.get((cx + dx, cy + dy), ()):
                    if p.close_to(q, self.tol.eps_pt):
                        return pair
        return None

    def remember(self, p: Point, pair: frozenset) -> None:
        """Record a crossing in the membership index."""
        self._known.setdefault(self._cell(p), []).append((p, pair))


class PlaneSweep:
    """Sweep-line search for crossings between the edges of two polygons.

    Subclasses decide which neighbour pairs get tested and how a segment finds its
    sequence-list item.
    """

    def __init__(
        self,
        lists: tuple[SeqList, SeqList],
        tol: Tolerances = DEFAULT_TOLERANCES,
        counters: SweepCounters | None = None,
    ):
        """Initialize the sweep.

        :param lists: Sequence lists of polygon 1 and polygon 2.
        :param tol: Tolerances.
        :param counters: Counters to update, fresh ones if omitted.
        """
        self.lists = lists
        self.tol = tol
        self.counters = counters if counters is not None else SweepCounters()
        self.crossings: list[tuple[SeqItem, SeqItem, Point]] = []
        self._status: list[SweepSegment] = []
        self._verticals: list[SweepSegment] = []
        self._queue = EventQueue(tol)
        self._position = (-math.inf, -math.inf)

    def _should_test(self, s: SweepSegment, t: SweepSegment) -> bool:
        raise NotImplementedError

    def _locate(self, s: SweepSegment) -> tuple[int, SeqItem]:
        raise NotImplementedError

    def _polygon_of(self, s: SweepSegment) -> int:
        raise NotImplementedError

    def run(self, segments: Sequence[SweepSegment]) -> list[tuple[SeqItem, SeqItem, Point]]:
        """Sweep over the segments and file every crossing into the sequence lists.

        :return: (item of polygon 1, item of polygon 2, crossing) per crossing found.
        """
        for seg in segments:
            if seg.vertical:
                self._queue.push(Event(EventKind.VERTICAL, seg.left, (seg,)), seg.tie_key)
            else:
                self._queue.push(Event(EventKind.LEFT, seg.left, (seg,)), seg.tie_key)
                self._queue.push(Event(EventKind.RIGHT, seg.right, (seg,)), seg.tie_key)

        while self._queue:
            event = self._queue.pop()
            self.counters.events += 1
            self._position = (event.point.x, event.point.y)
            match event.kind:
                case EventKind.LEFT:
                    self._insert(event.segments[0])
                case EventKind.RIGHT:
                    self._remove(event.segments[0])
                case EventKind.CROSSING:
                    self._swap(*event.segments)
                case EventKind.VERTICAL:
                    self._probe_vertical(event.segments[0])

        self.counters.crossings = len(self.crossings)
        logger.debug(f"Sweep finished: {self.counters}")
        return self.crossings

    def neighbor_check(self, s: SweepSegment, t: SweepSegment) -> None:
        """Test two adjacent segments and report every crossing of the pair."""
        if not self._should_test(s, t):
            self.counters.suppressed_tests += 1
            return
        self.counters.pair_tests += 1
        if self._polygon_of(s) == self._polygon_of(t):
            self.counters.same_polygon_tests += 1
        for p in intersect_edges(s.edge, t.edge, self.tol):
            self._report(s, t, p)

    def _report(self, s: SweepSegment, t: SweepSegment, p: Point) -> None:
        polygon_s, item_s = self._locate(s)
        polygon_t, item_t = self._locate(t)
        if polygon_s == polygon_t:
            self.counters.discarded_reports += 1
            return
        # pieces of one decomposed arc share their origin, so a crossing on a split
        # point is the same crossing whichever piece reports it
        pair = frozenset(((polygon_s, item_s.origin), (polygon_t, item_t.origin)))
        known = self._queue.known_pair(p)
        if known is not None:
            if known != pair:
                raise DegenerateConfiguration(f"Three or more edges meet at ({p.x}, {p.y})")
            return
        for end in itertools.chain(s.vertex_ends(), t.vertex_ends()):
            if p.close_to(end, self.tol.eps_pt):
                raise DegenerateConfiguration(f"Crossing ({p.x}, {p.y}) coincides with an edge endpoint")

        self._queue.remember(p, pair)
        item_s = self._filing_item(polygon_s, item_s, p)
        item_t = self._filing_item(polygon_t, item_t, p)
        item_s.file(p, self.tol)
        item_t.file(p, self.tol)
        if polygon_s == 1:
            self.crossings.append((item_s, item_t, p))
        else:
            self.crossings.append((item_t, item_s, p))
        # vertical segments stay out of the status, so there is nothing to swap
        if s.vertical or t.vertical:
            return
        # a split point is an x extreme of its arc: both pieces enter or leave the
        # status there, which puts the pair in order without a swap
        if any(p.close_to(end, self.tol.eps_pt) for end in itertools.chain(s.split_ends(), t.split_ends())):
            return
        if (p.x, p.y) > self._position:
            self._queue.push(Event(EventKind.CROSSING, p, (s, t)))
        else:
            logger.debug(f"Crossing ({p.x}, {p.y}) found behind the sweep line")

    def _filing_item(self, polygon: int, item: SeqItem, p: Point) -> SeqItem:
        """The item a crossing goes to; one on a split point belongs to the piece starting there."""
        if not (item.split_end and p.close_to(item.edge.end, self.tol.eps_pt)):
            return item
        seq = self.lists[polygon - 1]
        index = next(i for i, candidate in enumerate(seq) if candidate is item)
        return seq[index + 1]

    def _y(self, seg: SweepSegment, x: float) -> float:
        return y_at_x(seg.edge, min(max(x, seg.left.x), seg.right.x), self.tol)

    def _below(self, a: SweepSegment, b: SweepSegment, x: float) -> bool:
        """Whether ``a`` runs below ``b`` just right of ``x``."""
        ya, yb = self._y(a, x), self._y(b, x)
        if abs(ya - yb) > self.tol.eps_pt:
            return ya < yb
        sa, sb = _slope_angle(a, x, ya), _slope_angle(b, x, yb)
        if abs(sa - sb) > self.tol.eps_param:
            return sa < sb
        xm = 0.5 * (x + min(a.right.x, b.right.x))
        ya, yb = self._y(a, xm), self._y(b, xm)
        if abs(ya - yb) > self.tol.eps_pt:
            return ya < yb
        return a.tie_key < b.tie_key

    def _insert(self, seg: SweepSegment) -> None:
        x = seg.left.x
        lo, hi = 0, len(self._status)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._below(self._status[mid], seg, x):
                lo = mid + 1
            else:
                hi = mid
        self._status.insert(lo, seg)
        self.counters.status_ops += 1
        if lo > 0:
            self.neighbor_check(self._status[lo - 1], seg)
        if lo + 1 < len(self._status):
            self.neighbor_check(seg, self._status[lo + 1])
        for v in self._verticals:
            if abs(v.left.x - x) <= self.tol.eps_pt and v.left.y <= seg.left.y <= v.right.y:
                self.neighbor_check(v, seg)

    def _index(self, seg: SweepSegment) -> int:
        try:
            return self._status.index(seg)
        except ValueError as e:
            raise DegenerateConfiguration(f"Segment {seg.left}->{seg.right} lost from the sweep status") from e

    def _remove(self, seg: SweepSegment) -> None:
        i = self._index(seg)
        del self._status[i]
        self.counters.status_ops += 1
        if 0 < i < len(self._status):
            self.neighbor_check(self._status[i - 1], self._status[i])

    def _swap(self, s: SweepSegment, t: SweepSegment) -> None:
        i, j = self._index(s), self._index(t)
        if abs(i - j) != 1:
            raise DegenerateConfiguration(f"Crossing at {self._position} is not between adjacent segments")
        lo = min(i, j)
        self._status[i], self._status[j] = self._status[j], self._status[i]
        self.counters.status_ops += 1
        if lo > 0:
            self.neighbor_check(self._status[lo - 1], self._status[lo])
        if lo + 2 < len(self._status):
            self.neighbor_check(self._status[lo + 1], self._status[lo + 2])

    def _probe_vertical(self, v: SweepSegment) -> None:
        x = v.left.x
        for t in list(self._status):
            y = self._y(t, x)
            if v.left.y - self.tol.eps_pt <= y <= v.right.y + self.tol.eps_pt:
                self.neighbor_check(v, t)
        for w in self._verticals:
            if abs(w.left.x - x) <= self.tol.eps_pt:
                self.neighbor_check(v, w)
        self._verticals.append(v)


class LabeledSweep(PlaneSweep):
    """Sweep that skips same-polygon pairs and files crossings through the labels."""

    def _should_test(self, s: LabeledSegment, t: LabeledSegment) -> bool:
        return s.lb1 != t.lb1

    def _polygon_of(self, s: LabeledSegment) -> int:
        return 1 if s.lb1 else 2

    def _locate(self, s: LabeledSegment) -> tuple[int, SeqItem]:
        polygon = self._polygon_of(s)
        return polygon, self.lists[polygon - 1][s.lb2]


def labeled_segments(s1: SeqList, s2: SeqList, tol: Tolerances = DEFAULT_TOLERANCES) -> list[LabeledSegment]:
    """One labeled segment per sequence-list item of both polygons."""
    return [
        LabeledSegment(item.edge, splits=(item.split_start, item.split_end), tol=tol, lb1=lb1, lb2=i)
        for lb1, seq in ((True, s1), (False, s2))
        for i, item in enumerate(seq)
    ]


def construct_sequence_lists(
    p1: ArcPolygon,
    p2: ArcPolygon,
    tol: Tolerances = DEFAULT_TOLERANCES,
    counters: SweepCounters | None = None,
) -> tuple[SeqList, SeqList, RelatedEdgeSet]:
    """Select the related edges, build both sequence lists and file every crossing.

    :raises DisjointInputs: If the bounding boxes do not meet.
    :raises DegenerateConfiguration: If a crossing hits an endpoint or three edges meet.
    :raises OverlapUnsupported: If two edges overlap.
    """
    related = select_related(p1, p2, tol)
    s1 = initialize_sequence_list(related.r1, related.origin1, tol)
    s2 = initialize_sequence_list(related.r2, related.origin2, tol)
    sweep = LabeledSweep((s1, s2), tol, counters)
    sweep.run(labeled_segments(s1, s2, tol))
    logger.debug(
        f"Sequence lists built: {len(s1)} + {len(s2)} items, {len(sweep.crossings)} crossings"
    )
    return s1, s2, related


def _slope_angle(seg: SweepSegment, x: float, y: float) -> float:
    """Direction angle in [-pi/2, pi/2] of the tangent at (x, y), oriented left to right."""
    e = seg.edge
    if not e.is_arc:
        return math.atan2(seg.right.y - seg.left.y, seg.right.x - seg.left.x)
    theta = math.atan2(y - e.center.y, x - e.center.x)
    if e.appendix.y > e.center.y:
        return math.atan2(-math.cos(theta), math.sin(theta))
    return math.atan2(math.cos(theta), -math.sin(theta))
