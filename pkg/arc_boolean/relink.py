"""Build the new linked lists P1* and P2*.

Each new ring is a copy of its input ring in which every edge that picked up
crossings is replaced by its pieces: crossing nodes at the cut points and, for
arcs, one appendix node per sub-arc. Decomposed arcs are healed here: the pieces
of one arc are merged back and the arc is cut only at its crossings, or restored
verbatim when none of its pieces was crossed. Crossing nodes of both rings are
twinned.
"""

import dataclasses
import logging
from dataclasses import dataclass, field

from arc_boolean.errors import DegenerateConfiguration, InconsistentRun
from arc_boolean.geometry import DEFAULT_TOLERANCES, Edge, Point, Tolerances, split_edge_at
from arc_boolean.polygon import ArcPolygon, Node, NodeTag, Ring
from arc_boolean.sweep import SeqItem, SeqList

logger = logging.getLogger(__name__)

_MIN_RUN = 2
_MAX_RUN = 3


class NewRing(Ring):
    """A copied polygon ring with crossing nodes spliced in.

    :param ring_id: 1 for P1*, 2 for P2*; recorded as ``source`` on every node.
    """

    def __init__(self, ring_id: int):
        """Initialize an empty ring."""
        super().__init__()
        self.ring_id = ring_id

    def __repr__(self) -> str:
        """Return a debug-friendly representation."""
        return f"NewRing(id={self.ring_id}, nodes={len(self)}, crossings={len(self.crossings())})"

    def crossings(self) -> list[Node]:
        """Crossing nodes in ring order."""
        return [node for node in self if node.crossing]


@dataclass
class RelinkStats:
    """Counts collected while relinking.

    ``appendix_counts`` holds (crossings, new appendix nodes) per crossed arc.
    """

    appendix_counts: list[tuple[int, int]] = field(default_factory=list)
    run_lengths: list[int] = field(default_factory=list)
    discarded_runs: int = 0


def _crossing_node(p: Point) -> Node:
    return Node(p, NodeTag.VERTEX, crossing=True)


def _appendix_node(arc: Edge) -> Node:
    node = Node(arc.appendix, NodeTag.APPENDIX)
    node.arc = arc
    return node


def insert_appendix_points(
    edge: Edge, xsecs: list[Point], tol: Tolerances = DEFAULT_TOLERANCES, stats: RelinkStats | None = None
) -> list[Node]:
    """Cut an arc at its crossings and give every sub-arc one appendix node.

    The original appendix is reused for the sub-arc it lies in unless it coincides
    with a crossing, so ``k`` crossings cost ``k`` or ``k + 1`` new appendix points.

    :param edge: The arc, oriented as in its polygon.
    :param xsecs: Crossings ordered along the arc.
    :return: The nodes strictly between the arc's start and end: appendix,
        crossing, appendix, ..., crossing, appendix.
    :raises PointNotOnEdge: If a crossing is off the arc.
    :raises UnsortedSplitPoints: If the crossings are out of order.
    """
    pieces = split_edge_at(edge, xsecs, tol)
    ang_tol = tol.angular(edge.radius)
    t_appendix = edge.angle_param(edge.appendix, ang_tol)
    keep_original = not any(edge.appendix.close_to(p, tol.eps_pt) for p in xsecs)

    nodes: list[Node] = []
    new_appendixes = 0
    t0 = 0.0
    for i, piece in enumerate(pieces):
        t1 = t0 + piece.span
        if keep_original and t0 + ang_tol < t_appendix < t1 - ang_tol:
            piece = dataclasses.replace(piece, appendix=edge.appendix)
        else:
            new_appendixes += 1
        nodes.append(_appendix_node(piece))
        if i < len(xsecs):
            nodes.append(_crossing_node(xsecs[i]))
        t0 = t1

    if stats is not None:
        stats.appendix_counts.append((len(xsecs), new_appendixes))
    return nodes


def merge_run(
    run: list[SeqItem], original: Edge, tol: Tolerances = DEFAULT_TOLERANCES, stats: RelinkStats | None = None
) -> list[Node] | None:
    """Heal the pieces of a decomposed arc.

    :param run: The consecutive items sharing one non-zero tri value.
    :param original: The arc before decomposition.
    :return: The nodes that replace the arc's appendix, or None when no piece was
        crossed and the original arc stays as it is.
    :raises InconsistentRun: If the items are not the pieces of ``original``.
    """
    if not _MIN_RUN <= len(run) <= _MAX_RUN:
        raise InconsistentRun(f"Decomposed arc has {len(run)} pieces, expected {_MIN_RUN} to {_MAX_RUN}")
    limit = tol.eps_rel * original.radius + tol.eps_pt
    for item in run:
        e = item.edge
        if (
            not e.is_arc
            or e.center.distance(original.center) > limit
            or abs(e.radius - original.radius) > limit
            or item.origin != run[0].origin
        ):
            raise InconsistentRun(f"Run item {e.start}->{e.end} is not a piece of arc {original.start}->{original.end}")
    if stats is not None:
        stats.run_lengths.append(len(run))

    xsecs = [p for item in run for p in item.xsecs]
    if not xsecs:
        if stats is not None:
            stats.discarded_runs += 1
        return None
    return insert_appendix_points(original, xsecs, tol, stats)


def _replacements(
    seq: SeqList, original_edges: list[Edge], tol: Tolerances, stats: RelinkStats | None
) -> dict[int, list[Node]]:
    """Per original edge index, the nodes that go between its two vertices."""
    replacements: dict[int, list[Node]] = {}
    items = seq.items
    j = 0
    while j < len(items):
        item = items[j]
        if item.tri == 0:
            if item.xsecs:
                _check_off_vertices(item.edge, item.xsecs, tol)
                if item.edge.is_arc:
                    replacements[item.origin] = insert_appendix_points(item.edge, item.xsecs, tol, stats)
                else:
                    replacements[item.origin] = [_crossing_node(p) for p in item.xsecs]
            j += 1
            continue
        end = j
        while end < len(items) and items[end].tri == item.tri:
            end += 1
        original = original_edges[item.origin]
        nodes = merge_run(items[j:end], original, tol, stats)
        if nodes is not None:
            _check_off_vertices(original, [n.point for n in nodes if n.crossing], tol)
            replacements[item.origin] = nodes
        j = end
    return replacements


def _check_off_vertices(e: Edge, xsecs: list[Point], tol: Tolerances) -> None:
    for p in xsecs:
        if p.close_to(e.start, tol.eps_pt) or p.close_to(e.end, tol.eps_pt):
            raise DegenerateConfiguration(f"Crossing ({p.x}, {p.y}) coincides with a polygon vertex")


def _relink_ring(p: ArcPolygon, seq: SeqList, ring_id: int, tol: Tolerances, stats: RelinkStats | None) -> NewRing:
    original_edges = p.edges(tol)
    replacements = _replacements(seq, original_edges, tol, stats)
    ring = NewRing(ring_id)
    edge_index = 0
    for node in p:
        if node.tag is NodeTag.APPENDIX:
            if edge_index - 1 not in replacements:
                ring.append(node.copy())
            continue
        ring.append(node.copy())
        for inserted in replacements.get(edge_index, ()):
            ring.append(inserted)
        edge_index += 1
    for node in ring:
        node.source = ring_id
    return ring


def _link_twins(p1s: NewRing, p2s: NewRing) -> None:
    by_point = {node.point: node for node in p1s.crossings()}
    for node in p2s.crossings():
        twin = by_point.pop(node.point, None)
        if twin is None:
            raise InconsistentRun(f"Crossing ({node.point.x}, {node.point.y}) is missing from P1*")
        node.twin, twin.twin = twin, node
    if by_point:
        raise InconsistentRun(f"{len(by_point)} crossings of P1* are missing from P2*")


def construct_new_linked_lists(
    p1: ArcPolygon,
    p2: ArcPolygon,
    s1: SeqList,
    s2: SeqList,
    tol: Tolerances = DEFAULT_TOLERANCES,
    stats: RelinkStats | None = None,
) -> tuple[NewRing, NewRing]:
    """Copy both rings and splice the crossings and new appendix points into them.

    Sequence-list items refer to their original edge through ``origin``; edges
    without an item are copied unchanged. The input polygons are not modified.

    :return: P1* and P2* with twinned crossing nodes.
    :raises DegenerateConfiguration: If a crossing coincides with a vertex.
    :raises InconsistentRun: If a decomposed-arc run does not match its arc.
    """
    p1s = _relink_ring(p1, s1, 1, tol, stats)
    p2s = _relink_ring(p2, s2, 2, tol, stats)
    _link_twins(p1s, p2s)
    logger.debug(f"Relinked {p1s} and {p2s}")
    return p1s, p2s
