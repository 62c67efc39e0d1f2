"""Entry/exit assignment and the traversal rules of the three boolean operations.

All three operations walk the new rings the same way and differ only in where
they switch rings:

  ================  ========================  ========================
  operation         switch on P1* at          switch on P2* at
  ================  ========================  ========================
  intersection      exit                      entry
  union             entry                     exit
  difference        entry                     exit (walking backward)
  ================  ========================  ========================
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum

from arc_boolean.errors import (
    DegenerateConfiguration,
    DifferenceHoleUnsupported,
    OddCrossingCount,
    TraversalStuck,
    UnionHoleUnsupported,
)
from arc_boolean.geometry import DEFAULT_TOLERANCES, Tolerances
from arc_boolean.polygon import (
    ArcPolygon,
    BooleanOperation,
    BoolResult,
    Circuit,
    EntryExit,
    Location,
    Node,
    NodeTag,
    Ring,
    area,
    point_in_polygon,
)
from arc_boolean.relink import NewRing, RelinkStats, construct_new_linked_lists
from arc_boolean.sweep import SeqList

logger = logging.getLogger(__name__)


class Direction(Enum):
    """Walking direction along a ring."""

    FORWARD = "forward"
    BACKWARD = "backward"


@dataclass
class TraversalState:
    """Where a traversal currently stands.

    ``visited`` holds the ids of visited P1* nodes; a crossing counts as visited on
    both rings once either twin has been passed.
    """

    current: Node | None = None
    ring: int = 1
    direction: Direction = Direction.FORWARD
    visited: set[int] = field(default_factory=set)
    circuits: list[Circuit] = field(default_factory=list)

    def visit(self, node: Node) -> None:
        """Mark a node and its twin as visited."""
        self.visited.add(id(node))
        if node.twin is not None:
            self.visited.add(id(node.twin))

    def seen(self, node: Node) -> bool:
        """Whether the node was passed by an earlier circuit."""
        return id(node) in self.visited


ShiftRule = Callable[[int, EntryExit], bool]


def _intersection_shift(ring: int, flag: EntryExit) -> bool:
    return (ring == 1 and flag is EntryExit.EXIT) or (ring == 2 and flag is EntryExit.ENTRY)


def _union_shift(ring: int, flag: EntryExit) -> bool:
    return (ring == 1 and flag is EntryExit.ENTRY) or (ring == 2 and flag is EntryExit.EXIT)


def check_alternation(ring: Ring) -> None:
    """Verify that crossing properties alternate along the ring.

    :raises DegenerateConfiguration: If two consecutive crossings share a property.
    """
    flags = [node.entry_exit for node in ring if node.crossing]
    for i, flag in enumerate(flags):
        if flag is None or flag is flags[i - 1]:
            raise DegenerateConfiguration(f"Entry/exit properties do not alternate along ring at crossing {i}")


def assign_entry_exit(p1s: NewRing, p2s: NewRing, p2: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
    """Give every crossing the entry or exit property.

    Properties alternate along P1*. The first crossing is an entry iff the boundary
    of P1* right after it runs inside polygon 2; it is probed at the next appendix
    point, or at the midpoint of the following segment. Twins copy the property.

    :raises OddCrossingCount: If the number of crossings is odd.
    :raises DegenerateConfiguration: If the probe point lies on polygon 2's boundary
        or the properties do not alternate along P2*.
    """
    crossings = p1s.crossings()
    if len(crossings) % 2:
        raise OddCrossingCount(f"Boundaries cross {len(crossings)} times")
    if not crossings:
        return

    first = crossings[0]
    nxt = first.next
    probe = nxt.point if nxt.tag is NodeTag.APPENDIX else first.point.midpoint(nxt.point)
    location = point_in_polygon(probe, p2, tol)
    if location is Location.ON_BOUNDARY:
        raise DegenerateConfiguration(f"Probe point ({probe.x}, {probe.y}) lies on the boundary of polygon 2")

    flag = EntryExit.ENTRY if location is Location.INSIDE else EntryExit.EXIT
    for node in crossings:
        node.entry_exit = flag
        node.twin.entry_exit = flag
        flag = EntryExit.EXIT if flag is EntryExit.ENTRY else EntryExit.ENTRY
    check_alternation(p2s)
    logger.debug(f"First crossing ({first.point.x:.6g}, {first.point.y:.6g}) is {first.entry_exit.value}")


def _outside_nodes(p1s: NewRing) -> list[Node]:
    """Vertices of P1* outside polygon 2, read off the crossing properties.

    A node is outside iff the last crossing before it along P1* is an exit. Between
    two consecutive crossings the boundary of polygon 1 stays on one side of polygon
    2, and a vertex on polygon 2's boundary has already been refused by the sweep, so
    this is the list ``point_in_polygon(node.point, p2) is Location.OUTSIDE`` gives,
    in ring order, without a ray cast per vertex.
    """
    nodes = list(p1s)
    last = next((node.entry_exit for node in reversed(nodes) if node.crossing), None)
    outside = []
    for node in nodes:
        if node.crossing:
            last = node.entry_exit
        elif node.tag is NodeTag.VERTEX and last is EntryExit.EXIT:
            outside.append(node)
    return outside


def _trace(start: Node, shift: ShiftRule, backward_on_p2: bool, state: TraversalState, limit: int) -> Circuit:
    """Walk from ``start`` until the walk returns to it or to its twin."""
    circuit = Circuit()
    state.current = start
    state.ring = start.source
    state.direction = Direction.FORWARD
    for _ in range(limit):
        node = state.current
        copy = node.copy()
        circuit.append(copy)
        circuit.provenance.append((state.ring, node.kind))
        state.visit(node)

        if node.crossing and shift(state.ring, node.entry_exit):
            if node.twin is None:
                raise TraversalStuck(f"Crossing {node} has no twin")
            node = node.twin
            state.ring = node.source
            backward = backward_on_p2 and state.ring == 2
            state.direction = Direction.BACKWARD if backward else Direction.FORWARD
        node = node.prev if state.direction is Direction.BACKWARD else node.next
        if node is start or node is start.twin:
            return circuit
        state.current = node
    raise TraversalStuck(f"Traversal from {start} did not close within {limit} steps")


def _finish(circuit: Circuit, state: TraversalState, tol: Tolerances) -> None:
    if area(circuit, tol) < 0:
        circuit.reverse()
        circuit.provenance = circuit.provenance[:1] + circuit.provenance[:0:-1]
        circuit.reoriented = True
    state.circuits.append(circuit)


def ring_circuit(ring: Ring) -> Circuit:
    """Copy a whole ring into a result circuit."""
    circuit = Circuit()
    for node in ring:
        circuit.append(node.copy())
        circuit.provenance.append((node.source, node.kind))
    return circuit


def locate_ring(a: Ring, b: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> Location:
    """Whether a ring that does not cross ``b`` lies inside or outside it.

    :raises DegenerateConfiguration: If every node of ``a`` lies on ``b``'s boundary.
    """
    for node in a:
        location = point_in_polygon(node.point, b, tol)
        if location is not Location.ON_BOUNDARY:
            return location
    raise DegenerateConfiguration("Every node of one polygon lies on the other's boundary")


def _walk_limit(p1s: NewRing, p2s: NewRing) -> int:
    return len(p1s) + len(p2s) + 1


def traverse_intersection(p1s: NewRing, p2s: NewRing, tol: Tolerances = DEFAULT_TOLERANCES) -> BoolResult:
    """Trace the intersection circuits.

    Each circuit starts at an unvisited entry crossing of P1*. Without crossings the
    result is the contained polygon, or empty.
    """
    result = BoolResult(BooleanOperation.INTERSECTION)
    crossings = p1s.crossings()
    if not crossings:
        if locate_ring(p2s, p1s, tol) is Location.INSIDE:
            result.circuits.append(ring_circuit(p2s))
        elif locate_ring(p1s, p2s, tol) is Location.INSIDE:
            result.circuits.append(ring_circuit(p1s))
        return result

    state = TraversalState()
    for node in crossings:
        if node.entry_exit is EntryExit.ENTRY and not state.seen(node):
            _finish(_trace(node, _intersection_shift, False, state, _walk_limit(p1s, p2s)), state, tol)
    result.circuits = state.circuits
    return result


def traverse_union(p1s: NewRing, p2s: NewRing, p2: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> BoolResult:
    """Trace the outline of the union.

    The walk starts at a P1* vertex outside polygon 2, or at an exit crossing when
    every vertex is inside. Without crossings the result is both polygons when they
    are apart, else the containing one.

    :raises UnionHoleUnsupported: If crossings remain unvisited, i.e. the union has a hole.
    """
    result = BoolResult(BooleanOperation.UNION)
    crossings = p1s.crossings()
    if not crossings:
        if locate_ring(p1s, p2, tol) is Location.INSIDE:
            result.circuits.append(ring_circuit(p2s))
        elif locate_ring(p2s, p1s, tol) is Location.INSIDE:
            result.circuits.append(ring_circuit(p1s))
        else:
            result.circuits.extend([ring_circuit(p1s), ring_circuit(p2s)])
        return result

    outside = _outside_nodes(p1s)
    start = outside[0] if outside else next(n for n in crossings if n.entry_exit is EntryExit.EXIT)
    state = TraversalState()
    _finish(_trace(start, _union_shift, False, state, _walk_limit(p1s, p2s)), state, tol)
    left = sum(1 for n in crossings if not state.seen(n))
    if left:
        raise UnionHoleUnsupported(f"Union has a hole: {left} crossings are off the outer boundary")
    result.circuits = state.circuits
    return result


def traverse_difference(p1s: NewRing, p2s: NewRing, p2: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> BoolResult:
    """Trace the circuits of polygon 1 minus polygon 2.

    Walks P1* forward and P2* backward. A new circuit starts at every P1* vertex
    outside polygon 2 that no earlier circuit passed, then at every unvisited exit
    crossing. Without crossings the result is polygon 1 when the polygons are
    apart and empty when polygon 1 is covered.

    :raises DifferenceHoleUnsupported: If polygon 2 lies inside polygon 1.
    """
    result = BoolResult(BooleanOperation.DIFFERENCE)
    crossings = p1s.crossings()
    if not crossings:
        if locate_ring(p1s, p2, tol) is Location.INSIDE:
            return result
        if locate_ring(p2s, p1s, tol) is Location.INSIDE:
            raise DifferenceHoleUnsupported("Polygon 2 lies inside polygon 1")
        result.circuits.append(ring_circuit(p1s))
        return result

    state = TraversalState()
    limit = _walk_limit(p1s, p2s)
    exits = [n for n in crossings if n.entry_exit is EntryExit.EXIT]
    for start in _outside_nodes(p1s) + exits:
        if not state.seen(start):
            _finish(_trace(start, _union_shift, True, state, limit), state, tol)
    result.circuits = state.circuits
    return result


def traverse(
    op: BooleanOperation, p1s: NewRing, p2s: NewRing, p2: Ring, tol: Tolerances = DEFAULT_TOLERANCES
) -> BoolResult:
    """Run the traversal of one operation."""
    match op:
        case BooleanOperation.INTERSECTION:
            return traverse_intersection(p1s, p2s, tol)
        case BooleanOperation.UNION:
            return traverse_union(p1s, p2s, p2, tol)
        case BooleanOperation.DIFFERENCE:
            return traverse_difference(p1s, p2s, p2, tol)


def disjoint_result(p1: Ring, p2: Ring, op: BooleanOperation) -> BoolResult:
    """Result for polygons whose bounding boxes do not meet."""
    match op:
        case BooleanOperation.INTERSECTION:
            return BoolResult(op)
        case BooleanOperation.UNION:
            return BoolResult(op, [ring_circuit(p1), ring_circuit(p2)])
        case BooleanOperation.DIFFERENCE:
            return BoolResult(op, [ring_circuit(p1)])


def run_traversal(
    p1: ArcPolygon,
    p2: ArcPolygon,
    s1: SeqList,
    s2: SeqList,
    op: BooleanOperation,
    tol: Tolerances = DEFAULT_TOLERANCES,
    stats: RelinkStats | None = None,
) -> BoolResult:
    """Relink, assign entry/exit properties and traverse for filled sequence lists."""
    p1s, p2s = construct_new_linked_lists(p1, p2, s1, s2, tol, stats)
    assign_entry_exit(p1s, p2s, p2, tol)
    result = traverse(op, p1s, p2s, p2, tol)
    logger.debug(f"{op.value}: {len(result.circuits)} circuit(s) from {len(p1s.crossings())} crossings")
    return result
