import math

import pytest
from conftest import square

from arc_boolean.errors import (
    DegenerateConfiguration,
    DifferenceHoleUnsupported,
    OddCrossingCount,
    UnsupportedConfigurationError,
)
from arc_boolean.generator import generate_pair
from arc_boolean.geometry import Point
from arc_boolean.polygon import BooleanOperation, EntryExit, Location, Node, NodeTag, area, point_in_polygon
from arc_boolean.relink import NewRing, construct_new_linked_lists
from arc_boolean.sweep import construct_sequence_lists
from arc_boolean.traversal import (
    _outside_nodes,
    assign_entry_exit,
    check_alternation,
    disjoint_result,
    locate_ring,
    traverse,
    traverse_difference,
    traverse_intersection,
    traverse_union,
)

SHORT = {"vertex": "v", "crossing": "i", "appendix": "a"}


def _rings(p1, p2):
    s1, s2, _ = construct_sequence_lists(p1, p2)
    p1s, p2s = construct_new_linked_lists(p1, p2, s1, s2)
    assign_entry_exit(p1s, p2s, p2)
    return p1s, p2s


def _kinds(circuit):
    return "".join(SHORT[kind] for kind in circuit.kinds())


def test_entry_exit_of_offset_squares(offset_squares):
    p1s, p2s = _rings(*offset_squares)
    assert [(n.point, n.entry_exit) for n in p1s.crossings()] == [
        (Point(2, 1), EntryExit.ENTRY),
        (Point(1, 2), EntryExit.EXIT),
    ]
    assert all(n.twin.entry_exit is n.entry_exit for n in p1s.crossings())


def test_entry_exit_of_the_worked_example(worked_example):
    p1s, _ = _rings(*worked_example)
    flags = [n.entry_exit for n in p1s.crossings()]
    assert flags == [EntryExit.ENTRY, EntryExit.EXIT, EntryExit.ENTRY, EntryExit.EXIT]
    assert p1s.crossings()[0].point == Point(2, 0)


def test_odd_crossing_count_is_rejected():
    ring = NewRing(1)
    ring.append(Node(Point(0, 0)))
    ring.append(Node(Point(1, 0), crossing=True))
    ring.append(Node(Point(1, 1)))
    with pytest.raises(OddCrossingCount):
        assign_entry_exit(ring, NewRing(2), square(0, 0, 5))


def test_alternation_check():
    ring = NewRing(2)
    for x, flag in ((0, EntryExit.ENTRY), (1, EntryExit.ENTRY)):
        node = ring.append(Node(Point(x, 0), crossing=True))
        node.entry_exit = flag
    with pytest.raises(DegenerateConfiguration, match="alternate"):
        check_alternation(ring)


def test_intersection_of_offset_squares(offset_squares):
    p1s, p2s = _rings(*offset_squares)
    result = traverse_intersection(p1s, p2s)
    (circuit,) = result.circuits
    assert _kinds(circuit) == "iviv"
    assert circuit.first.point == Point(2, 1)
    assert area(circuit) == pytest.approx(1.0, abs=1e-12)
    assert not circuit.reoriented


def test_union_and_difference_of_offset_squares(offset_squares):
    p1, p2 = offset_squares
    p1s, p2s = _rings(p1, p2)
    union = traverse_union(p1s, p2s, p2)
    (outline,) = union.circuits
    assert len(outline) == 8
    assert area(outline) == pytest.approx(7.0)

    p1s, p2s = _rings(p1, p2)
    difference = traverse_difference(p1s, p2s, p2)
    (rest,) = difference.circuits
    assert len(rest) == 6
    assert area(rest) == pytest.approx(3.0)


def test_worked_example_circuits(worked_example):
    p1, p2 = worked_example
    intersection = traverse(BooleanOperation.INTERSECTION, *_rings(p1, p2), p2)
    assert [_kinds(c) for c in intersection.circuits] == ["iiiavi"]

    union = traverse(BooleanOperation.UNION, *_rings(p1, p2), p2)
    assert [len(c) for c in union.circuits] == [13]

    difference = traverse(BooleanOperation.DIFFERENCE, *_rings(p1, p2), p2)
    assert sorted(len(c) for c in difference.circuits) == [3, 5]
    assert all(area(c) > 0 for c in difference.circuits)


def test_area_identity_on_the_worked_example(worked_example):
    p1, p2 = worked_example
    areas = {
        op: sum(area(c) for c in traverse(op, *_rings(p1, p2), p2).circuits) for op in BooleanOperation
    }
    assert areas[BooleanOperation.UNION] + areas[BooleanOperation.INTERSECTION] == pytest.approx(
        area(p1) + area(p2), rel=1e-9
    )
    assert areas[BooleanOperation.DIFFERENCE] + areas[BooleanOperation.INTERSECTION] == pytest.approx(
        area(p1), rel=1e-9
    )


def test_nested_polygons_without_crossings():
    outer, inner = square(0, 0, 10, 1), square(2, 2, 1, 2)
    assert locate_ring(inner, outer) is Location.INSIDE
    assert locate_ring(outer, inner) is Location.OUTSIDE

    (circuit,) = traverse_intersection(*_rings(outer, inner)).circuits
    assert area(circuit) == pytest.approx(1.0)

    (circuit,) = traverse_union(*_rings(outer, inner), inner).circuits
    assert area(circuit) == pytest.approx(100.0)

    with pytest.raises(DifferenceHoleUnsupported):
        traverse_difference(*_rings(outer, inner), inner)

    covered = traverse_difference(*_rings(inner, outer), outer)
    assert covered.empty


def test_disjoint_result():
    p1, p2 = square(0, 0, 1, 1), square(5, 5, 1, 2)
    assert disjoint_result(p1, p2, BooleanOperation.INTERSECTION).empty
    assert len(disjoint_result(p1, p2, BooleanOperation.UNION).circuits) == 2
    (circuit,) = disjoint_result(p1, p2, BooleanOperation.DIFFERENCE).circuits
    assert area(circuit) == pytest.approx(1.0)
    assert circuit.provenance[0] == (1, "vertex")


def test_lens_intersection_is_two_arcs(lens_pair):
    (circuit,) = traverse_intersection(*_rings(*lens_pair)).circuits
    assert _kinds(circuit) == "iaia"
    assert area(circuit) == pytest.approx(2 * math.pi / 3 - math.sqrt(3) / 2, abs=1e-9)


def test_outside_vertices_match_point_location(worked_example, mixed_pair, offset_squares):
    pairs = [worked_example, mixed_pair, offset_squares]
    pairs.extend(generate_pair(12, seed, arc_fraction=0.5) for seed in range(6))
    checked = 0
    for p1, p2 in pairs:
        try:
            p1s, _ = _rings(p1, p2)
        except UnsupportedConfigurationError:
            continue
        if not p1s.crossings():
            continue
        located = [
            node
            for node in p1s
            if node.tag is NodeTag.VERTEX
            and not node.crossing
            and point_in_polygon(node.point, p2) is Location.OUTSIDE
        ]
        assert _outside_nodes(p1s) == located
        checked += 1
    assert checked >= 3
