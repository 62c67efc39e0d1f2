import math

import pytest
from conftest import a, square, v

from arc_boolean.errors import DifferenceHoleUnsupported, UnsupportedConfigurationError
from arc_boolean.generator import generate_pair
from arc_boolean.oracle import results_equal
from arc_boolean.pipeline import Method, PipelineStats, boolean_operation, difference, intersection, union
from arc_boolean.polygon import BooleanOperation, area, from_point_list


@pytest.mark.parametrize("method", list(Method))
def test_offset_squares_for_every_method(offset_squares, method):
    areas = {op: boolean_operation(*offset_squares, op, method=method).area() for op in BooleanOperation}
    assert areas[BooleanOperation.INTERSECTION] == pytest.approx(1.0)
    assert areas[BooleanOperation.UNION] == pytest.approx(7.0)
    assert areas[BooleanOperation.DIFFERENCE] == pytest.approx(3.0)


def test_names_are_accepted(offset_squares):
    by_name = boolean_operation(*offset_squares, "union", method="standard")
    by_member = boolean_operation(*offset_squares, BooleanOperation.UNION, method=Method.STANDARD)
    assert results_equal(by_name, by_member)
    with pytest.raises(ValueError):
        boolean_operation(*offset_squares, "xor")


def test_shortcuts(lens_pair):
    lens = 2 * math.pi / 3 - math.sqrt(3) / 2
    assert intersection(*lens_pair).area() == pytest.approx(lens, abs=1e-9)
    assert union(*lens_pair).area() == pytest.approx(2 * math.pi - lens, abs=1e-9)
    assert difference(*lens_pair).area() == pytest.approx(math.pi - lens, abs=1e-9)


def test_inputs_stay_untouched(worked_example):
    p1, p2 = worked_example
    before = [(node.point, node.kind) for node in p1], [(node.point, node.kind) for node in p2]
    for op in BooleanOperation:
        boolean_operation(p1, p2, op)
    assert [(node.point, node.kind) for node in p1] == before[0]
    assert [(node.point, node.kind) for node in p2] == before[1]
    assert p1.is_linked() and p2.is_linked()


def test_disjoint_boxes_skip_the_sweep():
    stats = PipelineStats()
    result = boolean_operation(square(0, 0, 1, 1), square(4, 0, 1, 2), BooleanOperation.UNION, stats=stats)
    assert len(result.circuits) == 2
    assert stats.sweep.events == 0
    assert stats.total_edges == 8


def test_stats_of_the_labeled_method(offset_squares):
    stats = PipelineStats()
    boolean_operation(*offset_squares, BooleanOperation.INTERSECTION, stats=stats)
    assert stats.total_edges == 8
    assert stats.related_edges == 6
    assert stats.crossings == 2
    assert stats.sweep.same_polygon_tests == 0


def test_hole_in_the_difference_is_refused():
    with pytest.raises(DifferenceHoleUnsupported):
        difference(square(0, 0, 10, 1), square(2, 2, 1, 2))


def test_mixed_pair(mixed_pair):
    p1, p2 = mixed_pair
    results = {op: boolean_operation(p1, p2, op) for op in BooleanOperation}
    assert all(not result.empty for result in results.values())
    for result in results.values():
        assert all(area(c) > 0 for c in result.circuits)
    inter = results[BooleanOperation.INTERSECTION].area()
    assert results[BooleanOperation.UNION].area() + inter == pytest.approx(area(p1) + area(p2), rel=1e-9)
    assert results[BooleanOperation.DIFFERENCE].area() + inter == pytest.approx(area(p1), rel=1e-9)


@pytest.mark.parametrize("method", [Method.NAIVE, Method.STANDARD])
def test_mixed_pair_agrees_across_methods(mixed_pair, method):
    for op in BooleanOperation:
        assert results_equal(boolean_operation(*mixed_pair, op, method=method), boolean_operation(*mixed_pair, op))


def test_random_area_identities():
    checked = 0
    for seed in range(12):
        p1, p2 = generate_pair(15, seed, arc_fraction=0.5)
        try:
            inter = intersection(p1, p2).area()
            uni = union(p1, p2).area()
            diff = difference(p1, p2).area()
        except UnsupportedConfigurationError:
            continue
        assert uni + inter == pytest.approx(area(p1) + area(p2), rel=1e-9, abs=1e-9)
        assert diff + inter == pytest.approx(area(p1), rel=1e-9, abs=1e-9)
        checked += 1
    assert checked > 0


@pytest.mark.slow
@pytest.mark.parametrize("n", [500, 2000])
def test_large_random_pairs(n):
    for seed in range(3):
        p1, p2 = generate_pair(n, seed, arc_fraction=0.5)
        try:
            result = intersection(p1, p2)
        except UnsupportedConfigurationError:
            continue
        assert all(area(c) > 0 for c in result.circuits)


def test_results_feed_back_in(offset_squares):
    (circuit,) = intersection(*offset_squares).circuits
    polygon = circuit.to_polygon()
    assert polygon.n_edges == 4
    assert area(polygon) == pytest.approx(1.0)
    assert intersection(polygon, square(1.5, 1.5, 1, 2)).area() == pytest.approx(0.25)


@pytest.mark.parametrize("method", list(Method))
def test_crossing_through_the_rightmost_point_of_a_circle(method):
    c = math.sqrt(0.5)
    disc = from_point_list([v(0, -1), a(c, c), v(0, 1), a(-c, -c)], polygon_id=1)
    triangle = from_point_list([v(0.25, -1.5), v(3, -1), v(1.75, 1.5)], polygon_id=2)
    # circular segment cut off by the chord from (0.6, -0.8) to (1, 0)
    cap = (math.acos(0.6) - 0.8) / 2
    stats = PipelineStats()
    inter = boolean_operation(disc, triangle, BooleanOperation.INTERSECTION, method=method, stats=stats)
    assert inter.area() == pytest.approx(cap, abs=1e-9)
    assert stats.crossings == 2
    assert union(disc, triangle).area() == pytest.approx(math.pi + area(triangle) - cap, abs=1e-9)
    assert difference(disc, triangle).area() == pytest.approx(math.pi - cap, abs=1e-9)
    for op in BooleanOperation:
        assert results_equal(
            boolean_operation(disc, triangle, op, method=method),
            boolean_operation(disc, triangle, op, method=Method.NAIVE),
        )
