import math

import numpy as np
import pytest

from arc_boolean.errors import (
    InvalidEdge,
    InvalidPoint,
    OutOfSpan,
    OverlapUnsupported,
    PointNotOnEdge,
    UnsortedSplitPoints,
)
from arc_boolean.geometry import (
    Edge,
    Point,
    Tolerances,
    decompose_arc,
    edge_area_term,
    edge_bbox,
    intersect_edges,
    is_x_monotone,
    point_on_edge,
    split_edge_at,
    y_at_x,
)


def test_point_rejects_non_finite_coordinates():
    with pytest.raises(InvalidPoint):
        Point(math.nan, 0.0)
    with pytest.raises(InvalidPoint):
        Point(0.0, math.inf)


def test_tolerances_must_be_positive():
    with pytest.raises(ValueError, match="greater than 0"):
        Tolerances(eps_pt=0)


def test_segment_rejects_coinciding_endpoints():
    with pytest.raises(InvalidEdge, match="coincide"):
        Edge.segment(Point(1, 1), Point(1, 1 + 1e-12))


def test_arc_rejects_collinear_points():
    with pytest.raises(InvalidEdge, match="collinear"):
        Edge.arc(Point(0, 0), Point(1, 1), Point(2, 2))


def test_arc_derives_circle_and_sweep():
    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    assert upper.center.x == pytest.approx(0, abs=1e-12)
    assert upper.center.y == pytest.approx(0, abs=1e-12)
    assert upper.radius == pytest.approx(1)
    assert upper.sweep == pytest.approx(math.pi)

    clockwise = Edge.arc(Point(-1, 0), Point(0, 1), Point(1, 0))
    assert clockwise.sweep == pytest.approx(-math.pi)
    assert clockwise.direction == -1.0


def test_bbox_of_arc_includes_extremes():
    quarter_plus = Edge.arc(Point(1, -0.5), Point(1.25, 0.0), Point(1, 0.5))
    box = edge_bbox(quarter_plus)
    assert box.xmax == pytest.approx(quarter_plus.center.x + quarter_plus.radius)
    assert box.ymin == pytest.approx(-0.5)
    assert box.ymax == pytest.approx(0.5)

    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    box = edge_bbox(upper)
    assert (box.xmin, box.xmax, box.ymin, box.ymax) == pytest.approx((-1, 1, 0, 1))


def test_segments_are_always_x_monotone():
    assert is_x_monotone(Edge.segment(Point(0, 0), Point(0, 5)))


def test_semicircles_and_decomposition():
    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    right = Edge.arc(Point(0, -1), Point(1, 0), Point(0, 1))
    assert is_x_monotone(upper)
    assert not is_x_monotone(right)

    pieces = decompose_arc(right)
    assert len(pieces) == 2
    assert pieces[0].start == right.start
    assert pieces[-1].end == right.end
    assert pieces[0].end == pieces[1].start
    assert pieces[0].end.x == pytest.approx(1)
    assert pieces[0].end.y == pytest.approx(0, abs=1e-12)
    assert all(is_x_monotone(p) for p in pieces)
    assert sum(p.span for p in pieces) == pytest.approx(right.span)


def test_large_arc_decomposes_into_three_pieces():
    # from the bottom, counter-clockwise through the right, top and left extremes
    start = Point(math.cos(-0.4 * math.pi), math.sin(-0.4 * math.pi))
    end = Point(math.cos(1.4 * math.pi), math.sin(1.4 * math.pi))
    arc = Edge.arc(start, Point(0, 1), end)
    pieces = decompose_arc(arc)
    assert len(pieces) == 3
    assert [round(p.end.x, 9) for p in pieces[:2]] == [1.0, -1.0]
    assert all(is_x_monotone(p) for p in pieces)


def test_decompose_segment_returns_it_unchanged():
    seg = Edge.segment(Point(0, 0), Point(3, 4))
    assert decompose_arc(seg) == [seg]


def _check_random_arc_decompositions(count, seed):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        cx, cy = rng.uniform(-10, 10, 2)
        r = rng.uniform(0.5, 5)
        t0 = rng.uniform(0, 2 * math.pi)
        span = rng.uniform(0.05, 2 * math.pi - 0.05)
        direction = rng.choice([-1.0, 1.0])
        pts = [
            Point(cx + r * math.cos(t0 + direction * s), cy + r * math.sin(t0 + direction * s))
            for s in (0.0, 0.5 * span, span)
        ]
        arc = Edge.arc(*pts)
        pieces = decompose_arc(arc)
        if is_x_monotone(arc):
            assert len(pieces) == 1
            continue
        assert 2 <= len(pieces) <= 3
        assert pieces[0].start == arc.start
        assert pieces[-1].end == arc.end
        for left, right in zip(pieces, pieces[1:], strict=False):
            assert left.end.distance(right.start) <= 1e-9
        assert all(is_x_monotone(p) for p in pieces)


def test_random_arcs_decompose_into_monotone_chains():
    _check_random_arc_decompositions(500, seed=7)


@pytest.mark.slow
def test_ten_thousand_random_arcs_decompose_into_monotone_chains():
    _check_random_arc_decompositions(10_000, seed=8)


def test_y_at_x_on_segments_and_arcs():
    seg = Edge.segment(Point(0, 0), Point(4, 2))
    assert y_at_x(seg, 2) == pytest.approx(1)

    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    assert y_at_x(upper, 0) == pytest.approx(1)
    lower = Edge.arc(Point(-1, 0), Point(0, -1), Point(1, 0))
    assert y_at_x(lower, 0.6) == pytest.approx(-0.8)

    with pytest.raises(OutOfSpan):
        y_at_x(seg, 5)


def test_point_on_edge():
    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    assert point_on_edge(Point(math.sqrt(0.5), math.sqrt(0.5)), upper)
    assert not point_on_edge(Point(math.sqrt(0.5), -math.sqrt(0.5)), upper)
    assert not point_on_edge(Point(0, 1.1), upper)


def test_split_segment_and_arc():
    seg = Edge.segment(Point(0, 0), Point(4, 0))
    parts = split_edge_at(seg, [Point(1, 0), Point(3, 0)])
    assert [(p.start.x, p.end.x) for p in parts] == [(0, 1), (1, 3), (3, 4)]

    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    top = Point(0, 1)
    halves = split_edge_at(upper, [top])
    assert len(halves) == 2
    assert halves[0].end == top
    assert halves[0].center == upper.center
    assert halves[0].span == pytest.approx(0.5 * math.pi)
    assert point_on_edge(halves[0].appendix, upper)


def test_split_rejects_bad_points():
    seg = Edge.segment(Point(0, 0), Point(4, 0))
    with pytest.raises(PointNotOnEdge):
        split_edge_at(seg, [Point(1, 1)])
    with pytest.raises(PointNotOnEdge):
        split_edge_at(seg, [Point(0, 0)])
    with pytest.raises(UnsortedSplitPoints):
        split_edge_at(seg, [Point(3, 0), Point(1, 0)])


def test_area_terms_of_a_circle_sum_to_pi():
    right = Edge.arc(Point(0, -1), Point(1, 0), Point(0, 1))
    left = Edge.arc(Point(0, 1), Point(-1, 0), Point(0, -1))
    assert edge_area_term(right) + edge_area_term(left) == pytest.approx(math.pi, rel=1e-12)


def test_intersect_segments():
    a = Edge.segment(Point(0, 0), Point(2, 2))
    b = Edge.segment(Point(0, 2), Point(2, 0))
    (p,) = intersect_edges(a, b)
    assert p.x == pytest.approx(1)
    assert p.y == pytest.approx(1)

    parallel = Edge.segment(Point(0, 1), Point(2, 3))
    assert intersect_edges(a, parallel) == []


def test_intersect_segment_with_arc_is_sorted():
    upper = Edge.arc(Point(2, 0), Point(0, 2), Point(-2, 0))
    seg = Edge.segment(Point(3, 1), Point(-3, 1))
    points = intersect_edges(seg, upper)
    assert [(round(p.x, 9), round(p.y, 9)) for p in points] == [
        (round(-math.sqrt(3), 9), 1.0),
        (round(math.sqrt(3), 9), 1.0),
    ]


def test_intersect_arcs_of_two_circles():
    right = Edge.arc(Point(0, -1), Point(1, 0), Point(0, 1))
    other = Edge.arc(Point(1, 1), Point(0, 0), Point(1, -1))
    points = intersect_edges(right, other)
    assert len(points) == 2
    for p, y in zip(points, (-math.sqrt(3) / 2, math.sqrt(3) / 2), strict=True):
        assert p.x == pytest.approx(0.5)
        assert p.y == pytest.approx(y)


def test_tangent_touch_is_not_reported():
    upper = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    tangent = Edge.segment(Point(-2, 1), Point(2, 1))
    assert intersect_edges(upper, tangent) == []


def test_overlaps_are_unsupported():
    with pytest.raises(OverlapUnsupported):
        intersect_edges(Edge.segment(Point(0, 0), Point(2, 0)), Edge.segment(Point(1, 0), Point(3, 0)))

    a = Edge.arc(Point(1, 0), Point(0, 1), Point(-1, 0))
    b = Edge.arc(Point(0, 1), Point(-1, 0), Point(0, -1))
    with pytest.raises(OverlapUnsupported):
        intersect_edges(a, b)


def test_cocircular_arcs_sharing_an_endpoint_do_not_overlap():
    a = Edge.arc(Point(1, 0), Point(math.sqrt(0.5), math.sqrt(0.5)), Point(0, 1))
    b = Edge.arc(Point(0, 1), Point(-math.sqrt(0.5), math.sqrt(0.5)), Point(-1, 0))
    assert intersect_edges(a, b) == []
