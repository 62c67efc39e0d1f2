import pytest
from conftest import square

from arc_boolean.errors import DisjointInputs
from arc_boolean.generator import generate_pair
from arc_boolean.geometry import Box
from arc_boolean.related_edges import (
    EffectiveAxis,
    ExtendedBoundaries,
    effective_axis,
    mbr,
    process_related,
    select_related,
)


def test_mbr_of_a_circle(unit_circle):
    box = mbr(unit_circle)
    assert (box.xmin, box.xmax, box.ymin, box.ymax) == pytest.approx((-1, 1, -1, 1))


def test_effective_axis_follows_the_wider_overlap():
    assert effective_axis(Box(0, 2, 0, 2), Box(1, 3, 1, 3)) is EffectiveAxis.Y
    assert effective_axis(Box(0, 10, 0, 2), Box(1, 3, 1, 3)) is EffectiveAxis.Y
    assert effective_axis(Box(0, 2, 0, 10), Box(1, 3, 1, 9)) is EffectiveAxis.X
    assert effective_axis(Box(0, 1, 0, 1), Box(2, 3, 0, 1)) is EffectiveAxis.DISJOINT


def test_band_uses_the_inner_boundary_lines():
    bounds = ExtendedBoundaries.of(Box(0, 2, 0, 4), Box(1, 3, -1, 2))
    assert bounds.band(EffectiveAxis.Y) == (1, 2)
    assert bounds.band(EffectiveAxis.X) == (0, 2)


def test_select_related_drops_far_edges(offset_squares):
    p1, p2 = offset_squares
    related = select_related(p1, p2)
    assert related.axis is EffectiveAxis.Y
    assert related.band == (1, 2)
    # the left side of [0,2]^2 and the right side of [1,3]^2 lie outside the band
    assert related.origin1 == [0, 1, 2]
    assert related.origin2 == [0, 2, 3]
    assert len(related) == 6


def test_select_related_rejects_disjoint_boxes():
    with pytest.raises(DisjointInputs):
        select_related(square(0, 0, 1, 1), square(5, 5, 1, 2))


def test_processed_related_edges_stay_within_three_times(lens_pair):
    p1, p2 = lens_pair
    related = select_related(p1, p2)
    processed = process_related(related)
    assert len(related) == 4
    assert len(processed) == 8
    assert len(related) <= len(processed) <= 3 * len(related)
    assert processed.origin1 == [0, 0, 1, 1]


def test_random_pairs_respect_the_decomposition_bound():
    for seed in range(20):
        p1, p2 = generate_pair(12, seed, arc_fraction=1.0)
        related = select_related(p1, p2)
        processed = process_related(related)
        assert len(related) <= len(processed) <= 3 * len(related)
