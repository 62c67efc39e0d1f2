import math
from pathlib import Path

import pytest

from arc_boolean.geometry import Point
from arc_boolean.polygon import ArcPolygon, NodeTag, from_point_list

DATA_DIR = Path(__file__).parent / "data"

WORKED_EXAMPLE_RADIUS = math.sqrt(81.25)


def v(x: float, y: float) -> tuple[Point, NodeTag]:
    """Vertex entry of a point list."""
    return Point(x, y), NodeTag.VERTEX


def a(x: float, y: float) -> tuple[Point, NodeTag]:
    """Appendix entry of a point list."""
    return Point(x, y), NodeTag.APPENDIX


def square(x0: float, y0: float, side: float, polygon_id: int = 1) -> ArcPolygon:
    """Axis-aligned counter-clockwise square with lower left corner (x0, y0)."""
    return from_point_list(
        [v(x0, y0), v(x0 + side, y0), v(x0 + side, y0 + side), v(x0, y0 + side)], polygon_id=polygon_id
    )


def circle(cx: float, cy: float, r: float, polygon_id: int = 1) -> ArcPolygon:
    """Circle as two half arcs between its bottom and top points."""
    return from_point_list(
        [v(cx, cy - r), a(cx + r, cy), v(cx, cy + r), a(cx - r, cy)], polygon_id=polygon_id
    )


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def offset_squares() -> tuple[ArcPolygon, ArcPolygon]:
    """[0,2]^2 and [1,3]^2."""
    return square(0, 0, 2, 1), square(1, 1, 2, 2)


@pytest.fixture
def unit_circle() -> ArcPolygon:
    return circle(0, 0, 1)


@pytest.fixture
def lens_pair() -> tuple[ArcPolygon, ArcPolygon]:
    """Unit circles centered at (0, 0) and (1, 0)."""
    p2 = from_point_list([v(1, 1), a(0, 0), v(1, -1), a(2, 0)], polygon_id=2)
    return circle(0, 0, 1), p2


@pytest.fixture
def worked_example() -> tuple[ArcPolygon, ArcPolygon]:
    """Two polygons with one arc each whose boundaries cross four times.

    Crossings: (0, 2), (2, 0), (6, 0) and (6, 10 + sqrt(24)).
    """
    p1 = from_point_list([v(0, 0), v(10, 0), v(10, 10), a(5, 15), v(0, 10)], polygon_id=1)
    angle = 5 * math.pi / 6
    appendix = a(6.5 + WORKED_EXAMPLE_RADIUS * math.cos(angle), 8 + WORKED_EXAMPLE_RADIUS * math.sin(angle))
    p2 = from_point_list([v(3, -1), v(6, -1), v(6, 17), appendix, v(-1, 3)], polygon_id=2)
    return p1, p2


@pytest.fixture
def mixed_pair() -> tuple[ArcPolygon, ArcPolygon]:
    p1 = from_point_list(
        [v(10, 10), v(40, 10), v(40, 30), a(32.5, 40), v(20, 40), v(15, 30), a(25, 22.5), v(15, 15)],
        polygon_id=1,
    )
    p2 = from_point_list(
        [v(20, 20), a(32.5, 25), v(45, 20), v(55, 30), a(35, 35.625), v(50, 50), v(30, 45)],
        polygon_id=2,
    )
    return p1, p2
