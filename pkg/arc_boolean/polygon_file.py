"""Polygon file reading and writing.

A polygon file is a YAML document::

    version: 1
    tolerances: {eps_pt: 1.0e-09}        # optional
    polygons:
    - - {x: 10.0, y: 10.0, kind: vertex}
      - {x: 40.0, y: 10.0, kind: vertex}
      - {x: 32.5, y: 40.0, kind: appendix}
      ...
    - - ...

Each polygon is its counter-clockwise point list, one record per line. A record
of kind ``appendix`` lies between the two vertices of the arc it defines. Floats
are written with ``repr`` precision, so reading back gives the exact values.
"""

import logging
from pathlib import Path
from typing import Literal, Self

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from arc_boolean.errors import ParseError
from arc_boolean.geometry import DEFAULT_TOLERANCES, Point, Tolerances
from arc_boolean.polygon import ArcPolygon, NodeTag, Ring, from_point_list

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


class PointRecord(BaseModel):
    """One point of a polygon."""

    model_config = ConfigDict(extra="forbid")

    x: float = Field(allow_inf_nan=False)
    y: float = Field(allow_inf_nan=False)
    kind: Literal["vertex", "appendix"]


class PolygonFile(BaseModel):
    """A parsed polygon file."""

    model_config = ConfigDict(extra="forbid")

    version: Literal[1]
    tolerances: Tolerances | None = None
    polygons: list[list[PointRecord]] = Field(default_factory=list)

    @classmethod
    def from_rings(cls, rings: list[Ring], tolerances: Tolerances | None = None) -> Self:
        """Document holding the point lists of the given rings."""
        return cls(
            version=FORMAT_VERSION,
            tolerances=tolerances,
            polygons=[
                [PointRecord(x=p.x, y=p.y, kind=tag.value) for p, tag in ring.point_list()] for ring in rings
            ],
        )

    def point_lists(self) -> list[list[tuple[Point, NodeTag]]]:
        """Point lists ready for :func:`from_point_list`."""
        return [[(Point(r.x, r.y), NodeTag(r.kind)) for r in records] for records in self.polygons]

    def to_polygons(self, tol: Tolerances | None = None, normalize: bool = False) -> list[ArcPolygon]:
        """Build and validate every polygon.

        :param tol: Tolerances; the file's own header, then the defaults, if omitted.
        :param normalize: Reverse clockwise polygons instead of rejecting them.
        """
        if tol is None:
            tol = self.tolerances or DEFAULT_TOLERANCES
        polygons = []
        for i, pts in enumerate(self.point_lists(), start=1):
            logger.debug(f"Building polygon {i} from {len(pts)} points")
            polygons.append(from_point_list(pts, tol, normalize=normalize, polygon_id=i))
        return polygons

    def dump(self) -> str:
        """YAML text of the document."""
        data = {"version": self.version}
        if self.tolerances is not None:
            data["tolerances"] = self.tolerances.model_dump()
        data["polygons"] = [[record.model_dump() for record in records] for records in self.polygons]
        return yaml.safe_dump(data, default_flow_style=None, sort_keys=False)


def _node_at(root: yaml.Node | None, loc: tuple) -> yaml.Node | None:
    """Deepest node of a composed document along a validation error location."""
    node = root
    for key in loc:
        if isinstance(node, yaml.MappingNode):
            child = next((v for k, v in node.value if k.value == key), None)
        elif isinstance(node, yaml.SequenceNode) and isinstance(key, int) and key < len(node.value):
            child = node.value[key]
        else:
            child = None
        if child is None:
            break
        node = child
    return node


def parse_polygon_text(text: str) -> PolygonFile:
    """Parse and validate the text of a polygon file.

    :raises ParseError: With the line and column of the offending token when known.
    """
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        if mark is not None:
            raise ParseError(f"Malformed YAML: {getattr(e, 'problem', e)}", mark.line + 1, mark.column + 1) from e
        raise ParseError(f"Malformed YAML: {e}") from e
    if not isinstance(data, dict):
        raise ParseError("Expected a mapping with 'version' and 'polygons'", 1, 1)

    try:
        return PolygonFile.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        loc = tuple(first["loc"])
        node = _node_at(yaml.compose(text), loc)
        where = ".".join(str(part) for part in loc)
        message = f"{where}: {first['msg']}"
        if node is None:
            raise ParseError(message) from e
        raise ParseError(message, node.start_mark.line + 1, node.start_mark.column + 1) from e


def load_polygon_file(path: Path) -> PolygonFile:
    """Read a polygon file.

    :raises ParseError: If the file cannot be read or parsed.
    """
    logger.debug(f"Reading polygon file '{path}'...")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"Cannot read '{path}': {e}") from e
    return parse_polygon_text(text)


def write_polygon_file(path: Path, rings: list[Ring], tolerances: Tolerances | None = None) -> None:
    """Write rings, one polygon each, to a polygon file."""
    Path(path).write_text(PolygonFile.from_rings(rings, tolerances).dump(), encoding="utf-8")
    logger.debug(f"Wrote {len(rings)} polygon(s) to '{path}'")
