"""Related-edge filter.

Only edges near the overlap of the two bounding boxes can take part in a crossing.
Along the effective axis the four extended boundary lines of the boxes are sorted and
the middle two bound a band; every edge whose box touches that band is related.
Non-x-monotone arcs among the related edges are then decomposed.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Self

from arc_boolean.errors import DisjointInputs
from arc_boolean.geometry import DEFAULT_TOLERANCES, Box, Edge, Tolerances, decompose_arc, is_x_monotone
from arc_boolean.polygon import ArcPolygon, Ring

logger = logging.getLogger(__name__)


class EffectiveAxis(Enum):
    """Axis along which the related-edge band is taken, or ``DISJOINT`` for separated boxes.

    With ``Y`` the band is bounded by vertical lines, with ``X`` by horizontal lines.
    """

    X = "x"
    Y = "y"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class ExtendedBoundaries:
    """Left, right, top and bottom boundary lines of both bounding boxes."""

    l1: float
    r1: float
    t1: float
    b1: float
    l2: float
    r2: float
    t2: float
    b2: float

    @classmethod
    def of(cls, box1: Box, box2: Box) -> Self:
        """Boundary lines of two boxes."""
        return cls(box1.xmin, box1.xmax, box1.ymax, box1.ymin, box2.xmin, box2.xmax, box2.ymax, box2.ymin)

    def band(self, axis: EffectiveAxis) -> tuple[float, float]:
        """The two inner boundary lines along ``axis``."""
        if axis is EffectiveAxis.Y:
            lines = sorted((self.l1, self.r1, self.l2, self.r2))
        else:
            lines = sorted((self.b1, self.t1, self.b2, self.t2))
        return lines[1], lines[2]


@dataclass
class RelatedEdgeSet:
    """Related edges of both polygons in ring order.

    ``origin1`` and ``origin2`` hold, per edge, the index of the original edge in its
    polygon ring; pieces of a decomposed arc share the index of their arc.
    """

    r1: list[Edge] = field(default_factory=list)
    r2: list[Edge] = field(default_factory=list)
    origin1: list[int] = field(default_factory=list)
    origin2: list[int] = field(default_factory=list)
    axis: EffectiveAxis = EffectiveAxis.Y
    band: tuple[float, float] = (0.0, 0.0)

    def __len__(self) -> int:
        """Number of edges over both polygons."""
        return len(self.r1) + len(self.r2)


def mbr(p: Ring) -> Box:
    """Minimum bounding rectangle of a polygon or circuit."""
    boxes = [e.box for e in p.edges()]
    box = boxes[0]
    for other in boxes[1:]:
        box = box.union(other)
    return box


def effective_axis(b1: Box, b2: Box, tol: Tolerances = DEFAULT_TOLERANCES) -> EffectiveAxis:
    """Pick the effective axis from the overlap of two boxes."""
    if not b1.intersects(b2, tol.eps_pt):
        return EffectiveAxis.DISJOINT
    width = min(b1.xmax, b2.xmax) - max(b1.xmin, b2.xmin)
    height = min(b1.ymax, b2.ymax) - max(b1.ymin, b2.ymin)
    return EffectiveAxis.Y if width >= height else EffectiveAxis.X


def select_related(p1: ArcPolygon, p2: ArcPolygon, tol: Tolerances = DEFAULT_TOLERANCES) -> RelatedEdgeSet:
    """Collect the edges of both polygons whose boxes touch the band between the inner boundary lines.

    :raises DisjointInputs: If the bounding boxes do not meet.
    """
    box1, box2 = mbr(p1), mbr(p2)
    axis = effective_axis(box1, box2, tol)
    if axis is EffectiveAxis.DISJOINT:
        raise DisjointInputs(f"Bounding boxes {box1} and {box2} do not intersect")
    lo, hi = ExtendedBoundaries.of(box1, box2).band(axis)

    def in_band(e: Edge) -> bool:
        if axis is EffectiveAxis.Y:
            return e.box.xmax >= lo - tol.eps_pt and e.box.xmin <= hi + tol.eps_pt
        return e.box.ymax >= lo - tol.eps_pt and e.box.ymin <= hi + tol.eps_pt

    related = RelatedEdgeSet(axis=axis, band=(lo, hi))
    for edges, kept, origins in (
        (p1.edges(tol), related.r1, related.origin1),
        (p2.edges(tol), related.r2, related.origin2),
    ):
        for index, e in enumerate(edges):
            if in_band(e):
                kept.append(e)
                origins.append(index)
    logger.debug(
        f"Related edges along {axis.value}-axis band [{lo:.6g}, {hi:.6g}]: "
        f"{len(related.r1)}/{p1.n_edges} of polygon 1, {len(related.r2)}/{p2.n_edges} of polygon 2"
    )
    return related


def process_related(r: RelatedEdgeSet, tol: Tolerances = DEFAULT_TOLERANCES) -> RelatedEdgeSet:
    """Replace every non-x-monotone arc by its decomposed pieces, keeping order."""
    processed = RelatedEdgeSet(axis=r.axis, band=r.band)
    for edges, origins, out_edges, out_origins in (
        (r.r1, r.origin1, processed.r1, processed.origin1),
        (r.r2, r.origin2, processed.r2, processed.origin2),
    ):
        for e, origin in zip(edges, origins, strict=True):
            pieces = [e] if is_x_monotone(e, tol) else decompose_arc(e, tol)
            out_edges.extend(pieces)
            out_origins.extend([origin] * len(pieces))
    return processed
