"""Boolean operations on circular-arc polygons.

The default method filters the related edges, runs the two-label sweep, relinks
the rings and traverses them. ``naive`` and ``standard`` swap in a baseline crossing
search and share everything after it.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum

from arc_boolean.geometry import DEFAULT_TOLERANCES, Tolerances
from arc_boolean.oracle import OracleVariant, oracle_sequence_lists
from arc_boolean.polygon import ArcPolygon, BooleanOperation, BoolResult
from arc_boolean.related_edges import EffectiveAxis, effective_axis, mbr
from arc_boolean.relink import RelinkStats
from arc_boolean.sweep import SweepCounters, construct_sequence_lists
from arc_boolean.traversal import disjoint_result, run_traversal

logger = logging.getLogger(__name__)


class Method(Enum):
    """Crossing search used by a boolean operation."""

    RE2L = "re2l"
    NAIVE = "naive"
    STANDARD = "standard"


@dataclass
class PipelineStats:
    """Instrumentation of one boolean operation."""

    sweep: SweepCounters = field(default_factory=SweepCounters)
    relink: RelinkStats = field(default_factory=RelinkStats)
    total_edges: int = 0
    related_edges: int = 0
    crossings: int = 0


def boolean_operation(
    p1: ArcPolygon,
    p2: ArcPolygon,
    op: BooleanOperation | str,
    tol: Tolerances = DEFAULT_TOLERANCES,
    method: Method | str = Method.RE2L,
    stats: PipelineStats | None = None,
) -> BoolResult:
    """Compute ``p1 op p2``.

    The inputs are not modified.

    :param p1: First polygon.
    :param p2: Second polygon.
    :param op: Operation, or its name (``intersect``, ``union``, ``difference``).
    :param tol: Tolerances.
    :param method: Crossing search, or its name.
    :param stats: Instrumentation to fill in.
    :return: The result circuits, all counter-clockwise.
    :raises UnsupportedConfigurationError: For overlaps, degenerate crossings and holed results.
    """
    op = BooleanOperation(op)
    method = Method(method)
    if stats is None:
        stats = PipelineStats()
    stats.total_edges = p1.n_edges + p2.n_edges

    if effective_axis(mbr(p1), mbr(p2), tol) is EffectiveAxis.DISJOINT:
        logger.debug("Bounding boxes are disjoint, skipping the crossing search")
        return disjoint_result(p1, p2, op)

    if method is Method.RE2L:
        s1, s2, related = construct_sequence_lists(p1, p2, tol, stats.sweep)
        stats.related_edges = len(related)
    else:
        variant = OracleVariant.NAIVE_PAIRS if method is Method.NAIVE else OracleVariant.STANDARD_SWEEP
        s1, s2, _ = oracle_sequence_lists(p1, p2, variant, tol, stats.sweep)
        stats.related_edges = stats.total_edges
    stats.crossings = s1.crossing_count
    return run_traversal(p1, p2, s1, s2, op, tol, stats.relink)


def intersection(p1: ArcPolygon, p2: ArcPolygon, tol: Tolerances = DEFAULT_TOLERANCES) -> BoolResult:
    """Intersection of two polygons."""
    return boolean_operation(p1, p2, BooleanOperation.INTERSECTION, tol)


def union(p1: ArcPolygon, p2: ArcPolygon, tol: Tolerances = DEFAULT_TOLERANCES) -> BoolResult:
    """Union of two polygons."""
    return boolean_operation(p1, p2, BooleanOperation.UNION, tol)


def difference(p1: ArcPolygon, p2: ArcPolygon, tol: Tolerances = DEFAULT_TOLERANCES) -> BoolResult:
    """Polygon 1 minus polygon 2."""
    return boolean_operation(p1, p2, BooleanOperation.DIFFERENCE, tol)
