"""Baselines for differential testing and benchmarking.

``NAIVE_PAIRS`` tests every edge of polygon 1 against every edge of polygon 2 and
never decomposes arcs. ``STANDARD_SWEEP`` runs the plain sweep over all edges of
both polygons: no related-edge filter, every adjacent pair is tested, same-polygon
reports are thrown away afterwards and crossings are filed by scanning the
sequence lists. Both feed the same relink and traversal steps as the labeled
pipeline.

The module also holds the helpers used to compare results: canonical forms of
circuits and a vectorized Monte-Carlo area estimate.
"""

import logging
import math
from collections.abc import Callable
from enum import Enum

import numpy as np

from arc_boolean.geometry import DEFAULT_TOLERANCES, TWO_PI, Box, Point, Tolerances, intersect_edges
from arc_boolean.polygon import ArcPolygon, BooleanOperation, BoolResult, Ring
from arc_boolean.related_edges import EffectiveAxis, effective_axis, mbr
from arc_boolean.sweep import (
    PlaneSweep,
    SeqItem,
    SeqList,
    SweepCounters,
    SweepSegment,
    initialize_sequence_list,
)
from arc_boolean.traversal import disjoint_result, run_traversal

logger = logging.getLogger(__name__)

_DEFAULT_SAMPLES = 100_000
_CHUNK = 50_000
_AREA_REL_TOL = 1e-9

Crossing = tuple[int, int, Point]


class OracleVariant(Enum):
    """Baseline crossing search."""

    NAIVE_PAIRS = "naive"
    STANDARD_SWEEP = "standard"


class StandardSweep(PlaneSweep):
    """Plane sweep without labels."""

    def __init__(
        self,
        lists: tuple[SeqList, SeqList],
        tol: Tolerances = DEFAULT_TOLERANCES,
        counters: SweepCounters | None = None,
    ):
        """Initialize the sweep over both sequence lists."""
        super().__init__(lists, tol, counters)
        self._owner: dict[int, int] = {}

    def segments(self) -> list[SweepSegment]:
        """One sweep segment per item of both lists."""
        segments = []
        for polygon, seq in enumerate(self.lists, start=1):
            for item in seq:
                seg = SweepSegment(
                    item.edge, order=len(segments), splits=(item.split_start, item.split_end), tol=self.tol
                )
                self._owner[id(seg)] = polygon
                segments.append(seg)
        return segments

    def _should_test(self, s: SweepSegment, t: SweepSegment) -> bool:
        return True

    def _polygon_of(self, s: SweepSegment) -> int:
        return self._owner[id(s)]

    def _locate(self, s: SweepSegment) -> tuple[int, SeqItem]:
        for polygon, seq in enumerate(self.lists, start=1):
            for item in seq:
                if item.edge is s.edge:
                    return polygon, item
        raise KeyError(f"Segment {s.left}->{s.right} is in neither sequence list")


def _naive_lists(
    p1: ArcPolygon, p2: ArcPolygon, tol: Tolerances, counters: SweepCounters
) -> tuple[SeqList, SeqList, list[Crossing]]:
    s1 = SeqList([SeqItem(e, 0, i) for i, e in enumerate(p1.edges(tol))])
    s2 = SeqList([SeqItem(e, 0, j) for j, e in enumerate(p2.edges(tol))])
    crossings = []
    for a in s1:
        for b in s2:
            counters.pair_tests += 1
            for p in intersect_edges(a.edge, b.edge, tol):
                a.file(p, tol)
                b.file(p, tol)
                crossings.append((a.origin, b.origin, p))
    counters.crossings = len(crossings)
    return s1, s2, crossings


def _standard_lists(
    p1: ArcPolygon, p2: ArcPolygon, tol: Tolerances, counters: SweepCounters
) -> tuple[SeqList, SeqList, list[Crossing]]:
    s1 = initialize_sequence_list(p1.edges(tol), tol=tol)
    s2 = initialize_sequence_list(p2.edges(tol), tol=tol)
    sweep = StandardSweep((s1, s2), tol, counters)
    found = sweep.run(sweep.segments())
    return s1, s2, [(a.origin, b.origin, p) for a, b, p in found]


def oracle_sequence_lists(
    p1: ArcPolygon,
    p2: ArcPolygon,
    v: OracleVariant,
    tol: Tolerances = DEFAULT_TOLERANCES,
    counters: SweepCounters | None = None,
) -> tuple[SeqList, SeqList, list[Crossing]]:
    """Filled sequence lists of both polygons plus the crossings with their edge indices."""
    if counters is None:
        counters = SweepCounters()
    if v is OracleVariant.NAIVE_PAIRS:
        return _naive_lists(p1, p2, tol, counters)
    return _standard_lists(p1, p2, tol, counters)


def oracle_intersections(
    p1: ArcPolygon,
    p2: ArcPolygon,
    v: OracleVariant,
    tol: Tolerances = DEFAULT_TOLERANCES,
    counters: SweepCounters | None = None,
) -> list[Crossing]:
    """Every crossing of the two boundaries as (edge index in p1, edge index in p2, point).

    :raises OverlapUnsupported: If two edges overlap.
    """
    _, _, crossings = oracle_sequence_lists(p1, p2, v, tol, counters)
    return sorted(crossings, key=lambda c: (c[2].x, c[2].y))


def oracle_boolean(
    p1: ArcPolygon,
    p2: ArcPolygon,
    op: BooleanOperation,
    v: OracleVariant,
    tol: Tolerances = DEFAULT_TOLERANCES,
    counters: SweepCounters | None = None,
) -> BoolResult:
    """Boolean operation with a baseline crossing search."""
    if effective_axis(mbr(p1), mbr(p2), tol) is EffectiveAxis.DISJOINT:
        return disjoint_result(p1, p2, op)
    s1, s2, _ = oracle_sequence_lists(p1, p2, v, tol, counters)
    return run_traversal(p1, p2, s1, s2, op, tol)


def canonicalize(result: BoolResult) -> list[list[tuple[float, float, str]]]:
    """Circuits as (x, y, kind) lists, each rotated to its smallest point and sorted."""
    circuits = []
    for circuit in result.circuits:
        nodes = [(node.point.x, node.point.y, node.kind) for node in circuit]
        start = min(range(len(nodes)), key=lambda i: nodes[i][:2])
        circuits.append(nodes[start:] + nodes[:start])
    return sorted(circuits, key=lambda nodes: nodes[0][:2])


def results_equal(a: BoolResult, b: BoolResult, eps: float = DEFAULT_TOLERANCES.eps_pt) -> bool:
    """Whether two results have the same circuits, point by point within ``eps``, and the same area."""
    ca, cb = canonicalize(a), canonicalize(b)
    if len(ca) != len(cb) or not math.isclose(a.area(), b.area(), rel_tol=_AREA_REL_TOL, abs_tol=eps):
        return False
    for nodes_a, nodes_b in zip(ca, cb, strict=True):
        if len(nodes_a) != len(nodes_b):
            return False
        for (xa, ya, ka), (xb, yb, kb) in zip(nodes_a, nodes_b, strict=True):
            if ka != kb or math.hypot(xa - xb, ya - yb) > eps:
                return False
    return True


def contains_points(ring: Ring, xs: np.ndarray, ys: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Vectorized ray parity test; points on the boundary may fall either way."""
    inside = np.zeros(xs.shape, dtype=bool)
    for e in ring.edges(tol):
        if not e.is_arc:
            y0, y1 = e.start.y, e.end.y
            if y0 == y1:
                continue
            straddle = (y0 > ys) != (y1 > ys)
            xc = e.start.x + (ys - y0) * (e.end.x - e.start.x) / (y1 - y0)
            inside ^= straddle & (xc > xs)
            continue
        dy = ys - e.center.y
        h2 = e.radius * e.radius - dy * dy
        reach = h2 > 0
        h = np.sqrt(np.where(reach, h2, 0.0))
        for sign in (-1.0, 1.0):
            xc = e.center.x + sign * h
            theta = np.mod(np.arctan2(dy, sign * h), TWO_PI)
            offset = np.mod((theta - e.theta_start) * e.direction, TWO_PI)
            inside ^= reach & (xc > xs) & (offset > 0) & (offset < e.span)
    return inside


def set_membership(
    p1: Ring, p2: Ring, op: BooleanOperation, tol: Tolerances = DEFAULT_TOLERANCES
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Membership predicate of ``p1 op p2`` built from the inputs alone."""

    def member(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        in1 = contains_points(p1, xs, ys, tol)
        in2 = contains_points(p2, xs, ys, tol)
        match op:
            case BooleanOperation.INTERSECTION:
                return in1 & in2
            case BooleanOperation.UNION:
                return in1 | in2
            case BooleanOperation.DIFFERENCE:
                return in1 & ~in2

    return member


def monte_carlo_area(
    region: list[Ring] | BoolResult | Callable[[np.ndarray, np.ndarray], np.ndarray],
    box: Box | None = None,
    samples: int = _DEFAULT_SAMPLES,
    rng: np.random.Generator | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[float, float]:
    """Estimate an area by uniform sampling.

    :param region: Rings whose union is measured, a boolean result, or a vectorized
        membership predicate.
    :param box: Sampling box; defaults to the bounding box of the rings and is
        required for predicates.
    :param samples: Number of sample points.
    :param rng: Random generator, a fresh unseeded one if omitted.
    :return: The estimate and its standard error.
    """
    if isinstance(region, BoolResult):
        region = list(region.circuits)
    if callable(region):
        member = region
        if box is None:
            raise ValueError("A sampling box is required for a membership predicate")
    else:
        rings = region
        if not rings:
            return 0.0, 0.0
        if box is None:
            box = mbr(rings[0])
            for ring in rings[1:]:
                box = box.union(mbr(ring))

        def member(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
            covered = np.zeros(xs.shape, dtype=bool)
            for ring in rings:
                covered |= contains_points(ring, xs, ys, tol)
            return covered

    rng = rng if rng is not None else np.random.default_rng()
    hits = 0
    remaining = samples
    while remaining:
        n = min(remaining, _CHUNK)
        xs = rng.uniform(box.xmin, box.xmax, n)
        ys = rng.uniform(box.ymin, box.ymax, n)
        hits += int(np.count_nonzero(member(xs, ys)))
        remaining -= n

    box_area = box.width * box.height
    fraction = hits / samples
    return box_area * fraction, box_area * math.sqrt(fraction * (1.0 - fraction) / samples)


def sample_boundary(ring: Ring, per_edge: int = 1000, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Points spread evenly along every edge, as an array of shape (n, 2)."""
    t = np.linspace(0.0, 1.0, per_edge, endpoint=False)
    chunks = []
    for e in ring.edges(tol):
        if e.is_arc:
            theta = e.theta_start + e.sweep * t
            xs = e.center.x + e.radius * np.cos(theta)
            ys = e.center.y + e.radius * np.sin(theta)
            chunks.append(np.column_stack((xs, ys)))
        else:
            chunks.append(
                np.column_stack((e.start.x + (e.end.x - e.start.x) * t, e.start.y + (e.end.y - e.start.y) * t))
            )
    return np.vstack(chunks)
