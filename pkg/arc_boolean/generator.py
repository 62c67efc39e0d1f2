"""Random circular-arc polygons.

A polygon starts as a star: ``n`` vertices at jittered, increasing angles around
the middle of the coordinate range, each at a jittered radius. A chosen share of
its edges is then bulged into arcs by placing an appendix point on the normal
through the chord's midpoint, on a random side. When the result is not simple the
bulges are halved and the polygon rebuilt.

Random numbers come from numpy's ``default_rng`` (PCG64), so a seed gives the same
polygon on every platform.
"""

import logging
import math

import numpy as np

from arc_boolean.configuration import GeneratorConfiguration
from arc_boolean.errors import BadAppendix, GenerationFailed, NotCCW, NotSimple
from arc_boolean.geometry import DEFAULT_TOLERANCES, Point, Tolerances
from arc_boolean.polygon import ArcPolygon, NodeTag, from_point_list

logger = logging.getLogger(__name__)

_MIN_EDGES = 3
_ANGLE_JITTER = 0.3

Seed = int | np.random.SeedSequence


def generate_polygon(
    n: int,
    rng: np.random.Generator,
    arc_fraction: float | None = None,
    config: GeneratorConfiguration | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    polygon_id: int = 1,
) -> ArcPolygon:
    """Draw one simple counter-clockwise polygon with exactly ``n`` edges.

    ``round(arc_fraction * n)`` of the edges are arcs.

    :raises GenerationFailed: If no valid polygon was found within ``max_attempts``.
    """
    if n < _MIN_EDGES:
        raise GenerationFailed(f"A polygon needs at least {_MIN_EDGES} edges, got {n}")
    config = config or GeneratorConfiguration()
    if arc_fraction is None:
        arc_fraction = config.arc_fraction

    lo, hi = config.coordinate_range
    cx = cy = 0.5 * (lo + hi)
    r_max = 0.5 * (hi - lo)
    step = 2.0 * math.pi / n
    angles = rng.uniform(0.0, 2.0 * math.pi) + step * (np.arange(n) + rng.uniform(-_ANGLE_JITTER, _ANGLE_JITTER, n))
    radii = r_max * (1.0 - config.radial_jitter * rng.uniform(0.0, 1.0, n))
    vertices = [Point(cx + r * math.cos(a), cy + r * math.sin(a)) for a, r in zip(angles, radii, strict=True)]
    arcs = set(rng.permutation(n)[: round(arc_fraction * n)].tolist())
    sides = rng.choice([-1.0, 1.0], n)

    bulge = config.max_bulge
    for attempt in range(1, config.max_attempts + 1):
        pts = []
        for i, a in enumerate(vertices):
            pts.append((a, NodeTag.VERTEX))
            if i in arcs:
                pts.append((_appendix(a, vertices[(i + 1) % n], sides[i] * bulge), NodeTag.APPENDIX))
        try:
            return from_point_list(pts, tol, polygon_id=polygon_id)
        except (NotSimple, BadAppendix, NotCCW) as e:
            logger.debug(f"Attempt {attempt} for n={n} failed ({e.code}), halving bulge {bulge:.4g}")
            bulge *= 0.5
    raise GenerationFailed(f"No valid {n}-edge polygon after {config.max_attempts} attempts")


def _appendix(a: Point, b: Point, bulge: float) -> Point:
    """Point at sagitta ``bulge * |ab| / 2`` off the chord's midpoint; positive bulges point outward."""
    dx, dy = b.x - a.x, b.y - a.y
    mid = a.midpoint(b)
    # right-hand normal is outward for a counter-clockwise boundary
    return Point(mid.x + 0.5 * bulge * dy, mid.y - 0.5 * bulge * dx)


def generate_pair(
    n: int,
    seed: Seed,
    arc_fraction: float | None = None,
    config: GeneratorConfiguration | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> tuple[ArcPolygon, ArcPolygon]:
    """Two polygons with ``n`` edges each, drawn from one seeded stream."""
    rng = np.random.default_rng(seed)
    p1 = generate_polygon(n, rng, arc_fraction, config, tol, polygon_id=1)
    p2 = generate_polygon(n, rng, arc_fraction, config, tol, polygon_id=2)
    return p1, p2
