"""SVG rendering of polygons and result circuits.

Arcs are emitted as elliptical-arc path commands with equal radii, never as
polylines. Drawing happens inside a group that flips the y axis, so path
coordinates are the polygon coordinates and counter-clockwise arcs take sweep
flag 1.
"""

import logging
import math
import xml.etree.ElementTree as ET
from pathlib import Path

from arc_boolean.configuration import RenderConfiguration
from arc_boolean.geometry import DEFAULT_TOLERANCES, Box, Tolerances
from arc_boolean.polygon import NodeTag, Ring
from arc_boolean.related_edges import mbr

logger = logging.getLogger(__name__)

SVG_NAMESPACE = "http://www.w3.org/2000/svg"
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_FILL_OPACITY = "0.15"


def _fmt(v: float) -> str:
    return repr(float(v))


def path_data(ring: Ring, tol: Tolerances = DEFAULT_TOLERANCES) -> str:
    """SVG path data of a closed ring."""
    edges = ring.edges(tol)
    parts = [f"M {_fmt(edges[0].start.x)},{_fmt(edges[0].start.y)}"]
    for e in edges:
        end = f"{_fmt(e.end.x)},{_fmt(e.end.y)}"
        if e.is_arc:
            large = 1 if e.span > math.pi else 0
            sweep = 1 if e.sweep > 0 else 0
            r = _fmt(e.radius)
            parts.append(f"A {r},{r} 0 {large},{sweep} {end}")
        else:
            parts.append(f"L {end}")
    parts.append("Z")
    return " ".join(parts)


def _viewport(rings: list[Ring], margin: float) -> Box:
    if not rings:
        return Box(0.0, 1.0, 0.0, 1.0)
    box = mbr(rings[0])
    for ring in rings[1:]:
        box = box.union(mbr(ring))
    pad = margin * max(box.width, box.height, 1e-12)
    return Box(box.xmin - pad, box.xmax + pad, box.ymin - pad, box.ymax + pad)


def render_svg(
    rings: list[Ring], config: RenderConfiguration | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> ET.ElementTree:
    """Build an SVG document showing every ring.

    Each ring gets its own color. Crossing nodes are marked with filled circles,
    appendix points with hollow ones.
    """
    config = config or RenderConfiguration()
    view = _viewport(rings, config.margin)
    size = max(view.width, view.height)
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NAMESPACE,
            "viewBox": f"{_fmt(view.xmin)} {_fmt(-view.ymax)} {_fmt(view.width)} {_fmt(view.height)}",
        },
    )
    canvas = ET.SubElement(root, "g", {"transform": "scale(1,-1)"})
    stroke = _fmt(config.stroke_width * size)
    radius = _fmt(config.marker_radius * size)

    for i, ring in enumerate(rings):
        color = _COLORS[i % len(_COLORS)]
        group = ET.SubElement(canvas, "g", {"id": f"ring-{i + 1}"})
        ET.SubElement(
            group,
            "path",
            {
                "d": path_data(ring, tol),
                "fill": color,
                "fill-opacity": _FILL_OPACITY,
                "stroke": color,
                "stroke-width": stroke,
            },
        )
        for node in ring:
            if node.crossing:
                attrs = {"fill": "black"}
            elif node.tag is NodeTag.APPENDIX:
                attrs = {"fill": "none", "stroke": color, "stroke-width": stroke}
            else:
                continue
            ET.SubElement(
                group,
                "circle",
                {"cx": _fmt(node.point.x), "cy": _fmt(node.point.y), "r": radius, "class": node.kind, **attrs},
            )
    ET.indent(root)
    return ET.ElementTree(root)


def write_svg(
    path: Path, rings: list[Ring], config: RenderConfiguration | None = None, tol: Tolerances = DEFAULT_TOLERANCES
) -> None:
    """Render the rings and write the SVG document to ``path``."""
    render_svg(rings, config, tol).write(path, encoding="utf-8", xml_declaration=True)
    logger.debug(f"Rendered {len(rings)} ring(s) to '{path}'")
