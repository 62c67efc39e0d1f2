import xml.etree.ElementTree as ET

from conftest import square

from arc_boolean.configuration import RenderConfiguration
from arc_boolean.pipeline import intersection
from arc_boolean.render import path_data, render_svg, write_svg


def test_path_data_of_a_square():
    assert path_data(square(0, 0, 2)) == "M 0.0,0.0 L 2.0,0.0 L 2.0,2.0 L 0.0,2.0 L 0.0,0.0 Z"


def test_path_data_of_a_circle(unit_circle):
    d = path_data(unit_circle)
    assert d.startswith("M 0.0,-1.0 A ")
    assert d.count("A ") == 2
    assert d.endswith("0.0,-1.0 Z")


def test_lens_intersection_is_drawn_with_arcs(lens_pair):
    result = intersection(*lens_pair)
    tree = render_svg(list(result.circuits))
    (path,) = tree.getroot().iter("path")
    assert path.get("d").count("A ") == 2
    assert "L " not in path.get("d")
    circles = list(tree.getroot().iter("circle"))
    assert sorted(c.get("class") for c in circles) == ["appendix", "appendix", "crossing", "crossing"]
    assert all(c.get("fill") == "black" for c in circles if c.get("class") == "crossing")


def test_every_ring_gets_a_group(offset_squares):
    tree = render_svg(list(offset_squares), RenderConfiguration(margin=0.0))
    groups = [g.get("id") for g in tree.getroot().iter("g") if g.get("id")]
    assert groups == ["ring-1", "ring-2"]
    assert tree.getroot().get("viewBox") == "0.0 -3.0 3.0 3.0"
    # plain vertices are not marked
    assert list(tree.getroot().iter("circle")) == []


def test_write_svg(tmp_path, unit_circle):
    path = tmp_path / "circle.svg"
    write_svg(path, [unit_circle])
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    assert len(list(root.iter("{http://www.w3.org/2000/svg}path"))) == 1
