import csv

import pytest

import main
from arc_boolean.polygon import area
from arc_boolean.polygon_file import load_polygon_file


def _area(path):
    return sum(area(p) for p in load_polygon_file(path).to_polygons())


def test_op_with_one_file_per_polygon(data_dir, tmp_path):
    out = tmp_path / "out.yaml"
    svg = tmp_path / "out.svg"
    code = main.main(
        [
            "op",
            "union",
            "--a",
            str(data_dir / "worked_example_a.yaml"),
            "--b",
            str(data_dir / "worked_example_b.yaml"),
            "--out",
            str(out),
            "--svg",
            str(svg),
        ]
    )
    assert code == 0
    assert len(load_polygon_file(out).polygons) == 1
    assert svg.read_text().count("<path") == 3


@pytest.mark.parametrize("method", ["re2l", "naive", "standard"])
def test_op_with_both_polygons_in_one_file(data_dir, tmp_path, method):
    out = tmp_path / "out.yaml"
    assert main.main(["op", "intersect", "--a", str(data_dir / "offset_squares.yaml"), "--out", str(out),
                      "--method", method]) == 0
    assert _area(out) == pytest.approx(1.0)


def test_op_on_unsupported_input(data_dir, tmp_path, capsys):
    nested = tmp_path / "nested.yaml"
    nested.write_text(
        "version: 1\npolygons:\n"
        "- [{x: 0, y: 0, kind: vertex}, {x: 9, y: 0, kind: vertex}, {x: 9, y: 9, kind: vertex}, "
        "{x: 0, y: 9, kind: vertex}]\n"
        "- [{x: 2, y: 2, kind: vertex}, {x: 3, y: 2, kind: vertex}, {x: 3, y: 3, kind: vertex}, "
        "{x: 2, y: 3, kind: vertex}]\n"
    )
    code = main.main(["op", "difference", "--a", str(nested), "--out", str(tmp_path / "out.yaml")])
    assert code == 2
    assert "DifferenceHoleUnsupported" in capsys.readouterr().err


def test_op_on_a_clockwise_polygon(tmp_path, capsys):
    polygons = tmp_path / "cw.yaml"
    polygons.write_text(
        "version: 1\npolygons:\n"
        "- [{x: 0, y: 0, kind: vertex}, {x: 0, y: 2, kind: vertex}, {x: 2, y: 2, kind: vertex}, "
        "{x: 2, y: 0, kind: vertex}]\n"
        "- [{x: 1, y: 1, kind: vertex}, {x: 3, y: 1, kind: vertex}, {x: 3, y: 3, kind: vertex}, "
        "{x: 1, y: 3, kind: vertex}]\n"
    )
    out = tmp_path / "out.yaml"
    assert main.main(["op", "intersect", "--a", str(polygons), "--out", str(out)]) == 1
    assert "NotCCW" in capsys.readouterr().err
    assert not out.exists()

    assert main.main(["op", "intersect", "--a", str(polygons), "--out", str(out), "--normalize"]) == 0
    assert _area(out) == pytest.approx(1.0)


def test_op_with_the_wrong_number_of_polygons(data_dir, tmp_path, capsys):
    code = main.main(["op", "intersect", "--a", str(data_dir / "worked_example_a.yaml"), "--out", str(tmp_path / "o")])
    assert code == 1
    assert "ParseError" in capsys.readouterr().err


def test_gen_then_render(tmp_path):
    pair = tmp_path / "pair.yaml"
    assert main.main(["gen", "--n", "7", "--seed", "3", "--arcs", "0.5", "--count", "2", "--out", str(pair)]) == 0
    polygons = load_polygon_file(pair).to_polygons()
    assert [p.n_edges for p in polygons] == [7, 7]

    svg = tmp_path / "pair.svg"
    assert main.main(["render", str(pair), "--out", str(svg)]) == 0
    assert svg.read_text().count("<path") == 2


def test_gen_rejects_tiny_polygons(tmp_path, capsys):
    assert main.main(["gen", "--n", "2", "--seed", "0", "--out", str(tmp_path / "p.yaml")]) == 1
    assert "GenerationFailed" in capsys.readouterr().err


def test_bench_writes_csv(tmp_path):
    out = tmp_path / "bench.csv"
    code = main.main(["bench", "--sizes", "5", "--trials", "2", "--methods", "re2l,naive", "--seed", "4",
                      "--out", str(out)])
    assert code == 0
    rows = list(csv.DictReader(out.open()))
    assert [row["method"] for row in rows] == ["re2l", "naive"]
    assert all(row["n"] == "5" and row["trials"] == "2" for row in rows)


def test_bench_on_a_fixture(data_dir, capsys):
    fixture = [str(data_dir / "worked_example_a.yaml"), str(data_dir / "worked_example_b.yaml")]
    assert main.main(["bench", "--fixture", *fixture, "--trials", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("n,method,")
    assert [line.split(",")[1] for line in lines[1:]] == ["re2l", "naive", "standard"]


def test_bench_rejects_bad_settings(capsys):
    assert main.main(["bench", "--sizes", "2", "--trials", "1"]) == 1
    assert "ConfigurationError" in capsys.readouterr().err


def test_missing_configuration_file(tmp_path, capsys):
    code = main.main(["--config", str(tmp_path / "missing.yaml"), "gen", "--n", "5", "--seed", "0", "--out",
                      str(tmp_path / "p.yaml")])
    assert code == 1
    assert "ConfigurationError" in capsys.readouterr().err


def test_unknown_method_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main.main(["bench", "--methods", "fast"])
    assert info.value.code == 2
