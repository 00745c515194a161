import json
import os
import re
import subprocess
import sys

import pytest

from reldual.cli import (
    fixture_path,
    graph_to_json,
    main,
    parse_dual,
    parse_graph,
    parse_rel,
    rel_to_json,
    render_svg,
)
from reldual.cylinder import build_cylindrical_dual
from reldual.errors import ParseError, ValidationError
from reldual.graph import is_ptt
from reldual.torus_dual import build_toroidal_dual

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out.strip()
    return code, (json.loads(out) if out else None)


def load(name):
    with open(fixture_path(name)) as fh:
        return json.load(fh)


def dump(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return p


# ----------------------------------------------------------------------
# parsing


def test_shipped_grid_is_ptt():
    g = parse_graph(fixture_path("grid_3x3.json"))
    assert g.surface == "torus"
    assert is_ptt(g).ok


def test_dangling_twin(tmp_path):
    raw = load("grid_3x3.json")
    raw["darts"][7]["twin"] = 999
    with pytest.raises(ParseError) as exc:
        parse_graph(dump(tmp_path, "bad.json", raw))
    assert "dart 7" in exc.value.location
    assert "999" in str(exc.value)


def test_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{ not json")
    with pytest.raises(ParseError) as exc:
        parse_graph(p)
    assert exc.value.location.startswith(str(p))


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_graph(tmp_path / "absent.json")


def test_invariant_violation_is_validation_error(tmp_path):
    raw = load("grid_3x3.json")
    raw["darts"][0]["tokens"] = ["+M", "+M"]
    with pytest.raises(ValidationError) as exc:
        parse_graph(dump(tmp_path, "tok.json", raw))
    assert exc.value.report is not None and not exc.value.report.ok


def test_rel_with_unknown_edge(tmp_path):
    g = parse_graph(fixture_path("grid_3x3.json"))
    raw = load("grid_3x3.rel.json")
    raw["edges"].append({"dart": 10**4, "color": "blue"})
    with pytest.raises(ValidationError) as exc:
        parse_rel(dump(tmp_path, "rel.json", raw), g)
    assert "unknown edge" in str(exc.value)


def test_rel_with_unknown_color(tmp_path):
    g = parse_graph(fixture_path("grid_3x3.json"))
    raw = load("grid_3x3.rel.json")
    raw["edges"][0]["color"] = "green"
    with pytest.raises(ValidationError):
        parse_rel(dump(tmp_path, "rel.json", raw), g)


def test_dual_shape_errors():
    with pytest.raises(ParseError):
        parse_dual({"Q": [[0, 0]], "t_M": [0, 1], "rects": {}})
    with pytest.raises(ParseError):
        parse_dual({"Q": [[0, 0]] * 4, "t_M": [0, 1], "rects": {"0": [0, 1, 0]}})


def test_round_trips():
    g = parse_graph(fixture_path("twisted_3x3.json"))
    rel = parse_rel(fixture_path("twisted_3x3.rel.json"), g)
    assert parse_graph(graph_to_json(g)).to_raw() == g.to_raw()
    assert parse_rel(rel_to_json(rel), g).as_dict() == rel.as_dict()
    D = build_toroidal_dual(g, rel)
    assert parse_dual(json.loads(json.dumps(D.to_json()))) == D


# ----------------------------------------------------------------------
# svg


def _golden(name):
    with open(os.path.join(GOLDEN, name)) as fh:
        return fh.read()


def _torus_svg(stem):
    g = parse_graph(fixture_path(stem + ".json"))
    rel = parse_rel(fixture_path(stem + ".rel.json"), g)
    return render_svg(build_toroidal_dual(g, rel), g, rel)


def test_svg_orbital_golden():
    svg = _torus_svg("grid_3x3")
    assert svg == _golden("grid_3x3.svg")
    poly = re.findall(r'polygon points="([^"]+)"', svg)[0]
    xs = sorted({p.split(",")[0] for p in poly.split()})
    assert len(xs) == 2  # axis-parallel domain


def test_svg_slanted_golden():
    svg = _torus_svg("twisted_3x3")
    assert svg == _golden("twisted_3x3.svg")
    poly = re.findall(r'polygon points="([^"]+)"', svg)[0]
    assert len({p.split(",")[0] for p in poly.split()}) == 4  # parallelogram


def test_svg_cylinder_golden():
    g = parse_graph(fixture_path("rings_4x2.json"))
    D = build_cylindrical_dual(g)
    svg = render_svg(D, g, D.info["rel"])
    assert svg == _golden("rings_4x2.svg")
    assert set(map(int, re.findall(r'data-vertex="(\d+)"', svg))) == set(g.vertices)


# ----------------------------------------------------------------------
# commands


def test_classify_command(capsys):
    code, out = run(capsys, "classify", fixture_path("grid_3x3.json"), fixture_path("grid_3x3.rel.json"), "--oracle")
    assert code == 0
    assert out["class"] == "orbital"
    assert out["oracle"]["class"] == "orbital"


def test_validate_command(capsys):
    code, out = run(capsys, "validate", fixture_path("rings_4x2.json"))
    assert code == 0 and out["ok"] and out["surface"] == "cylinder"


def test_dual_command_writes_files(tmp_path, capsys):
    dual, svg = tmp_path / "d.json", tmp_path / "d.svg"
    g, r = fixture_path("twisted_3x3.json"), fixture_path("twisted_3x3.rel.json")
    code, out = run(capsys, "dual", g, r, "-o", dual, "--svg", svg)
    assert code == 0 and out["kind"] == "slanted"
    assert svg.read_text().startswith("<svg")
    code, out = run(capsys, "verify", g, r, dual)
    assert code == 0 and out["ok"]


def test_dual_command_stdout(capsys):
    code, out = run(capsys, "dual", fixture_path("grid_3x3.json"), fixture_path("grid_3x3.rel.json"))
    assert code == 0 and out["kind"] == "orbital"


def test_verify_corrupted_dual(tmp_path, capsys):
    g, r = fixture_path("grid_3x3.json"), fixture_path("grid_3x3.rel.json")
    dual = tmp_path / "d.json"
    run(capsys, "dual", g, r, "-o", dual)
    raw = json.loads(dual.read_text())
    x = raw["rects"]["0"]
    raw["rects"]["0"] = [x[0], x[1] + 1, x[2], x[3]]
    dual.write_text(json.dumps(raw))
    code, out = run(capsys, "verify", g, r, dual)
    assert code == 1
    assert not out["ok"]
    assert not out["checks"]["overlap"]
    assert all({"code", "message"} <= set(v) for v in out["violations"])


def test_cylinder_dual_command(tmp_path, capsys):
    g = fixture_path("rings_4x2.json")
    dual, rel = tmp_path / "d.json", tmp_path / "r.json"
    code, out = run(capsys, "cylinder-dual", g, "-o", dual, "--rel-out", rel)
    assert code == 0 and out["kind"] == "cylindrical"
    code, out = run(capsys, "verify", g, rel, dual)
    assert code == 0


def test_gen_fixture(tmp_path, capsys):
    g, r = tmp_path / "g.json", tmp_path / "r.json"
    assert run(capsys, "gen-fixture", "twisted", 4, 3, 1, "-o", g, "--rel-out", r, "--seed", 5)[0] == 0
    code, out = run(capsys, "classify", g, r)
    assert code == 0 and out["class"] in ("slanted", "unrealizable", "orbital")
    code, out = run(capsys, "gen-fixture", "grid", 3)
    assert code == 1 and out["error"] == "ParseError"


def test_unrealizable_reports_witness(tmp_path, capsys):
    g = fixture_path("grid_3x3.json")
    raw = load("grid_3x3.rel.json")
    for e in raw["edges"]:
        if e["dart"] == 6 * 5 + 2:
            e["color"] = "blue"
    r = dump(tmp_path, "r.json", raw)
    code, out = run(capsys, "classify", g, r)
    assert code == 0 and out["class"] == "unrealizable"
    code, out = run(capsys, "dual", g, r)
    assert code == 1
    assert out["error"] == "Unrealizable" and out["witness"]["dart"] == 6 * 5 + 2


def test_parse_error_exit_code(tmp_path, capsys):
    raw = load("grid_3x3.json")
    raw["darts"][3]["twin"] = -4
    code, out = run(capsys, "validate", dump(tmp_path, "g.json", raw))
    assert code == 1 and out["error"] == "ParseError" and "dart 3" in out["location"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "reldual", "classify", fixture_path("twisted_3x3.json"), fixture_path("twisted_3x3.rel.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["class"] == "slanted"
