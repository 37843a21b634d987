import json
from pathlib import Path

import numpy as np
import pytest

from pathtri import io
from pathtri.cli import main
from pathtri.triangulation import triangulate

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_dumps_canonical():
    text = io.dumps({"b": 1.0, "a": [np.float64(-0.0), 2, None, np.int64(3)], "c": float("nan")})
    assert text == '{\n  "a": [\n    0.000000,\n    2,\n    null,\n    3\n  ],\n  "b": 1.000000,\n  "c": null\n}\n'
    assert json.loads(text)["b"] == 1.0


def test_loads_rejects_nan():
    with pytest.raises(io.SchemaError):
        io.loads('{"points": [[NaN, 0]]}')


def test_triangulate_three(tmp_path, capsys):
    out = tmp_path / "tri.json"
    code, _, _ = run(capsys, "triangulate", "--input", FIXTURES / "three.json", "--output", out)
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["command"] == "triangulate" and doc["schema_version"] == io.SCHEMA_VERSION
    assert doc["payload"]["faces"] == [[0, 2, 1]]
    assert len(doc["payload"]["edges"]) == 3


def test_two_points_domain_error(tmp_path, capsys):
    code, _, err = run(capsys, "triangulate", "--input", FIXTURES / "two.json", "--output", tmp_path / "x.json")
    assert code == 1 and "need at least 3 points" in err


def test_io_and_schema_errors(tmp_path, capsys):
    assert run(capsys, "triangulate", "--input", tmp_path / "missing.json", "--output", tmp_path / "o")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0, 0, 1]]}')
    code, _, err = run(capsys, "triangulate", "--input", bad, "--output", tmp_path / "o")
    assert code == 2 and "schema" in err
    bad.write_text("{not json")
    assert run(capsys, "cycles", "--input", bad)[0] == 2
    assert run(capsys, "cover-check", "--input", FIXTURES / "three.json")[0] == 2
    assert run(capsys, "cover-check", "--bogus")[0] == 2
    assert run(capsys, "collapse-cone", "--apex", "2", "--base", "0,1,4,1", "--fibers", "4")[0] == 2


def test_round_trip_byte_identical(tmp_path, capsys):
    out = tmp_path / "tri.json"
    run(capsys, "triangulate", "--input", FIXTURES / "random20.json", "--output", out)
    text = out.read_text()
    t = io.parse_triangulation(io.loads(text))
    t.validate()
    assert io.dumps(io.report("triangulate", io.triangulation_payload(t))) == text


def test_reread_rejects_corrupted_complex(tmp_path, capsys):
    out = tmp_path / "tri.json"
    run(capsys, "triangulate", "--input", FIXTURES / "square.json", "--output", out)
    doc = json.loads(out.read_text())
    doc["payload"]["edges"] = doc["payload"]["edges"][1:]
    out.write_text(json.dumps(doc))
    code, _, err = run(capsys, "cover-check", "--input", out)
    assert code == 1 and "missing" in err


def test_every_subcommand(tmp_path, capsys):
    tri = tmp_path / "tri.json"
    assert run(capsys, "triangulate", "--input", FIXTURES / "fish.json", "--output", tri,
               "--svg", tmp_path / "t.svg", "--class-reps", "3")[0] == 0
    doc = json.loads(tri.read_text())
    assert len(doc["payload"]["classes"]) == len(doc["payload"]["edges"])
    assert doc["payload"]["labels"][-2:] == ["p", "q"]

    code, out, _ = run(capsys, "cover-check", "--input", tri)
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["covers"] and payload["intersections_ok"]

    code, out, _ = run(capsys, "cycles", "--input", tri, "--output", tmp_path / "c.json")
    cyc = json.loads((tmp_path / "c.json").read_text())["payload"]
    assert code == 0 and cyc["count"] == len(doc["payload"]["faces"]) + 1

    code, out, _ = run(capsys, "present", "--input", tri, "--system")
    assert code == 0 and json.loads(out)["payload"]["realization"]["ok"]
    code, out, _ = run(capsys, "present", "--input", tri, "--generator", "3")
    assert json.loads(out)["payload"]["basis"] == [3]
    assert run(capsys, "present", "--input", tri, "--generator", "99")[0] == 1

    code, out, _ = run(capsys, "nerve", "--input", tri)
    assert json.loads(out)["payload"]["nerve_count"] == 12
    code, out, _ = run(capsys, "nerve", "--input", tri, "--vertex", "10", "--svg", tmp_path / "n.svg")
    assert code == 0 and json.loads(out)["payload"]["nucleus"] == 10
    assert (tmp_path / "n.svg").read_text().startswith("<svg")
    code, out, _ = run(capsys, "nerve", "--input", tri, "--mnc")
    assert code == 0

    code, out, _ = run(capsys, "collapse-seq", "--input", tri)
    seq = json.loads(out)["payload"]
    assert code == 0 and seq["terminal"] == 0


def test_collapse_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "collapse-cone", "--apex", "2,3", "--base", "0,1,4,1", "--fibers", "2",
                       "--svg", tmp_path / "c.svg")
    p = json.loads(out)["payload"]
    assert code == 0 and [f["station"] for f in p["fibers"]] == pytest.approx([4 / 3, 8 / 3], abs=1e-6)
    assert p["path_triangle"]["vertices"] == [0, 1, 2]
    assert "stroke-width=\"0.500000\"" in (tmp_path / "c.svg").read_text()
    code, _, err = run(capsys, "collapse-cone", "--apex", "2,1", "--base", "0,1,4,1", "--fibers", "2")
    assert code == 1 and "collinear" in err
    code, out, _ = run(capsys, "collapse-sphere", "--center", "2,2", "--radius", "1.4",
                       "--angles", "90,210,330", "--fibers", "6")
    assert code == 0 and json.loads(out)["payload"]["path_triangle"]["kind"] == "round"
    code, _, _ = run(capsys, "collapse-sphere", "--center", "0,0", "--radius", "1",
                     "--angles", "0,180,90", "--fibers", "6")
    assert code == 1


def test_seed_env(tmp_path, capsys, monkeypatch):
    outs = []
    for seed in ("1", "1", "2"):
        monkeypatch.setenv("PATHTRI_SEED", seed)
        f = tmp_path / f"t{len(outs)}.json"
        run(capsys, "triangulate", "--input", FIXTURES / "random20.json", "--output", f, "--class-reps", "2")
        outs.append(f.read_bytes())
    assert outs[0] == outs[1] != outs[2]
    monkeypatch.setenv("PATHTRI_SEED", "abc")
    assert run(capsys, "triangulate", "--input", FIXTURES / "three.json", "--output", tmp_path / "z")[0] == 2


def test_svg_viewbox_padding():
    t = triangulate([(0, 0), (10, 0), (0, 5)])
    svg = io.render_triangulation(t)
    assert 'viewBox="0 0 800 400"' in svg
    # hull spans 11 units wide after 5% padding on each side, so x=0 maps to 800 * 0.5 / 11
    assert f'cx="{800 * 0.5 / 11:.6f}"' in svg
