import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

import hdx.verify
from hdx.cli import main
from hdx.generators import generate
from hdx.io import complex_from_dict, complex_to_dict, dumps, read_complex


def schema(name):
    return json.loads(resources.files("hdx").joinpath("schemas", name).read_text())


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


@pytest.fixture
def k7file(tmp_path):
    out = tmp_path / "k7.json"
    assert main(["generate", "complete:7:2", "--out", str(out)]) == 0
    return out


@pytest.fixture
def edge_file(tmp_path):
    return write(tmp_path, "edge.json", {"dimension": 1, "group": "z2", "values": [{"face": [1, 2], "value": 1}]})


def run(argv, tmp_path, name="report.json"):
    out = tmp_path / name
    code = main(argv + ["--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None), out


@pytest.mark.parametrize("spec,tops", [("complete:4:2", 4), ("complete:3:2", 1), ("two_triangles", 2),
                                       ("weighted_two_triangles", 2), ("octahedron", 8), ("bowtie", 2)])
def test_generate_round_trip(spec, tops, tmp_path):
    out = tmp_path / "c.json"
    assert main(["generate", spec, "--out", str(out)]) == 0
    first = out.read_text()
    data = json.loads(first)
    jsonschema.validate(data, schema("complex.schema.json"))
    assert len(data["top_faces"]) == tops
    X, name, _ = read_complex(out)
    assert dumps(complex_to_dict(X, name)) == first
    assert complex_from_dict(json.loads(first))[0] == generate(spec)[0]


def test_generate_errors(capsys):
    assert main(["generate", "complete:2:2"]) == 3
    assert main(["generate", "nonsense"]) == 3
    assert "unknown generator" in capsys.readouterr().err


def test_analyze_complete_7_2(tmp_path, edge_file):
    code, rep, _ = run(["analyze", "--gen", "complete:7:2", "--k", "1", "--cochain", str(edge_file)], tmp_path)
    assert code == 0
    jsonschema.validate(rep, schema("report.schema.json"))
    c = rep["constants"]
    assert (c["beta"], c["beta_clamped"], c["lambda"]) == ("6/5", "1/1", "0/1")
    assert len(c["beta_per_link"]) == 7 and len(c["lambda_per_link"]) == 8
    assert rep["cochains"][0]["heavy"][0]["heavy_faces"] == [[1], [2]]
    assert rep["expansion_bound"] == {"weight_cap": "1/6", "expansion_constant": "1/16"}


def test_analyze_input_errors(tmp_path, capsys):
    bad = write(tmp_path, "bad.json", {"top_faces": [{"vertices": [0, 1, 2], "weight": "3/0"}]})
    assert main(["analyze", "--complex", str(bad)]) == 3
    assert "top_faces[0].weight" in capsys.readouterr().err
    graph = write(tmp_path, "g.json", {"top_faces": [{"vertices": [0, 1]}, {"vertices": [1, 2]}]})
    assert main(["analyze", "--complex", str(graph), "--k", "1"]) == 3
    assert "outside" in capsys.readouterr().err
    broken = tmp_path / "broken.json"
    broken.write_text('{"top_faces": [\n  {"vertices": [0, 1],}\n]}')
    assert main(["analyze", "--complex", str(broken)]) == 3
    assert "line 2" in capsys.readouterr().err
    mixed = write(tmp_path, "m.json", {"top_faces": [{"vertices": [0, 1]}, {"vertices": [0, 1, 2]}]})
    assert main(["analyze", "--complex", str(mixed)]) == 3


def test_verify_single_edge(tmp_path, k7file, edge_file):
    code, rep, _ = run(["verify", "--complex", str(k7file), "--cochain", str(edge_file)], tmp_path)
    assert code == 0
    jsonschema.validate(rep, schema("report.schema.json"))
    jsonschema.validate(json.loads(edge_file.read_text()), schema("cochain.schema.json"))
    checks = {c["check"]: c for c in rep["checks"]}
    thm = checks["small_set_expansion"]
    assert (thm["verdict"], thm["lhs"], thm["rhs"]) == ("pass", "1/7", "1/336")
    assert rep["locally_minimal"] is True and rep["status"] == "pass"
    assert len(rep["inputs"]["complex"]["sha256"]) == 64


def test_verify_vertex_star_gated(tmp_path, k7file):
    star = write(tmp_path, "star.json", {"dimension": 1, "group": "z2",
                                         "values": [{"face": [0, v], "value": 1} for v in range(1, 7)]})
    code, rep, _ = run(["verify", "--complex", str(k7file), "--cochain", str(star)], tmp_path)
    assert code == 0
    thm = next(c for c in rep["checks"] if c["check"] == "small_set_expansion")
    assert thm["verdict"] == "gated" and thm["notes"].startswith("not locally minimal")
    assert rep["locally_minimal"] is False


def test_verify_zero_cochain(tmp_path, k7file):
    z = write(tmp_path, "z.json", {"dimension": 1, "group": "z2", "values": []})
    code, rep, _ = run(["verify", "--complex", str(k7file), "--cochain", str(z)], tmp_path)
    assert code == 0
    assert all(c["verdict"] == "pass" for c in rep["checks"])


def test_verify_cochain_errors(tmp_path, k7file, capsys):
    bad = write(tmp_path, "bad.json", {"dimension": 1, "group": "z2",
                                       "values": [{"face": [0, 9], "value": 1}, {"face": [7, 8], "value": 1}]})
    assert main(["verify", "--complex", str(k7file), "--cochain", str(bad)]) == 3
    err = capsys.readouterr().err
    assert "[0, 9]" in err and "[7, 8]" in err
    desc = write(tmp_path, "d.json", {"dimension": 1, "group": "z2", "values": [{"face": [2, 1], "value": 1}]})
    assert main(["verify", "--complex", str(k7file), "--cochain", str(desc)]) == 3
    zero = write(tmp_path, "z.json", {"dimension": 1, "group": "z2", "values": [{"face": [1, 2], "value": 2}]})
    assert main(["verify", "--complex", str(k7file), "--cochain", str(zero)]) == 3
    other = write(tmp_path, "o.json", {"dimension": 1, "group": "z3", "values": []})
    assert main(["verify", "--complex", str(k7file), "--cochain", str(other)]) == 3


def test_scan_summary_and_schema(tmp_path):
    code, rep, _ = run(["scan", "--gen", "complete:7:2", "--group", "z2", "--k", "1", "--max-support", "3"], tmp_path)
    assert code == 0
    jsonschema.validate(rep, schema("report.schema.json"))
    s = rep["scan"]["summary"]
    assert s["candidates"] == 1561 and s["failed"] == 0 and s["applicable"] >= 1


def test_scan_clamps_support_with_warning(tmp_path, capsys):
    code, rep, _ = run(["scan", "--gen", "complete:4:2", "--k", "1", "--max-support", "50"], tmp_path)
    assert code == 0
    assert rep["scan"]["summary"]["max_support"] == 6
    assert rep["warnings"] and "clamped" in capsys.readouterr().err


def test_scan_budget_refusal(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HDX_BUDGET", "100")
    code, rep, _ = run(["scan", "--gen", "complete:7:2", "--k", "1", "--max-support", "3"], tmp_path)
    assert code == 4 and rep is None
    assert "1562 required" in capsys.readouterr().err


@pytest.mark.parametrize("args", [["--max-support", "2"], ["--sample", "300", "--seed", "11"]])
def test_scan_byte_identical_across_workers(tmp_path, args):
    base = ["scan", "--gen", "complete:7:2", "--k", "1"] + args
    _, _, a = run(base + ["--workers", "1"], tmp_path, "a.json")
    _, _, b = run(base + ["--workers", "3"], tmp_path, "b.json")
    _, _, c = run(base + ["--workers", "1"], tmp_path, "c.json")
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_sampled_seed_printed(tmp_path, capsys):
    run(["scan", "--gen", "complete:5:2", "--k", "1", "--sample", "5"], tmp_path)
    assert "seed=" in capsys.readouterr().err


def test_failure_exit_code(tmp_path, monkeypatch):
    # force a failing comparison by patching the bound; exit status must follow the verdict
    monkeypatch.setattr(hdx.verify, "expansion_constant", lambda k, beta: 10)
    code, rep, _ = run(["scan", "--gen", "complete:5:2", "--k", "1", "--max-support", "1"], tmp_path)
    assert code == 2 and rep["status"] == "fail" and rep["scan"]["summary"]["failed"] > 0
    jsonschema.validate(rep, schema("report.schema.json"))


def test_module_entry_point(tmp_path):
    out = subprocess.run([sys.executable, "-m", "hdx", "generate", "complete:3:2"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["top_faces"] == [{"vertices": [0, 1, 2], "weight": "1/1"}]
