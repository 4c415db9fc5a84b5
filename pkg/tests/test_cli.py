import io
import json

import jsonschema
import pytest

from matforge.cli import main
from matforge.constructions import k5_matrix
from matforge.field import FieldMatrix
from matforge.report import REPORT_SCHEMA
from matforge.templates import not_refined_template, xy1_template


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stream=buf)
    return code, buf.getvalue()


def lines(text):
    return [json.loads(s) for s in text.splitlines() if s.strip()]


@pytest.fixture
def k5_file(tmp_path):
    path = tmp_path / "k5.json"
    path.write_text(k5_matrix().to_json())
    return str(path)


def test_matroid_rank_and_epsilon(k5_file):
    assert run("matroid", "rank", "--matrix", k5_file) == (0, "4\n")
    code, out = run("matroid", "epsilon", "--matrix", k5_file)
    assert code == 0 and int(out) == 10


def test_matroid_dual(k5_file, tmp_path):
    target = tmp_path / "dual.json"
    code, out = run("matroid", "dual", "--matrix", k5_file, "--out", str(target))
    assert code == 0
    d = FieldMatrix.from_json(target.read_text())
    assert d.shape == (6, 10)
    assert lines(out)[0] == d.to_dict()


def test_bad_input_exits_2(tmp_path):
    assert run("matroid", "rank", "--matrix", str(tmp_path / "missing.json"))[0] == 2
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    assert run("matroid", "rank", "--matrix", str(junk))[0] == 2
    assert run("matroid", "rank", "--matrix", '{"p": 3}')[0] == 2
    assert run("ornament", "--library", "Nope")[0] == 2
    assert run("ornament")[0] == 2
    assert run("template", "extremal", "--template", json.dumps(xy1_template().to_dict()))[0] == 2
    assert run("verify-all", "--only", "11")[0] == 2


def test_ornament_check(tmp_path):
    out_path = tmp_path / "or.json"
    code, out = run("ornament", "--library", "K4", "--R", "v0,v2", "--out", str(out_path), "--check")
    assert code == 0
    rows = lines(out)
    assert rows[0]["ornament"]["R"] == ["v0", "v2"]
    for rep in rows[1:]:
        jsonschema.validate(rep, REPORT_SCHEMA)
        assert rep["verdict"] == "pass"
    assert FieldMatrix.from_json(out_path.read_text()).p == 3


def test_n2_default_and_literal():
    code, out = run("n2")
    assert code == 0 and lines(out)[0]["n2"]["rank"] == 4
    code, out = run("n2", "--u", "[[1,0,0,0]]")
    assert code == 0 and lines(out)[0]["n2"]["elements"] == 13


def test_graph_info():
    code, out = run("graph", "info", "--library", "Petersen")
    info = lines(out)[0]["graph"]
    assert code == 0
    assert info["girth"] == 5 and info["cubic"] and info["vertices"] == 10
    assert info["cyclic_edge_connectivity"] == 5


def test_pertdist(tmp_path):
    a = FieldMatrix.from_rows(3, [[1, 0, 1], [0, 1, 1]], ["a", "b"], ["x", "y", "z"])
    b = FieldMatrix.from_rows(3, [[1, 0, 1], [0, 1, 0]], ["a", "b"], ["x", "y", "z"])
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    pa.write_text(a.to_json())
    pb.write_text(b.to_json())
    code, out = run("pertdist", "--m1", str(pa), "--m2", str(pb))
    rep = lines(out)[0]
    assert code == 0
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert rep["params"]["pert"] == 1 and 1 <= rep["params"]["dist"] <= 2


def test_bound_size(k5_file):
    code, out = run("bound-size", "--n", k5_file, "--t", "1", "--trials", "10", "--seed", "3")
    rep = lines(out)[0]
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert code == 0 and rep["verdict"] == "pass" and rep["seed"] == 3


def test_template_commands():
    xy1 = json.dumps(xy1_template().to_dict())
    code, out = run("template", "check", "--template", xy1, "--rank", "4")
    assert code == 0
    assert lines(out)[0]["template"] == {"y_reduced": True, "reduced": True, "refined": True,
                                         "construction_conforms": True}
    code, out = run("template", "extremal", "--template", xy1, "--rank", "5")
    rep = lines(out)[0]
    assert code == 0 and rep["params"]["predicted"] == rep["params"]["constructed"] == 14
    code, out = run("template", "bruteforce", "--template", xy1, "--rank", "3")
    rep = lines(out)[0]
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert code == 1 and rep["verdict"] == "fail" and rep["params"]["bruteforce"] == 6
    assert "A" in rep["witness"]


def test_template_check_not_refined():
    code, out = run("template", "check", "--template", json.dumps(not_refined_template().to_dict()))
    assert code == 0 and lines(out)[0]["template"]["refined"] is False


@pytest.mark.slow
def test_sweep_cli(tmp_path):
    code, out = run("sweep-u", "--emit-witnesses", str(tmp_path / "w"))
    rep = lines(out)[-1]
    jsonschema.validate(rep, REPORT_SCHEMA)
    assert code == 0 and rep["params"]["checked"] == 212
    assert not (tmp_path / "w").exists()


def test_verify_all_subset():
    code, out = run("verify-all", "--only", "2,3,4")
    rows = lines(out)
    assert code == 0 and {r["criterion"] for r in rows} == {2, 3, 4}
    for r in rows:
        r = {k: v for k, v in r.items() if k != "criterion"}
        jsonschema.validate(r, REPORT_SCHEMA)
