import io
import json
import subprocess
import sys

import pytest

from finlef.cli import run
from finlef.document import serialize
from finlef.fixtures import FIXTURES, fixture


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call("--json", *argv)
    return code, json.loads(out or err)


@pytest.mark.parametrize("name", list(FIXTURES))
def test_every_fixture_validates(name):
    assert call("validate", f"fixture:{name}")[0] == 0


def test_lefschetz_both_routes():
    code, out, _ = call("lefschetz", "fixture:example-s1-F", "--map", "F", "--via", "both")
    assert code == 0 and out.startswith("2 / 2")
    code, data = call_json("lefschetz", "fixture:example-s1-F", "--map", "F", "--via", "both")
    assert data["lefschetz"] == {"homology": 2, "carrier": 2}
    assert data["induced"] == [[[1]], [[-1]]]


def test_mfpp_sphere_fig3():
    code, data = call_json("mfpp", "fixture:sphere-fig3", "--budget", str(10**6))
    assert code == 1 and data["value"] is False and data["method"] == "complement-up-set"
    X = fixture("sphere-fig3").poset
    assert all(x not in v for x, v in data["witness"].items())
    assert set(data["witness"]["a"]) == set(X.elements) - {"a"}


def test_fpp_sphere_fig3():
    code, data = call_json("fpp", "fixture:sphere-fig3", "--budget", str(10**6))
    assert code == 0 and data["value"] is True


def test_classify_prop7_exits_zero():
    code, data = call_json("classify", "fixture:prop7", "--map", "F", "--verify-all-characterizations")
    assert code == 0
    assert (data["usc"], data["lsc"], data["susc"], data["slsc"]) == (True, True, False, False)
    assert data["acyclic_values"] is True
    assert len(data["characterizations"]) == 10


def test_precondition_failure_exits_one():
    code, data = call_json("lefschetz", "fixture:prop7", "--map", "F")
    assert code == 1 and data["error"] == "precondition" and data["witness"] == ["c", "a", "d"]


def test_worked_example_values():
    assert call_json("homology", "fixture:circle4")[1]["betti"] == [1, 1]
    assert call_json("homology", "fixture:sphere6")[1]["f_vector"] == [6, 12, 8]
    assert call_json("lefschetz", "fixture:example-L1", "--map", "F")[1]["lefschetz"] == {"homology": 1}
    assert call_json("fixed-points", "fixture:example-L1", "--map", "F")[1]["fixed_points"] == ["a", "b"]
    code, data = call_json("selectors", "fixture:corona", "--map", "F")
    assert code == 0 and data["count"] == 1
    code, data = call_json("certify", "fixture:corona-G", "--map", "G")
    assert code == 1 and data["lefschetz"] == 0 and data["fixed_points"] == []
    code, data = call_json("certify", "fixture:example-s1-F", "--map", "F", "--via", "both")
    assert code == 0 and data["lefschetz"] == 2
    code, data = call_json("homotopic", "fixture:corona-G", "--map", "F", "--map2", "G", "--budget", "1000")
    assert code == 0 and data["fence"]["relations"] == [">="]
    code, data = call_json("homotopy-class", "fixture:example-s1-F", "--map", "F", "--budget", "1000")
    assert code == 0 and data["count"] == 1
    code, data = call_json("core", "fixture:circle4")
    assert data["contractible"] is False and len(data["elements"]) == 4
    code, data = call_json("fpp", "fixture:circle4", "--budget", "1000")
    assert code == 1 and data["witness"] == {"a": "b", "b": "a", "c": "d", "d": "c"}
    code, data = call_json("audit", "fixture:chain2", "--budget", "1000")
    assert code == 0 and data["rationally_acyclic"] and data["mfpp"]["value"] and data["fpp"]["value"]


def test_not_homotopic_exits_one(tmp_path):
    doc = fixture("example-s1-F").to_json()
    doc["maps"]["L1"] = fixture("example-L1").to_json()["maps"]["F"]
    path = tmp_path / "two.json"
    path.write_text(json.dumps(doc))
    code, _, _ = call("homotopic", str(path), "--map", "F", "--map2", "L1")
    assert code == 1


def test_budget_exhaustion_exits_three():
    code, data = call_json("fpp", "fixture:sphere6", "--budget", "1")
    assert code == 3 and data["value"] is None
    code, data = call_json("homotopy-class", "fixture:corona", "--map", "F", "--budget", "1")
    assert code == 3 and data["error"] == "budget"


def test_input_errors_exit_two(tmp_path):
    assert call("validate", "fixture:nope")[0] == 2
    assert call("validate", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"poset": {"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]}}')
    code, _, err = call("validate", str(bad))
    assert code == 2 and "cycle" in err
    assert call("classify", "fixture:circle4", "--map", "F")[0] == 2
    assert call("fpp", "fixture:circle4", "--budget", "0")[0] == 2


def test_file_input(tmp_path):
    path = tmp_path / "c4.json"
    path.write_text(serialize(fixture("example-s1-F")))
    assert call("lefschetz", str(path), "--map", "F")[1].startswith("2")


def test_examples_listing():
    code, data = call_json("examples")
    assert code == 0 and sorted(data) == sorted(FIXTURES)
    code, out, _ = call("examples", "corona")
    assert json.loads(out) == fixture("corona").to_json()


def test_json_is_deterministic():
    a = call("--json", "lefschetz", "fixture:corona-G", "--map", "G", "--via", "both")
    b = call("lefschetz", "fixture:corona-G", "--map", "G", "--via", "both", "--json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "finlef", "homology", "fixture:sphere-fig3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "H_2: Z^1" in proc.stdout
