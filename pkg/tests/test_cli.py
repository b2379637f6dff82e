import io
import json
import subprocess
import sys

import pytest

from arithinv import cli
from arithinv.groups import lattice_s3, trivial
from arithinv.rings import Domain


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text), text


@pytest.fixture
def rep_file(tmp_path):
    def write(G, name="rep.json"):
        path = tmp_path / name
        path.write_text(json.dumps(G.to_json()))
        return str(path)
    return write


def test_invariants_over_rationals(rep_file):
    code, data, _ = run_json("invariants", "--input", rep_file(lattice_s3(Domain.rationals())))
    assert code == 0
    assert [g["degree"] for g in data["generators"]] == [2, 3]
    assert data["generators"][0]["poly"] == "x^2 + 3*x*y + 3*y^2"
    assert data["schema"] == "1" and data["complete"]
    assert data["dimensions"] == data["molien"]


def test_invariants_trivial_group(rep_file):
    code, text = run("invariants", "--input", rep_file(trivial(2)))
    assert code == 0
    assert "[1] x" in text and "[1] y" in text


def test_invariants_modulo_three(rep_file):
    code, data, _ = run_json("invariants", "--input", rep_file(lattice_s3()), "--prime", "3",
                             "--degree-bound", "6")
    assert code == 0
    assert [g["poly"] for g in data["generators"]] == ["x", "x^4*y^2 + x^2*y^4 + y^6"]
    code, data, _ = run_json("invariants", "--group", "lattice-s3", "--prime", "3",
                             "--degree-bound", "6")
    assert [g["degree"] for g in data["generators"]] == [1, 6]


def test_invariants_incomplete():
    code, data, _ = run_json("invariants", "--group", "lattice-s3", "--degree-bound", "2")
    assert code == 3
    assert data["complete"] is False and data["still_growing"] is True


def test_malformed_input(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("invariants", "--input", str(bad))[0] == 2
    bad.write_text(json.dumps({"n": 2, "domain": "Integers", "generators": [[[1, 0]]]}))
    assert run("decide", "--input", str(bad))[0] == 2
    assert run("invariants", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run("invariants")[0] == 2
    assert run("decide", "--group", "nonsense")[0] == 2
    assert run("ideal", "--d", "-3", "--gens", "2")[0] == 2
    assert run("ideal", "--d", "-5", "--gens", "0")[0] == 2
    assert run("ideal", "--d", "-5", "--gens", "2,1+s", "--op", "localize")[0] == 2


def test_decide_exit_codes(rep_file):
    path = rep_file(lattice_s3())
    code, data, _ = run_json("decide", "--input", path, "--prime", "3")
    assert code == 1
    [lv] = data["primes"]
    assert lv["verdict"] == "NotPolynomialRing"
    assert lv["obstruction"] == "x^4*y^2 + 6*x^3*y^3 + 13*x^2*y^4 + 12*x*y^5 + 4*y^6"
    assert data["certificates_verified"]
    assert run("decide", "--input", path, "--prime", "5")[0] == 0
    assert run("decide", "--input", rep_file(trivial(2), "t.json"))[0] == 0
    assert run("decide", "--input", path)[0] == 1
    assert run("decide", "--input", path, "--prime", "3", "--degree-bound", "4")[0] == 4
    code, data, _ = run_json("decide", "--input", path, "--prime", "5", "--no-verify")
    assert code == 0 and data["certificates_verified"] is False


def test_exit_codes_follow_the_verdict():
    assert cli.verdict_exit_code("PolynomialRing") == 0
    assert cli.verdict_exit_code("NotPolynomialRing") == 1
    assert cli.verdict_exit_code("Inconclusive") == 4
    assert cli.verdict_exit_code("BlowupTensorOnly") == 4


def test_example_s3():
    code, text = run("example-s3")
    assert code == 0
    assert "g²−4f³ divisible by 27: true" in text
    assert "reduction injective: true (image order 6)" in text
    assert "φ(h) = g' up to the unit -1" in text
    assert "φ(f) = x^2 = f'^2" in text
    assert text.rstrip().endswith("verdict: NotPolynomialRing")
    code, data, _ = run_json("example-s3")
    assert data["reproduced"] and all(data["checks"].values())


def test_example_s3_mismatch(monkeypatch):
    monkeypatch.setitem(cli.EXPECTED_S3, "f", "x^2 + x*y + y^2")
    code, text = run("example-s3")
    assert code == 5
    assert "MISMATCH" in text and "f: expected x^2 + x*y + y^2" in text


def test_ideal_operations():
    base = ("ideal", "--d", "-5", "--gens", "2,1+s")
    code, data, _ = run_json(*base, "--op", "norm")
    assert code == 0 and data["result"] == 2
    assert data["ideal"]["hnf"] == [[1, 1], [0, 2]]
    _, data, _ = run_json(*base, "--op", "principal")
    assert data["result"] == {"principal": False, "generator": None}
    _, data, _ = run_json(*base, "--op", "pow", "--exponent", "2")
    assert data["result"]["hnf"] == [[2, 0], [0, 2]]
    _, data, _ = run_json(*base, "--op", "mul", "--other", "2,1-sqrt(-5)")
    assert data["result"]["norm"] == 4
    for q, g in (("2", "1 + sqrt(-5)"), ("3", "2"), ("7", "2")):
        _, data, _ = run_json(*base, "--op", "localize", "--q", q)
        assert data["result"]["generator"] == g and data["result"]["certified"]
    _, data, _ = run_json(*base, "--op", "grading-check", "--m-max", "4")
    assert [r["principal"] for r in data["result"]["powers"]] == [True, False, True, False, True]


@pytest.mark.parametrize("argv", [
    ("example-s3",),
    ("decide", "--group", "lattice-s3"),
    ("invariants", "--group", "s3-permutation"),
    ("ideal", "--d", "-5", "--gens", "2,1+s", "--op", "grading-check"),
])
def test_json_round_trips_byte_identically(argv):
    _, data, text = run_json(*argv)
    assert data["schema"] == "1"
    assert json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n" == text


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arithinv", "decide", "--group", "lattice-s3",
                           "--prime", "5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "conclusion: PolynomialRing" in proc.stdout
