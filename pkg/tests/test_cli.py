import csv
import io
import json
import subprocess
import sys

import pytest

from brunnian.cli import EXIT_DOMAIN, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_lob_text():
    code, out, _ = call("lob", "1/4")
    assert code == EXIT_OK
    assert "0.457982797088" in out


def test_lob_formats_agree():
    _, out_csv, _ = call("lob", "1/6", "--format", "csv")
    _, out_json, _ = call("lob", "1/6", "--format", "json")
    row = next(csv.DictReader(io.StringIO(out_csv)))
    assert [{k: str(v) for k, v in r.items()} for r in json.loads(out_json)] == [row]


def test_vol_antiprism_check():
    code, out, _ = call("vol", "--family", "antiprism", "--n", "3", "--to", "6", "--check", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["m"] for r in rows] == ["3", "4", "5", "6"]
    assert all(float(r["abs_deviation"]) <= 1e-6 for r in rows)


def test_vol_beta():
    code, out, _ = call("vol", "--family", "beta", "--n", "2", "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)[0]["volume"].startswith("24.092184")


def test_skel_formats():
    code, out, _ = call("skel", "Pn", "3", "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert (data["V"], data["E"], data["F"], data["euler"]) == (18, 36, 20, 2)
    assert data["census"] == {"3": 12, "4": 6, "6": 2}
    code, out, _ = call("skel", "antiprism", "5")
    assert out.startswith("antiprism 5: V=10 E=20 F=12 Euler=2")


@pytest.mark.parametrize("code_kind", ["pd", "gauss", "program"])
def test_gen(code_kind):
    code, out, _ = call("gen", "Br", "1,1", "--code", code_kind)
    assert code == EXIT_OK
    if code_kind == "pd":
        assert out.count("X[") == 12


def test_gen_json_and_csv():
    _, out_json, _ = call("gen", "Br:1,1", "--format", "json")
    data = json.loads(out_json)
    assert data["components"] == 2 and len(data["crossings"]) == 12
    _, out_csv, _ = call("gen", "Br:1,1", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    assert [[int(r[k]) for k in "abcd"] for r in rows] == data["crossings"]


def test_verify_certified():
    code, out, _ = call("verify", "Br", "1,1")
    assert code == EXIT_OK
    assert "Brunnian-certified" in out


def test_verify_json_has_certificates():
    code, out, _ = call("verify", "Br", "1,1,1", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["verdict"] == "Brunnian-certified"
    assert all(len(s["certificate"]) == s["moves"] > 0 for s in data["sublinks"])


def test_verify_unknown_exit_code():
    code, out, _ = call("verify", "Br", "3,3", "--budget", "5", "--format", "csv")
    assert code == EXIT_UNKNOWN
    assert "verdict,Unknown" in out


def test_census():
    code, out, _ = call("census", "Br", "3,3", "--format", "json")
    data = json.loads(out)
    assert data["sizes"] == [7, 7, 7, 7]
    assert data["all_regions_at_least_6"] is True


def test_export(tmp_path):
    code, out, _ = call("export", "Br", "1,1", "--out", str(tmp_path), "--verify")
    assert code == EXIT_OK
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["Br_1_1.census.json", "Br_1_1.gauss", "Br_1_1.pd", "Br_1_1.slices", "Br_1_1.verify.json"]
    assert json.loads((tmp_path / "Br_1_1.verify.json").read_text())["verdict"] == "Brunnian-certified"


@pytest.mark.parametrize(
    "argv",
    [[], ["frobnicate"], ["vol", "--n", "3"], ["lob"], ["skel", "cube", "3"], ["verify", "Br", "1,1", "--budget", "0"]],
)
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == EXIT_USAGE
    assert "error" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["lob", "1/0"],
        ["lob", "abc"],
        ["vol", "--family", "antiprism", "--n", "2"],
        ["vol", "--family", "Ln", "--n", "5", "--to", "3"],
        ["skel", "Pn", "1"],
        ["gen", "Br", "1,0"],
        ["gen", "Xn:3"],
        ["verify", "Ln", "3"],
        ["census", "Br:1,1", "2"],
    ],
)
def test_domain_errors(argv):
    code, out, err = call(*argv)
    assert code == EXIT_DOMAIN
    assert out == ""
    assert err.startswith("brunnian: error:")


def test_budget_environment(monkeypatch):
    monkeypatch.setenv("BRUNNIAN_BUDGET", "nope")
    code, _, _ = call("verify", "Br", "1,1")
    assert code == EXIT_DOMAIN


@pytest.mark.parametrize(
    "argv",
    [
        ["vol", "--family", "Ln", "--n", "2", "--to", "5", "--check"],
        ["gen", "Br", "1,2,1", "--code", "gauss"],
        ["verify", "Br", "1,1", "--format", "json"],
        ["census", "Lpn", "3", "--format", "csv"],
    ],
)
def test_subprocess_determinism(argv):
    outs = {
        subprocess.run([sys.executable, "-m", "brunnian.cli", *argv], capture_output=True, check=False).stdout
        for _ in range(2)
    }
    assert len(outs) == 1
    assert outs.pop()
