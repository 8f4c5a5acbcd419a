import json
import re
import subprocess
import sys

import pytest

from nilfinsler.catalog import build
from nilfinsler.cli import EXIT_COMPUTE, EXIT_OK, EXIT_USAGE, main, run


def write_doc(tmp_path, doc, name="alg.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def test_sectional_latex_matches_stored_table():
    out, err, code = run(["sectional", "--preset", "l57", "--format", "latex"])
    assert code == EXIT_OK and not err
    e = build("l57")
    rows = re.findall(r"\$K\(E_\{(\d)\},E_\{(\d)\}\)\$ & \$(.*)\$ \\\\", out)
    assert len(rows) == 10
    for i, j, tex in rows:
        assert tex == e.poly(e.expected["sectional"][f"{i},{j}"]).to_latex()


def test_classify_json():
    out, _, code = run(["classify", "--preset", "l55", "--format", "json"])
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["douglas_span"] == ["E1", "E2", "E3"]
    assert rep["berwald_span"] == []
    assert rep["nonranders_douglas_exists"] is False


def test_classify_membership():
    out, _, code = run(["classify", "--preset", "l57", "--x", "1/2,1/3,0,0,0"])
    assert code == EXIT_OK
    assert "Douglas" in out


def test_verify_exit_codes():
    out, _, code = run(["verify", "--preset", "l57"])
    assert code == EXIT_OK
    assert "DIVERGENCE" in out and "curvature[1,2,4]" in out
    assert out.rstrip().splitlines()[-1].startswith("l57: ")
    out, _, code = run(["verify", "--strict", "--preset", "l57"])
    assert code == EXIT_COMPUTE
    assert "failed: curvature[1,2,4]" in out
    out, _, code = run(["verify", "--preset", "twostep_ii", "--strict"])
    assert code == EXIT_OK


def test_verify_runs_every_regime():
    out, _, code = run(["verify", "--preset", "l59", "--format", "json"])
    assert code == EXIT_OK
    assert {c["regime"] for c in json.loads(out)["checks"]} == {1, 2}


def test_malformed_input_names_field(tmp_path):
    path = write_doc(tmp_path, {"dim": 3, "brackets": [{"i": 1, "j": 2, "value": {"E3": "1 +"}}]})
    out, err, code = run(["connection", "--input", path])
    assert code == EXIT_USAGE and not out
    assert "brackets[0].value.E3" in err
    path = write_doc(tmp_path, "{\n  \"dim\": 3,\n  oops\n}", "bad.json")
    _, err, code = run(["connection", "--input", path])
    assert code == EXIT_USAGE and "line 3" in err


def test_jacobi_failure_names_triple(tmp_path):
    doc = {"dim": 4, "brackets": [
        {"i": 1, "j": 2, "value": {"E3": "1"}},
        {"i": 2, "j": 3, "value": {"E4": "1"}},
        {"i": 1, "j": 4, "value": {"E2": "1"}},
    ]}
    _, err, code = run(["curvature", "--input", write_doc(tmp_path, doc)])
    assert code == EXIT_USAGE
    assert "(E1, E2, E3)" in err


def test_computation_errors_exit_one(tmp_path):
    free = {"dim": 3, "params": {"free": ["c"]}, "brackets": [{"i": 1, "j": 2, "value": {"E3": "c"}}]}
    _, err, code = run(["classify", "--input", write_doc(tmp_path, free)])
    assert code == EXIT_COMPUTE and "IndeterminatePivot" in err
    # no pivots needed for the connection
    _, _, code = run(["connection", "--input", write_doc(tmp_path, free)])
    assert code == EXIT_OK
    solvable = {"dim": 2, "brackets": [{"i": 1, "j": 2, "value": {"E2": "1"}}]}
    _, err, code = run(["connection", "--input", write_doc(tmp_path, solvable, "s.json")])
    assert code == EXIT_COMPUTE and "NotNilpotent" in err


def test_usage_errors():
    assert run(["classify", "--preset", "l57", "--input", "x.json"])[2] == EXIT_USAGE
    assert run(["classify"])[2] == EXIT_USAGE
    assert run(["verify", "--preset", "l57", "--regime", "3"])[2] == EXIT_USAGE
    assert run(["geodesic", "--preset", "l57", "--scan", "--params", "a=1"])[2] == EXIT_USAGE
    assert run(["scurvature", "--preset", "l57", "--y", "1,0,0"])[2] == EXIT_USAGE


def test_export_round_trip(tmp_path):
    out, _, code = run(["export", "--preset", "l56"])
    assert code == EXIT_OK
    path = write_doc(tmp_path, out, "l56.json")
    a, _, _ = run(["sectional", "--preset", "l56"])
    b, _, _ = run(["sectional", "--input", path])
    assert a == b


def test_out_writes_file(tmp_path, capsys):
    target = tmp_path / "ricci.tex"
    assert main(["ricci", "--preset", "l55", "--format", "latex", "--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert target.read_text() == run(["ricci", "--preset", "l55", "--format", "latex"])[0]


def test_geodesic_scan_json():
    args = ["geodesic", "--preset", "twostep_i", "--scan", "--params", "lam=1,mu=1", "--format", "json"]
    out, _, code = run(args)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["outside_claimed_components"] == 0
    assert doc["solutions"] and all(s["satisfied"] for s in doc["solutions"])
    assert run(args)[0] == out
    doc = json.loads(run(args[:-2] + ["--variant", "stated", "--format", "json"])[0])
    assert doc["outside_claimed_components"] > 0


def test_geodesic_equations_text():
    out, _, code = run(["geodesic", "--preset", "l57"])
    assert code == EXIT_OK
    assert out.splitlines()[0].startswith("<[Y,E1],Y> = ")


def test_scurvature_eval():
    out, _, code = run(["scurvature", "--preset", "l57", "--y", "0,3,4,0,0", "--xval", "1/2,1/3,0,0,0",
                        "--params", "a=1,b=1,c=1,d=1,f=1,g=1", "--format", "json"])
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["value"] == "-3"
    assert doc["reduced"] is True
    out, _, code = run(["scurvature", "--preset", "l57", "--y", "0,0,1,1,0", "--xval", "1/2,0,0,0,0",
                        "--params", "a=1,b=1,c=1,d=1,f=1,g=1", "--format", "json"])
    assert code == EXIT_OK
    assert set(json.loads(out)["value"]) == {"lo", "hi"}
    _, err, code = run(["scurvature", "--preset", "l57", "--y", "0,0,0,0,0", "--xval", "1/2,0,0,0,0",
                        "--params", "a=1,b=1,c=1,d=1,f=1,g=1"])
    assert code == EXIT_COMPUTE and "DomainError" in err


@pytest.mark.parametrize("fmt", ["text", "json", "latex"])
def test_presets_formats(fmt):
    out, _, code = run(["presets", "list", "--format", fmt])
    assert code == EXIT_OK and "l59" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nilfinsler", "scalar", "--preset", "l55"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == run(["scalar", "--preset", "l55"])[0]
