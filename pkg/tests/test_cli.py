import json
import subprocess
import sys

import pytest

from algvar import paperdata
from algvar.cli import main

ARG = paperdata.path("arguments")
CERT = paperdata.path("certificates")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_holds(capsys):
    code, out, _ = run(capsys, "check", "C5_01", "--identities", "commutative,cd,nilpotent")
    assert code == 0 and "CounterWitness" not in out


def test_check_counterwitness(capsys):
    code, out, _ = run(capsys, "check", "C5_01", "--identities", "jordan")
    assert code == 1 and "CounterWitness" in out


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "missing.alg")
    assert code == 2 and err.startswith("error:")


def test_check_algebra_file(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"name": "x", "dim": 2, "parameters": [],
                             "products": [{"i": 1, "j": 1, "terms": [{"k": 2, "coeff": "1"}]}]}))
    code, out, _ = run(capsys, "check", str(p))
    assert code == 0
    p.write_text('{"dim": 2, "products": [], "bogus": 1}')
    assert run(capsys, "check", str(p))[0] == 2


def test_bad_arguments(capsys):
    assert run(capsys, "check", "C5_02", "--params", "alpha")[0] == 2
    assert run(capsys, "check", "C5_01", "--identities", "lie")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_catalog_list_and_export(capsys):
    code, out, _ = run(capsys, "catalog", "list", "--filter", "jordan_reps")
    assert code == 0 and len(out.strip().splitlines()) == 5
    code, out, _ = run(capsys, "catalog", "export")
    assert code == 0 and len(json.loads(out)) == 87


def test_invariants_record(capsys):
    code, out, _ = run(capsys, "invariants", "C5_49", "--params", "alpha=2", "--format", "record")
    rec = json.loads(out)
    assert code == 0 and rec["orbit_dim"] == 23 and rec["power_dims"] == [5, 3, 1, 1, 0]


def test_verify_degeneration(capsys):
    code, out, _ = run(capsys, "verify", "degeneration", str(CERT / "C5_04-C5_01.json"))
    assert code == 0 and "Verified" in out


def test_verify_degeneration_mismatch(capsys, tmp_path):
    data = paperdata.load("certificates/C5_04-C5_01.json")
    data["basis"][3] = ["0", "0", "1", "0", "0"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, out, _ = run(capsys, "verify", "degeneration", str(p), "--format", "record")
    assert code == 1 and json.loads(out)["status"] == "Mismatch"


def test_verify_nondegeneration_row1(capsys):
    code, out, _ = run(capsys, "verify", "nondegeneration", str(ARG / "row1-C5_26.json"))
    assert code == 0 and out.strip().endswith("status: Verified")


def test_verify_nondegeneration_budget(capsys):
    code, out, _ = run(capsys, "--budget-ms", "1", "verify", "nondegeneration",
                       str(ARG / "row2-C5_49.json"))
    assert code == 3 and "Inconclusive" in out


def test_budget_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("ALGVAR_BUDGET_MS", "1")
    code, _, _ = run(capsys, "verify", "nondegeneration", str(ARG / "row2-C5_49.json"))
    assert code == 3


def test_verify_isomorphism(capsys, tmp_path):
    p = tmp_path / "iso.json"
    p.write_text(json.dumps({
        "source": "C5_13", "source_params": {"alpha": "2", "beta": "3"},
        "target": "C5_13", "target_params": {"alpha": "2", "beta": "-3"},
        "matrix": [["1" if i == j else "0" for j in range(4)] + ["0"] for i in range(3)]
        + [["0", "0", "0", "-1", "0"], ["0", "0", "0", "0", "1"]]}))
    assert run(capsys, "verify", "isomorphism", str(p))[0] == 0


def test_report_components(capsys):
    code, out, _ = run(capsys, "report", "components")
    assert code == 0
    assert "totals: dim 24, components 10, rigid 6, 1 two-parameter family, " \
           "3 one-parameter families" in out
    code2, out2, _ = run(capsys, "report", "components")
    assert out2 == out


def test_report_record(capsys):
    code, out, _ = run(capsys, "report", "components", "--format", "record")
    rec = json.loads(out)
    assert rec["totals"]["variety_dim"] == 24 and rec["totals"]["rigid"] == 6
    row = next(r for r in rec["rows"] if r["name"] == "C5_26")
    assert row["gdim"] == 23


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "algvar", "report", "components", "--jobs", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "components 10" in proc.stdout
