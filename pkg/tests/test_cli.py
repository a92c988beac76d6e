import csv
import json

import pytest

from qcomposed import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_or(capsys):
    code, out, _ = run(capsys, "analyze", "--f", "or", "--n", "16")
    data = json.loads(out)
    assert code == 0 and (data["l0"], data["l1"], data["razborov"]) == (1, 0, 4.0)
    assert "class representatives" in data["bounds"]


def test_analyze_and_like_and_parity(capsys):
    assert json.loads(run(capsys, "analyze", "--f", "table:00001", "--n", "4")[1])["classification"] == "AND-like"
    assert json.loads(run(capsys, "analyze", "--f", "parity", "--n", "8")[1])["query_bound"] == 8


def test_analyze_parse_error(capsys):
    code, _, err = run(capsys, "analyze", "--f", "majority", "--n", "4")
    assert code == 1 and "input error" in err


def test_run_find_one(capsys):
    code, out, _ = run(capsys, "run", "find-one", "--n", "4", "--g", "and2", "--x", "1001",
                       "--y", "0001", "--seed", "7")
    rep = json.loads(out)
    assert code == 0 and rep["value"] == {"found": 3} and rep["ledger"]["epr_pairs"] == 0


def test_run_replay_byte_identical(capsys):
    args = ["run", "sym-and", "--f", "table:000000011", "--x", "11111110", "--y", "11111110",
            "--mode", "ledger", "--seed", "5"]
    a = json.loads(run(capsys, *args)[1])
    b = json.loads(run(capsys, *args)[1])
    a.pop("wallclock"), b.pop("wallclock")
    assert json.dumps(a) == json.dumps(b) and a["value"] == 1


def test_run_capacity_error(capsys):
    x = ",".join(["0"] * 1000)
    code, _, err = run(capsys, "run", "find-one", "--x", x, "--y", x)
    assert code == 3 and "ledger" in err


def test_run_bad_input(capsys):
    assert run(capsys, "run", "find-one", "--x", "10", "--y", "1")[0] == 1
    assert run(capsys, "run", "find-one", "--x", "10")[0] == 1
    assert run(capsys, "run", "find-one", "--n", "3", "--x", "10", "--y", "11")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--seed", "7", "--mode", "ledger", "run", "find-one",
                       "--x", "1001", "--y", "0001")
    rep = json.loads(out)
    assert rep["seed"] == 7 and rep["mode"] == "ledger"


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 11, "mode": "ledger", "x": "0110", "y": "0111"}))
    rep = json.loads(run(capsys, "--config", str(cfg), "run", "find-one")[1])
    assert rep["seed"] == 11 and rep["mode"] == "ledger"
    rep = json.loads(run(capsys, "--config", str(cfg), "run", "find-one", "--seed", "2")[1])
    assert rep["seed"] == 2


def test_config_must_be_flat(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"grid": {"n": [1]}}))
    assert run(capsys, "--config", str(cfg), "analyze", "--f", "or", "--n", "2")[0] == 1


def test_sweep_csv(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(capsys, "sweep", "find-more", "--n", "2^6..2^8", "--k", "4", "--trials", "3",
                     "--out", str(out))
    rows = list(csv.DictReader(out.open()))
    assert code == 0 and len(rows) == 9
    assert {"qubits_claimed", "epr_pairs", "success", "seed"} <= set(rows[0])
    assert [int(r["n"]) for r in rows] == [64] * 3 + [128] * 3 + [256] * 3


def test_sweep_zero_trials(capsys):
    code, out, _ = run(capsys, "sweep", "sparse-intersect", "--n", "64", "--k", "1..3", "--trials", "0")
    assert code == 0 and len(out.strip().splitlines()) == 1


def test_sweep_unwritable(capsys, tmp_path):
    code, _, _ = run(capsys, "sweep", "sparse-intersect", "--n", "64", "--trials", "1",
                     "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 1


def test_sweep_empty_grid(capsys):
    assert run(capsys, "sweep", "find-one", "--trials", "1")[0] == 1


def test_parse_values():
    assert cli.parse_values("1..3,8,2^4", True) == [1, 2, 3, 8, 16]
    assert cli.parse_values("and2,xor2", False) == ["and2", "xor2"]
    with pytest.raises(cli.InputError):
        cli.parse_values("x", True)


def test_verify_subset_reports(capsys, tmp_path):
    out = tmp_path / "v.json"
    code, text, _ = run(capsys, "verify", "fast", "--only", "3,7,9", "--out", str(out))
    assert code == 0
    assert text.count("[PASS]") == 4  # three criteria plus the entanglement audit
    summary = json.loads(out.read_text())
    assert summary["passed"] and len(summary["criteria"]) == 4


def test_verify_exit_code_on_failure(capsys, monkeypatch):
    from qcomposed import acceptance

    def broken(audit, fast=False):
        return acceptance.CriterionResult(1, "induced failure", False, {"failures": 1})

    monkeypatch.setattr(acceptance, "CRITERIA", (broken,))
    code, text, _ = run(capsys, "verify", "fast")
    assert code == 2 and "[FAIL]" in text


def test_skipping_the_verification_gate_is_caught(capsys, monkeypatch):
    # mutation: report the measured index without checking it
    from qcomposed import acceptance, search

    real = search.find_one

    def ungated(instance, session, lean=True):
        res = real(instance, session, lean)
        return res if res is not search.NO_COORDINATE else search.Found(0)

    monkeypatch.setattr(search, "find_one", ungated)
    monkeypatch.setattr(acceptance, "find_one", ungated)
    code, text, _ = run(capsys, "verify", "fast", "--only", "1")
    assert code == 2 and "[FAIL] criterion 1" in text
