import json
import os
import subprocess
import sys

import pytest

from ranklab import Matrix
from ranklab.cli import main, parse_dims
from ranklab.errors import UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_dims():
    assert parse_dims("2..5") == (2, 5)
    assert parse_dims("3") == (3, 3)
    for bad in ("4..2", "0..3", "2..9", "a..b", "2-5"):
        with pytest.raises(UsageError):
            parse_dims(bad)
    assert parse_dims("2..9", cap=10) == (2, 9)


def test_check_example(capsys, validate):
    code, out, _ = run(capsys, "check", "--entries", "v31,w3", "--dims", "2..4", "--trials", "50", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    validate(doc, "check-report.json")
    assert [r["id"] for r in doc["entries"]] == ["v31", "w3"]
    for row in doc["entries"]:
        assert row["fails"] == 0
        assert row["passes"] + row["misses"] == 150


@pytest.mark.parametrize("argv", [
    ["check", "--entries", "nosuch"],
    ["check", "--entries", "v36", "--field", "0"],
    ["extremal", "--family", "TN44", "--dims", "4..2"],
    ["extremal", "--family", "NOPE"],
    ["check", "--trials", "0", "--entries", "v31"],
    ["gen"],
    ["gen", "--kind", "idempotent-pair", "--m", "12"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "ranklab: error" in err


def test_unknown_id_is_named(capsys):
    _, _, err = run(capsys, "check", "--entries", "v31,nosuch")
    assert "nosuch" in err


def test_extremal_examples(capsys, validate):
    code, out, _ = run(capsys, "extremal", "--family", "TN44", "--dims", "2..4", "--trials", "16",
                       "--seed", "3", "--instances", "10")
    assert code == 0
    doc = json.loads(out)
    validate(doc, "extremal-report.json")
    assert doc["summary"]["violations"] == 0
    code, out, _ = run(capsys, "extremal", "--family", "T10", "--trials", "1", "--instances", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"]["trials"] == 1
    assert all(r["trials"] == 1 for r in doc["runs"])


def test_gen_idempotent_pair(capsys, validate):
    code, out, _ = run(capsys, "gen", "--kind", "idempotent-pair", "--m", "3", "--ranks", "1,2", "--seed", "9")
    assert code == 0
    doc = json.loads(out)
    validate(doc, "gen-report.json")
    (inst,) = doc["instances"]
    mats = {k: Matrix.from_json(v) for k, v in inst["matrices"].items()}
    assert len(mats) == 2
    assert sorted(X.rank() for X in mats.values()) == [1, 2]
    for X in mats.values():
        assert X @ X == X
    assert len(inst["verified"]) == 2


def test_gen_projector_and_star_pairs(capsys):
    _, out, _ = run(capsys, "gen", "--kind", "projector-pair", "--m", "2", "--ranks", "0,2")
    mats = [Matrix.from_json(v) for v in json.loads(out)["instances"][0]["matrices"].values()]
    assert mats == [Matrix.zeros(2, 2), Matrix.identity(2)]
    _, out, _ = run(capsys, "gen", "--kind", "star-pair", "--m", "2")
    m = json.loads(out)["instances"][0]["matrices"]
    A, B = Matrix.from_json(m["A"]), Matrix.from_json(m["B"])
    assert B == A.H


def test_determinism_and_seed_env(capsys, monkeypatch):
    argv = ["check", "--entries", "w62,hh21", "--dims", "2..3", "--trials", "5"]
    _, a, _ = run(capsys, *argv, "--seed", "11")
    _, b, _ = run(capsys, *argv, "--seed", "11")
    assert a == b
    monkeypatch.setenv("RANKLAB_SEED", "11")
    _, c, _ = run(capsys, *argv)
    assert c == a
    monkeypatch.setenv("RANKLAB_SEED", "zzz")
    assert run(capsys, *argv)[0] == 2


def test_out_is_written_atomically(capsys, tmp_path):
    target = tmp_path / "rep.json"
    target.write_text("old")
    code, out, _ = run(capsys, "report", "--out", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert "v31" in doc["entries"]
    assert os.listdir(tmp_path) == ["rep.json"]


def test_failure_path_leaves_no_partial_output(capsys, tmp_path):
    target = tmp_path / "rep.json"
    code, _, _ = run(capsys, "check", "--entries", "nosuch", "--out", str(target))
    assert code == 2
    assert not target.exists()


def test_audit_exit_zero(capsys, validate):
    code, out, _ = run(capsys, "check", "--audit", "--entries", "ff32", "--dims", "2..2", "--trials", "10")
    assert code == 0
    validate(json.loads(out), "audit-report.json")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ranklab", "check", "--entries", "nosuch"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "nosuch" in proc.stderr
