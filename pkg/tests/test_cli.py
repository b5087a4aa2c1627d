import json

import pytest

from hitlab.cli import main
from hitlab.setsystem import read_text


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_sample_then_solve(tmp_path, capsys):
    path = tmp_path / "sys.txt"
    rc, _, _ = run(capsys, "sample", "--n", "12", "--beta", "0.5", "--seed", "0x2a", "--out", str(path))
    assert rc == 0
    sys = read_text(path)
    assert sys.n == 12
    rc, out, _ = run(capsys, "solve", str(path))
    assert rc == 0
    doc = json.loads(out)
    assert doc["n"] == 12 and doc["edges"] == len(sys.edges)
    assert doc["status"] == "optimal"


def test_sample_to_stdout_matches_file(tmp_path, capsys):
    path = tmp_path / "a.txt"
    run(capsys, "sample", "--n", "8", "--lg-p", "-3", "--seed", "42", "--out", str(path))
    _, out, _ = run(capsys, "sample", "--n", "8", "--lg-p", "-3", "--seed", "42")
    assert out == path.read_text()


def test_solve_budget_exit_code(tmp_path, capsys):
    path = tmp_path / "s.txt"
    run(capsys, "sample", "--n", "24", "--beta", "0.5", "--seed", "1", "--out", str(path))
    rc, out, err = run(capsys, "solve", str(path), "--node-budget", "2")
    assert rc == 3
    assert json.loads(out)["status"] == "budget_exceeded"
    assert "budget" in err


def test_predict(capsys):
    rc, out, _ = run(capsys, "predict", "--n", "64", "--beta", "0.5")
    assert rc == 0
    doc = json.loads(out)
    assert doc["window_finite"]["h_hat"] == 27
    assert doc["prediction_asymptotic"]["h"] == 27
    assert doc["prediction_asymptotic"]["i"] == 36
    assert len(doc["curve"]) == 65


def test_diagnose(capsys):
    rc, out, _ = run(capsys, "diagnose", "--n", "12", "--beta", "0.5", "--m", "4")
    assert rc == 0
    doc = json.loads(out)
    assert doc["m"] == 4
    assert doc["S"] == pytest.approx(4.2304, abs=1e-3)
    assert doc["cheby_bound"] == pytest.approx(3.3424, abs=1e-3)


def test_experiment_writes_outputs(tmp_path, capsys):
    path = tmp_path / "run.csv"
    rc, out, _ = run(capsys, "experiment", "--n", "10", "--lg-p", "-4", "--trials", "6",
                     "--seed", "3", "--out", str(path), "--no-timing")
    assert rc == 0
    assert json.loads(out)["summary"]["trials"] == 6
    assert path.exists() and path.with_suffix(".json").exists()
    rows = path.read_text().strip().split("\n")
    assert len(rows) == 7
    assert all(r.endswith(",") for r in rows[1:])


def test_bad_input_exit_codes(tmp_path, capsys):
    assert run(capsys, "predict", "--n", "10", "--beta", "1.5")[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("n 3\n1 5\n")
    rc, _, err = run(capsys, "solve", str(bad))
    assert rc == 2 and "line 2" in err
    with pytest.raises(SystemExit) as info:
        main(["sample", "--n", "5", "--beta", "0.5", "--alpha", "2"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["experiment", "--n", "5", "--beta", "0.5", "--trials", "1", "--seed", "-1"])
