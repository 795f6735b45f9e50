"""Command-line behavior: schemas, determinism, exit codes, file round trips."""

import json

import pytest

from skewlab import InternalError, poly_matrix_to_json
from skewlab.cli import main

from conftest import norm_form_pencil


def run(tmp_path, *argv):
    out = tmp_path / "out.json"
    code = main([*argv, "--out", str(out)])
    return code, (out.read_bytes() if out.exists() else b"")


def run_json(tmp_path, *argv):
    code, raw = run(tmp_path, *argv)
    assert code == 0
    return json.loads(raw)


def test_random_command_schema(tmp_path):
    doc = run_json(tmp_path, "random", "--m", "3", "--n", "7", "--seed", "1")
    assert doc["command"] == "random"
    assert doc["config"] == {
        "field": {"kind": "fp", "p": 32003},
        "m": 3,
        "n": 7,
        "seed": 1,
        "trials": 20,
    }
    assert doc["rng"]["algorithm"] == "splitmix64"
    assert doc["matrix"]["kind"] == "skew-linear"
    assert doc["flipped"]["kind"] == "pencil"
    assert doc["profile"]["smooth"] is True
    assert len(doc["matrix"]["entries"]) == 7


def test_output_is_deterministic(tmp_path):
    args = ("random", "--m", "3", "--n", "9", "--seed", "11")
    _, first = run(tmp_path, *args)
    _, second = run(tmp_path, *args)
    assert first == second
    _, other = run(tmp_path, "random", "--m", "3", "--n", "9", "--seed", "12")
    assert other != first


def test_correspond_roundtrip_via_files(tmp_path):
    doc = run_json(
        tmp_path, "correspond", "from-matrix", "--m", "3", "--n", "5", "--seed", "3"
    )
    assert doc["direction"] == "from-matrix" and doc["certificate"]["ok"]
    assert doc["certificate"]["hilbert"] == [1, 3, 1]

    form_file = tmp_path / "form.json"
    form_file.write_text(json.dumps(doc["form"]))
    back = run_json(tmp_path, "correspond", "from-form", "--in", str(form_file))
    assert back["certificate"]["ok"]
    assert back["form"] == doc["form"]

    matrix_file = tmp_path / "matrix.json"
    matrix_file.write_text(json.dumps(doc["matrix"]))
    again = run_json(tmp_path, "correspond", "from-matrix", "--in", str(matrix_file))
    assert again["form"] == doc["form"]


def test_project_command(tmp_path):
    doc = run_json(tmp_path, "project", "--n", "7", "--seed", "5")
    assert doc["roundtrip_form_matches"] is True
    assert doc["certificate"]["ok"]
    assert doc["projection"]["n"] == 7
    assert len(doc["projection"]["center"]["basis"]) == 3


def test_sample_command_odd(tmp_path):
    doc = run_json(
        tmp_path, "sample", "--m", "3", "--n", "5", "--seed", "2", "--trials", "4"
    )
    assert doc["mode"] == "odd-parametrization" and doc["all_ok"] is True
    assert len(doc["points"]) == 4
    for row in doc["points"]:
        assert row["ok"] and row["rank"] <= 2


def test_sample_command_even(tmp_path):
    doc = run_json(
        tmp_path,
        "sample",
        "--m", "3", "--n", "6", "--seed", "2",
        "--field", "fp", "--p", "101", "--trials", "3",
    )
    assert doc["mode"] == "even-scroll" and doc["all_ok"] is True
    assert doc["sample"]["curve_degree"] == 3
    assert len(doc["sample"]["points"]) == 3


def test_cohomology_single(tmp_path):
    doc = run_json(tmp_path, "cohomology", "--m", "3", "--n", "8")
    assert doc["tables"]["omega"][0] == 86
    for block in doc["agreement"].values():
        assert block["match"] and block["max_width"] == 0
    assert doc["ledger"]["delta"] == [3, 3]


def test_cohomology_grid_json_and_csv(tmp_path):
    doc = run_json(tmp_path, "cohomology", "--grid")
    assert len(doc["rows"]) == 45
    code, raw = run(tmp_path, "cohomology", "--grid", "--csv")
    assert code == 0
    lines = raw.decode().splitlines()
    assert len(lines) == 46
    assert lines[0].startswith("m,n,structure_match")
    assert lines[1] == "3,5,true,true,true,0,21,21,21,0,0,0,21,true,true,false"


def test_ledger_command(tmp_path):
    doc = run_json(tmp_path, "ledger", "--m", "3", "--n", "9")
    assert doc["ledger"]["delta"] == [27, 27]
    assert doc["ledger"]["identity_ok"] is True


def test_usage_errors_exit_two(tmp_path, capsys):
    assert main(["cohomology", "--m", "2", "--n", "5"]) == 2
    assert "usage error" in capsys.readouterr().err
    assert main(["random", "--m", "3", "--n", "7"]) == 2  # no seed
    assert main(["cohomology", "--m", "3", "--n", "6", "--csv"]) == 2  # csv without grid
    bad = tmp_path / "bad.json"
    bad.write_text("{\"alphabet\": \"Y\"}")
    assert main(["correspond", "from-matrix", "--in", str(bad)]) == 2
    capsys.readouterr()


def test_unknown_command_exits_two():
    with pytest.raises(SystemExit) as excinfo:
        main(["wobble"])
    assert excinfo.value.code == 2


def test_genericity_failure_exits_three(tmp_path, capsys):
    pencil_file = tmp_path / "pointless.json"
    pencil_file.write_text(json.dumps(poly_matrix_to_json(norm_form_pencil(), "skew-linear")))
    code = main(["sample", "--m", "3", "--n", "6", "--in", str(pencil_file)])
    assert code == 3
    err = capsys.readouterr().err
    assert "NoPointsFound" in err
    assert "retry with a different prime or seed" in err


def test_internal_error_exits_four(tmp_path, capsys, monkeypatch):
    import skewlab.cli as cli_module

    def boom(m, n):
        raise InternalError("synthetic failure")

    monkeypatch.setattr(cli_module, "dimension_ledger", boom)
    assert main(["ledger", "--m", "3", "--n", "7"]) == 4
    assert "internal error" in capsys.readouterr().err
