from __future__ import annotations

import json

import pytest

from heckebranch.cli import SCHEMA, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bipartition_count(capsys):
    code, out, _ = run(["bipartitions", "--n", "4", "--count"], capsys)
    assert code == 0 and out.strip() == "20"


def test_ranks_n6(capsys):
    code, out, _ = run(["ranks", "--n", "6"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == SCHEMA
    assert doc["result"]["ranks"] == {"all": 46080, "sharp": 23040, "natural": 23040,
                                      "flat": 23040, "dagger": 11520}
    for key in ("command", "specialization", "precision_bits", "tolerance", "seed"):
        assert key in doc


def test_branch_fixed_shape(capsys):
    code, out, _ = run(["branch", "--shape", "[1|1]", "--marker", "sharp"], capsys)
    doc = json.loads(out)["result"]
    assert code == 0
    assert doc["commutant_dim"] == 2 and [b["dim"] for b in doc["blocks"]] == [1, 1]


def test_branch_moved_shape_is_irreducible(capsys):
    code, out, _ = run(["branch", "--shape", "[2|1]", "--marker", "flat"], capsys)
    assert code == 0 and json.loads(out)["result"]["commutant_dim"] == 1


def test_output_is_deterministic(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["basic-set", "--n", "3", "--marker", "flat", "--out", str(p), "--no-plots"]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


@pytest.mark.parametrize("argv", [
    ["bipartitions"],
    ["bipartitions", "--n", "0"],
    ["branch", "--shape", "[2|x]", "--marker", "sharp"],
    ["basic-set", "--n", "3", "--marker", "dagger"],
    ["ranks", "--n", "3", "--q0", "1"],
    ["ranks", "--n", "3", "--q0", "abc"],
    ["ranks", "--n", "9"],
    ["suite", "--criteria", "99"],
])
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2


def test_csv_output(capsys):
    code, out, _ = run(["bipartitions", "--n", "2", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# schema:")
    header = next(l for l in lines if not l.startswith("#"))
    assert header == "shape,dim"
    assert len([l for l in lines if not l.startswith("#")]) == 1 + 5


def test_env_output_directory(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("HECKE_BRANCH_OUT", str(tmp_path))
    code, out, _ = run(["ranks", "--n", "3"], capsys)
    assert code == 0 and out == ""
    doc = json.loads((tmp_path / "ranks.json").read_text())
    assert doc["result"]["ranks"]["all"] == 48
    assert (tmp_path / "ranks_ranks.png").exists()


def test_plots_next_to_out(tmp_path):
    out = tmp_path / "sub" / "branch.json"
    assert main(["branch", "--shape", "[2,1|1]", "--marker", "flat", "--out", str(out)]) == 0
    assert (tmp_path / "sub" / "branch_blocks.png").stat().st_size > 0


def test_rep_build(capsys):
    code, out, _ = run(["rep", "build", "--shape", "[1|1]", "--gens", "a"], capsys)
    doc = json.loads(out)["result"]
    assert code == 0 and sorted(doc["matrices"]) == ["a1", "a2"]


def test_crossed_check(capsys):
    code, out, _ = run(["crossed-check", "--n", "2", "--marker", "flat"], capsys)
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_suite_subset(capsys):
    code, out, err = run(["suite", "--criteria", "2,10"], capsys)
    assert code == 0
    assert "criterion  2 PASS" in err and "criterion 10 PASS" in err
