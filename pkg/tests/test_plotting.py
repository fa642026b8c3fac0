from __future__ import annotations

from heckebranch import plotting
from heckebranch.branching import basic_set, split
from heckebranch.bitableaux import Bipartition


def _png(path):
    return path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_branch_figure(tmp_path):
    rpt = split(Bipartition((1,), (1,)), "flat").to_json()
    paths = plotting.plot_report("branch", rpt, tmp_path / "r.json")
    assert paths == [tmp_path / "r_blocks.png"] and _png(paths[0])


def test_basic_set_figure(tmp_path):
    r = basic_set(3, "natural")
    r = {**r, "irreducibles": [{"family": x.family, "degree": x.degree} for x in r["irreducibles"]]}
    (p,) = plotting.plot_report("basic-set", r, tmp_path / "b.csv")
    assert p.name == "b_degrees.png" and _png(p)


def test_suite_figure(tmp_path):
    rows = [{"criterion": 1, "status": "pass"}, {"criterion": 2, "status": "fail"}]
    (p,) = plotting.plot_report("suite", {"criteria": rows}, tmp_path / "s.json")
    assert _png(p)


def test_unknown_verb_has_no_figure(tmp_path):
    assert plotting.plot_report("bipartitions", {}, tmp_path / "x.json") == []
