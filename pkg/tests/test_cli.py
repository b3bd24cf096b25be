import json

import pytest

from tcspace.cli import main


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture()
def path3(tmp_path):
    return _write(tmp_path / "space.json", {
        "points": ["A", "B", "C"],
        "dist": [["0", "1", "3"], ["1", "0", "2"], ["3", "2", "0"]],
        "base": "A",
    })


@pytest.fixture()
def c4(tmp_path):
    return _write(tmp_path / "c4.json", {
        "vertices": ["c0", "c1", "c2", "c3"],
        "edges": [{"u": "c0", "v": "c1", "w": "1"},
                  {"u": "c1", "v": "c2", "w": "1"},
                  {"u": "c2", "v": "c3", "w": "1"},
                  {"u": "c3", "v": "c0", "w": "1"}],
    })


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_ok(capsys, path3):
    code, out, _ = _run(capsys, ["validate", "--space", path3])
    assert code == 0
    assert json.loads(out) == {"valid": True, "points": 3}


def test_validate_reports_violations(capsys, tmp_path):
    bad = _write(tmp_path / "bad.json", {
        "points": ["A", "B", "C"],
        "dist": [["0", "1", "5"], ["1", "0", "1"], ["5", "1", "0"]],
    })
    code, _, err = _run(capsys, ["validate", "--space", bad])
    assert code == 1
    payload = json.loads(err)
    assert payload["error"] == "TriangleViolation"
    assert payload["points"] == ["A", "B", "C"]


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as err:
        main(["norm", "--space"])
    assert err.value.code == 2


def test_norm_example(capsys, path3, tmp_path):
    problem = _write(tmp_path / "f.json", {"f": {"A": "2", "B": "-1", "C": "-1"}})
    code, out, _ = _run(capsys, ["norm", "--space", path3, "--problem", problem])
    assert code == 0
    assert json.loads(out) == {"tc_norm": "4"}


def test_roadmap_and_round_trip(capsys, path3, tmp_path):
    problem = _write(tmp_path / "f.json", {"f": {"A": "2", "B": "-1", "C": "-1"}})
    code, out, _ = _run(capsys, ["roadmap", "--space", path3,
                                 "--problem", problem])
    assert code == 0
    obj = json.loads(out)
    assert obj["optimal"] is True
    assert obj["cost"] == "4"
    assert {"u": "A", "v": "B", "p": "2"} in obj["edges"]


def test_maximal_roadmap_flag(capsys, c4, tmp_path):
    problem = _write(tmp_path / "f.json", {"f": {"c0": "1", "c2": "-1"}})
    code, out, _ = _run(capsys, ["roadmap", "--space", c4,
                                 "--problem", problem, "--maximal"])
    assert code == 0
    obj = json.loads(out)
    assert len(obj["edges"]) == 4
    assert obj["optimal"] is True


def test_canon_round_trips_and_dot(capsys, c4, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = _run(capsys, ["canon", "--space", c4, "--dot", str(dot)])
    assert code == 0
    graph_obj = json.loads(out)
    assert len(graph_obj["edges"]) == 4
    assert dot.read_text().startswith("digraph")
    # output is valid input again
    again = _write(tmp_path / "again.json", graph_obj)
    code2, out2, _ = _run(capsys, ["canon", "--space", again])
    assert code2 == 0
    assert json.loads(out2) == graph_obj


def test_basis(capsys, c4):
    code, out, _ = _run(capsys, ["basis", "--space", c4])
    assert code == 0
    obj = json.loads(out)
    assert obj["count"] == 1
    assert len(obj["cycles"][0]) == 4


def test_dual_with_uniqueness(capsys, c4, tmp_path):
    problem = _write(tmp_path / "f.json", {"f": {"c0": "1", "c1": "-1"}})
    code, out, _ = _run(capsys, ["dual", "--space", c4,
                                 "--problem", problem, "--unique"])
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == "1"
    assert obj["unique"] is False
    assert "witness" in obj


def test_downhill_and_realizable(capsys, path3, tmp_path):
    lip = _write(tmp_path / "l.json",
                 {"l": {"A": "0", "B": "-1", "C": "-3"}, "base": "A"})
    code, out, _ = _run(capsys, ["downhill", "--space", path3,
                                 "--lipschitz", lip])
    assert code == 0
    arcs = json.loads(out)["edges"]
    assert arcs == [{"u": "A", "v": "B"}, {"u": "B", "v": "C"}]

    sub = _write(tmp_path / "h.json", {"edges": [{"u": "A", "v": "B"}]})
    code, out, _ = _run(capsys, ["realizable", "--space", path3,
                                 "--subgraph", sub])
    assert code == 0
    obj = json.loads(out)
    assert obj["realizable"] is True and obj["l"]["B"] == "-1"


def test_disjoint_pair_and_candidate(capsys, c4, tmp_path):
    f = _write(tmp_path / "f.json", {"f": {"c0": "1", "c1": "-1"}})
    g = _write(tmp_path / "g.json", {"f": {"c2": "1", "c3": "-1"}})
    code, out, _ = _run(capsys, ["disjoint", "--space", c4,
                                 "--problem", f, "--other", g])
    assert code == 0
    assert json.loads(out) == {"strongly_disjoint": True}

    cand = _write(tmp_path / "cand.json", [
        {"f": {"c0": "1", "c2": "-1"}},
        {"f": {"c1": "1", "c3": "-1"}},
        {"f": {"c0": "1", "c1": "-1", "c2": "1", "c3": "-1"}},
    ])
    code, out, _ = _run(capsys, ["disjoint", "--space", c4,
                                 "--candidate", cand])
    assert code == 0
    obj = json.loads(out)
    assert obj["ok"] is True and obj["pairs_checked"] == 24


def test_certify_plain_and_peeled(capsys, tmp_path):
    code, out, _ = _run(capsys, ["gen", "grid", "--n", "4",
                                 "--out", str(tmp_path / "grid.json")])
    assert code == 0
    code, out, _ = _run(capsys, ["certify", "--space",
                                 str(tmp_path / "grid.json"), "--k", "5"])
    assert code == 0
    assert json.loads(out)["verdict"] == "ruled_out"

    code, _, _ = _run(capsys, [
        "gen", "diamond", "--n", "2",
        "--out", str(tmp_path / "d2.json"),
        "--descriptor-out", str(tmp_path / "d2.desc.json")])
    assert code == 0
    code, out, _ = _run(capsys, [
        "certify", "--space", str(tmp_path / "d2.json"), "--k", "4",
        "--peel", str(tmp_path / "d2.desc.json")])
    assert code == 0
    obj = json.loads(out)
    assert obj["verdict"] == "ruled_out"
    assert obj["peeling"] == ["D_2", "D_1"]


def test_gen_diamond_emits_space_json(capsys):
    code, out, _ = _run(capsys, ["gen", "diamond", "--n", "2"])
    assert code == 0
    obj = json.loads(out)
    assert len(obj["points"]) == 12


def test_gen_recursive_k2n(capsys, tmp_path):
    code, out, _ = _run(capsys, [
        "gen", "recursive", "--base", "k2n", "--legs", "3", "--n", "1",
        "--descriptor-out", str(tmp_path / "desc.json")])
    assert code == 0
    assert len(json.loads(out)["points"]) == 5
    desc = json.loads((tmp_path / "desc.json").read_text())
    assert desc["params"]["delta"] == 3


def test_max_points_cap(capsys, monkeypatch, c4):
    monkeypatch.setenv("TCSPACE_MAX_POINTS", "3")
    code, _, err = _run(capsys, ["canon", "--space", c4])
    assert code == 1
    assert json.loads(err)["error"] == "InvalidInput"
    monkeypatch.setenv("TCSPACE_MAX_POINTS", "100")
    code, _, _ = _run(capsys, ["canon", "--space", c4])
    assert code == 0


def test_oracle_check_single(capsys, path3, tmp_path):
    problem = _write(tmp_path / "f.json", {"f": {"A": "1", "C": "-1"}})
    code, out, _ = _run(capsys, ["oracle-check", "--space", path3,
                                 "--problem", problem])
    assert code == 0
    obj = json.loads(out)
    assert obj["ok"] is True and obj["solver"] == obj["oracle"] == "3"


def test_oracle_check_batch_is_deterministic(capsys):
    code1, out1, _ = _run(capsys, ["oracle-check", "--random", "12",
                                   "--seed", "7"])
    code2, out2, _ = _run(capsys, ["oracle-check", "--random", "12",
                                   "--seed", "7"])
    assert code1 == code2 == 0
    assert out1 == out2
    obj = json.loads(out1)
    assert obj["checked"] == 12 and obj["mismatches"] == 0


def test_oracle_check_requires_seed(capsys):
    code, _, err = _run(capsys, ["oracle-check", "--random", "3"])
    assert code == 1
    assert json.loads(err)["error"] == "InvalidInput"


def test_oracle_check_parallel_matches_serial(capsys):
    code1, out1, _ = _run(capsys, ["oracle-check", "--random", "8",
                                   "--seed", "3", "--jobs", "2"])
    code2, out2, _ = _run(capsys, ["oracle-check", "--random", "8",
                                   "--seed", "3"])
    assert code1 == code2 == 0
    assert out1 == out2
