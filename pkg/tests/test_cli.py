import json

import pytest

from recongraph.abcfamily import AbcSpec, reflection_hypomorphism
from recongraph.cli import main
from recongraph.io import dumps_graph, write_graph6


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.fixture
def self_pair(tmp_path):
    A, Ap, hy = reflection_hypomorphism(AbcSpec(6, {1}, {1}))
    g1 = tmp_path / "a.json"
    g2 = tmp_path / "ap.g6"
    h = tmp_path / "hy.json"
    g1.write_text(dumps_graph(A))
    g2.write_text(write_graph6(Ap) + "\n")
    h.write_text(json.dumps({"hypomorphism": hy.to_dict()}))
    return str(g1), str(g2), str(h)


def test_graph_show_and_dot(capsys, self_pair, tmp_path):
    g1, g2, _ = self_pair
    code, out, err = run(capsys, "graph", "show", g1)
    assert code == 0 and json.loads(out)["degrees"] == [1, 2, 2, 2, 2, 1]
    assert "6 vertices, 5 edges" in err
    target = tmp_path / "g.dot"
    assert run(capsys, "graph", "dot", g2, "--out", str(target))[0] == 0
    assert target.read_text().startswith("graph ")


def test_deck(capsys, self_pair):
    code, out, _ = run(capsys, "deck", self_pair[0])
    data = json.loads(out)
    assert code == 0 and data["size"] == 6 and data["classes"] == 3


def test_hypo_search(capsys, self_pair):
    g1, g2, _ = self_pair
    code, out, err = run(capsys, "hypo", "search", g1, g2, "--limit", "3")
    data = json.loads(out)
    assert code == 0 and data["returned"] == 3 and data["total"] > 3
    assert "truncated" in err


def test_assoc_build_and_classify(capsys, self_pair, tmp_path):
    g1, g2, h = self_pair
    dot = tmp_path / "d.dot"
    code, out, _ = run(capsys, "assoc", "build", g1, g2, "--hypo", h, "--dot", str(dot), "--overlay")
    assert code == 0 and "normal" in json.loads(out)
    assert dot.read_text().startswith("digraph")
    code, out, err = run(capsys, "assoc", "classify", g1, g2, "--hypo", h, "--cycle", "0,5")
    assert code == 0 and json.loads(out)["kind"] == "ALPHA"
    code, out, _ = run(capsys, "assoc", "classify", g1, g2, "--hypo", h, "--max-k", "3")
    assert code == 0 and json.loads(out)["clauses"]["I"]


def test_structf_extract(capsys, self_pair):
    g1, g2, h = self_pair
    code, out, err = run(capsys, "structf", "extract", g1, g2, "--hypo", h, "--v1", "0", "--v2", "5")
    assert code == 0 and json.loads(out)["ok"] and "all items pass" in err
    assert run(capsys, "structf", "extract", g1, g2, "--hypo", h, "--v1", "1", "--v2", "1")[0] == 2


def test_abc_build_check_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "abc", "build", "-n", "8", "-B", "3", "-C", "1")
    assert code == 0 and json.loads(out)["name"] == "A(8;{3},{1})"
    code, out, _ = run(capsys, "abc", "build", "-n", "7", "-B", "1,5", "-C", "1,4", "--bar", "5")
    assert json.loads(out)["labels"] == ["a1", "a2", "a3", "a4", "a6"]
    code, out, _ = run(capsys, "abc", "check", "-n", "8", "-B", "1,3,4", "-C", "1,5")
    assert code == 0 and json.loads(out)["ok"]
    target = tmp_path / "sweep.json"
    code, _, err = run(capsys, "abc", "sweep", "--n-values", "3..5", "--no-timing", "--out", str(target))
    assert code == 0 and "violations" in err
    assert json.loads(target.read_text())["counts"]["specs"] == 336


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "--max-n", "4", "--no-timing")
    data = json.loads(out)
    assert code == 0 and data["ok"] and "timing" not in data
    assert "hypomorphisms checked" in err


def test_fixture_run(capsys):
    code, out, err = run(capsys, "fixture", "run", "all")
    assert code == 0 and all(r["ok"] for r in json.loads(out))
    assert "ex7.1: pass" in err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["graph", "show", "/nonexistent/file.json"],
        ["abc", "build"],
        ["abc", "build", "-n", "5", "-B", "7"],
        ["abc", "build", "-n", "5", "-B", "x"],
        ["abc", "sweep", "--n-values", "12"],
        ["verify", "--max-n", "9"],
        ["fixture", "run", "nope"],
        ["hypo", "search", "only-one"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_bad_hypomorphism_file(capsys, self_pair, tmp_path):
    g1, g2, _ = self_pair
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "assoc", "build", g1, g2, "--hypo", str(bad))[0] == 2
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"f": [1, 0, 2, 3, 4, 5], "phi": {str(v): [u for u in range(6) if u != v] for v in range(6)}}))
    assert run(capsys, "assoc", "build", g1, g2, "--hypo", str(wrong))[0] == 2


def test_violation_exits_1(capsys, tmp_path):
    # the 5-vertex self-pair whose decomposition fails one item
    g = tmp_path / "g.g6"
    g.write_text("D]{\n")
    h = tmp_path / "h.json"
    h.write_text(json.dumps({
        "f": [0, 2, 1, 3, 4],
        "phi": {"0": [1, 2, 3, 4], "1": [3, 0, 1, 4], "2": [2, 3, 4, 0], "3": [0, 1, 4, 2], "4": [0, 1, 2, 3]},
    }))
    code, out, err = run(capsys, "structf", "extract", str(g), str(g), "--hypo", str(h), "--v1", "2", "--v2", "3")
    assert code == 1 and json.loads(out)["checks"]["6"]["ok"] is False
    assert "failed ['6']" in err
