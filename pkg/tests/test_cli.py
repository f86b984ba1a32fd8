from __future__ import annotations

import json

import pytest

from gcl import cli
from gcl.verify.report import Report, body_of, digest


@pytest.fixture
def k2(tmp_path):
    path = tmp_path / "k2.txt"
    path.write_text("1 2\n")
    return path


def run(capsys, *argv):
    rc = cli.main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_avatars_of_an_edge(capsys, k2):
    rc, out, _ = run(capsys, "avatars", str(k2))
    doc = json.loads(out)
    assert rc == 0 and doc["schema"] == 1 and doc["command"] == "avatars"
    assert doc["betti"]["box"] == "(1)" and doc["betti"]["suspended"] == "(0,1)"
    assert doc["checksum"] == digest(body_of(doc))


def test_ind_cycle_with_fixed_set(capsys):
    rc, out, _ = run(capsys, "ind", "--cycle", "11", "--fixed")
    doc = json.loads(out)
    assert rc == 0 and doc["betti"] == "(0,0,0,1)" and doc["fixed_betti"] == "(0,1)"


def test_kneser_and_hom(capsys, tmp_path, k2):
    rc, out, _ = run(capsys, "kneser", "--n", "4", "--k", "2", "--complex", "box")
    assert rc == 0 and json.loads(out)["betti"] == "(5)"
    rc, out, _ = run(capsys, "kneser", "--n", "3", "--k", "2", "--complex", "chain")
    assert rc == 0 and "note" in json.loads(out)
    k3 = tmp_path / "k3.txt"
    k3.write_text("1 2\n2 3\n1 3\n")
    rc, out, _ = run(capsys, "hom", "--g", str(k2), "--h", str(k3))
    assert rc == 0 and json.loads(out)["betti"] == "(0,1)"


def test_csorba_and_betti_files(capsys, tmp_path):
    square = {"vertices": ["1", "2", "3", "4"],
              "facets": [["1", "2"], ["2", "3"], ["3", "4"], ["4", "1"]],
              "involution": {"1": "3", "2": "4"}}
    path = tmp_path / "square.json"
    path.write_text(json.dumps(square))
    rc, out, _ = run(capsys, "csorba", "--complex", str(path), "--restarts", "4")
    assert rc == 0 and json.loads(out)["passed"]
    rc, out, _ = run(capsys, "betti", str(path))
    assert rc == 0 and json.loads(out)["betti"] == "(0,1)"


def test_fixed_vertex_is_a_usage_error(capsys, tmp_path):
    doc = {"vertices": ["a", "b", "c"], "facets": [["a", "b"], ["b", "c"]],
           "involution": {"a": "c"}}
    path = tmp_path / "fixed.json"
    path.write_text(json.dumps(doc))
    rc, _, err = run(capsys, "csorba", "--complex", str(path))
    assert rc == 2 and "NotFree" in err


def test_verify_writes_report(capsys, tmp_path):
    out = tmp_path / "r.json"
    rc, _, _ = run(capsys, "verify", "--suite", "ind", "--out", str(out), "--jobs", "1")
    doc = json.loads(out.read_text())
    assert rc == 0 and doc["suite"] == "ind" and "wall_time" in doc
    assert doc["checksum"] == digest(body_of(doc))


def test_failed_check_exits_one(capsys, monkeypatch):
    def failing(name, params=None, seed=42, **kw):
        return Report(name, {}, seed, [{"instance": "x", "seed": 0, "passed": False}])
    monkeypatch.setattr(cli, "run_suite", failing)
    rc, _, _ = run(capsys, "verify", "--suite", "ind", "--jobs", "1")
    assert rc == 1


@pytest.mark.parametrize("argv", [
    [],
    ["verify", "--suite", "nope"],
    ["verify", "--suite", "avatars", "--max-vertices", "9"],
    ["avatars", "/no/such/file"],
    ["ind", "--cycle", "40"],
])
def test_usage_errors_exit_two(capsys, argv):
    rc, _, _ = run(capsys, *argv)
    assert rc == 2
