from __future__ import annotations

import io
import json
import sys

import pytest

from semireg import constructions as C
from semireg.cli import build_parser, run
from semireg.graphs import Graph
from semireg.groups import PermutationGroup
from semireg.split_merge import s_partition, split_px_groups


def _out(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_construct_spx(capsys):
    code, cap = _out(capsys, ["construct", "spx", "--r", "5", "--s", "2"])
    assert code == 0
    assert cap.out.splitlines()[0] == "40 60"
    assert Graph.from_text(cap.out).n == 40


def test_construct_families(capsys, tmp_path):
    for argv, n in [
        (["construct", "px", "--r", "4", "--s", "2"], 16),
        (["construct", "ladder-circ", "--n", "5"], 10),
        (["construct", "ladder-mob", "--n", "2"], 4),
    ]:
        code, cap = _out(capsys, argv)
        assert code == 0 and Graph.from_text(cap.out).n == n
    code, cap = _out(capsys, ["construct", "px", "--r", "3", "--s", "1", "--directed"])
    assert code == 0 and cap.out.splitlines()[0] == "6 12"
    labels = tmp_path / "labels.json"
    code, cap = _out(capsys, ["construct", "px", "--r", "3", "--s", "1", "--labels-out", str(labels)])
    assert json.loads(labels.read_text())["0"] == [0, "0"]


def test_construct_w_group_and_cayley(capsys, tmp_path):
    code, cap = _out(capsys, ["construct", "w-group", "--ell", "1"])
    assert code == 0
    assert PermutationGroup.from_json(cap.out).order() == 160
    grp = tmp_path / "z6.json"
    grp.write_text(PermutationGroup(6, [[1, 2, 3, 4, 5, 0]]).to_json())
    code, cap = _out(capsys, ["construct", "cayley", "--group", str(grp), "--element", "(0 1 2 3 4 5)",
                              "--element", "(0 5 4 3 2 1)", "--element", "(0 3)(1 4)(2 5)"])
    assert code == 0
    g = Graph.from_text(cap.out)
    assert g.n == 6 and g.is_cubic()


def test_aut_and_semireg(capsys, tmp_path):
    path = tmp_path / "petersen.txt"
    path.write_text(C.petersen().to_text())
    code, cap = _out(capsys, ["aut", str(path), "--json"])
    assert code == 0 and json.loads(cap.out)["order"] == 120
    code, cap = _out(capsys, ["semireg", str(path), "--max-order"])
    assert code == 0 and cap.out.strip() == "5"
    code, cap = _out(capsys, ["semireg", str(path), "--spectrum", "--json"])
    assert json.loads(cap.out)["spectrum"] == [1, 2, 3, 4, 5, 6]


def test_stdin_graph(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(C.mobius_ladder(3).to_text()))
    code, cap = _out(capsys, ["aut", "-"])
    assert code == 0 and cap.out.splitlines()[0] == "order 72"


def test_analyze_json(capsys, tmp_path):
    path = tmp_path / "k4.txt"
    path.write_text(C.complete_graph(4).to_text())
    code, cap = _out(capsys, ["analyze", str(path), "--json"])
    data = json.loads(cap.out)
    assert code == 0
    assert data["exceptional_subgroup_orders"] == [4, 4, 8, 12, 24]
    assert data["aut_order"] == 24 and data["arc_transitive"] is True


def test_quotient(capsys, tmp_path):
    g = C.circular_ladder(5)
    gp = tmp_path / "g.txt"
    gp.write_text(g.to_text())
    grp = tmp_path / "swap.json"
    grp.write_text(PermutationGroup(10, [[v ^ 1 for v in range(10)]]).to_json())
    code, cap = _out(capsys, ["quotient", str(gp), "--group", str(grp), "--json"])
    data = json.loads(cap.out)
    assert code == 0 and data["kind"] == "cycle" and data["cycle_length"] == 5


def test_split_then_merge(capsys, tmp_path):
    part = s_partition(4, 2)
    host = tmp_path / "host.txt"
    host.write_text(part.host.to_text())
    pfile = tmp_path / "part.json"
    pfile.write_text(part.to_json())
    code, cap = _out(capsys, ["split", str(host), "--partition", str(pfile)])
    assert code == 0
    sg = Graph.from_text(cap.out)
    assert sg.n == 32 and sg.is_cubic()
    sfile = tmp_path / "split.txt"
    sfile.write_text(sg.to_text())
    pout = tmp_path / "merged_part.json"
    code, cap = _out(capsys, ["merge", str(sfile), "--partition-out", str(pout)])
    assert code == 0
    merged = Graph.from_text(cap.out)
    assert merged.n == 16 and merged.is_regular(4)
    assert len(json.loads(pout.read_text())) == 8


def test_merge_with_group(capsys, tmp_path):
    g = split_px_groups(3, 1)
    gfile = tmp_path / "g.txt"
    gfile.write_text(g.graph.to_text())
    hfile = tmp_path / "h.json"
    hfile.write_text(g.H.to_json())
    code, cap = _out(capsys, ["merge", str(gfile), "--group", str(hfile)])
    assert code == 0 and cap.out.splitlines()[0] == "6 12"


def test_merge_not_applicable(capsys, tmp_path):
    path = tmp_path / "p.txt"
    path.write_text(C.petersen().to_text())
    code, cap = _out(capsys, ["merge", str(path)])
    assert code == 0
    assert cap.out.startswith("not applicable") and "[3]" in cap.out


def test_verify_px(capsys):
    code, cap = _out(capsys, ["verify", "px", "--r-max", "4"])
    assert code == 0
    assert "|Aut : H| = 9" in cap.out


def test_verify_json_is_thread_independent(capsys):
    code1, cap1 = _out(capsys, ["verify", "ladder", "--n-max", "7", "--json", "--threads", "1"])
    code2, cap2 = _out(capsys, ["verify", "ladder", "--n-max", "7", "--json", "--threads", "2"])
    assert code1 == code2 == 0
    assert cap1.out == cap2.out


def test_output_file(capsys, tmp_path):
    out = tmp_path / "o.txt"
    code, cap = _out(capsys, ["construct", "ladder-circ", "--n", "4", "-o", str(out)])
    assert code == 0 and cap.out == ""
    assert Graph.from_text(out.read_text()).n == 8


def test_usage_errors(capsys, tmp_path):
    assert run(["construct", "px", "--r", "2", "--s", "1"]) == 2
    assert run(["construct", "px", "--r", "4"]) == 2
    assert run(["verify", "px", "--json", "--format", "text"]) == 2
    assert run(["verify", "nothing"]) == 2
    assert run(["aut", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("3 5\n0 1\n")
    assert run(["aut", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "--r" in err or "r must" in err


def test_size_cap_exit_code(capsys, tmp_path, monkeypatch):
    path = tmp_path / "g.txt"
    path.write_text(C.circular_ladder(4).to_text())
    monkeypatch.setenv("SEMIREG_MAX_VERTICES", "5")
    assert run(["aut", str(path)]) == 3
    assert "exceeds" in capsys.readouterr().err


def test_every_subcommand_has_help():
    parser = build_parser()
    sub = next(a for a in parser._actions if a.dest == "command")
    for name, p in sub.choices.items():
        assert p.description, name
