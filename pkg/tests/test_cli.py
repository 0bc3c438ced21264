from __future__ import annotations

import json

import pytest

from graphvalues.cli import main
from graphvalues.graph import WeightedDigraph, to_dimacs


@pytest.fixture
def gadget_file(tmp_path, two_gadget):
    p = tmp_path / "gadget.gr"
    p.write_text(to_dimacs(two_gadget))
    return str(p)


@pytest.fixture
def energy_file(tmp_path, five_chain):
    # dot keeps node names, so --decide can address nodes by label
    neg = five_chain.negated()
    stmts = "".join(
        f"  {neg.labels[e.src]} -> {neg.labels[e.dst]} [label={e.wt}];\n"
        for e in neg.edges
    )
    p = tmp_path / "chain.dot"
    p.write_text("digraph {\n" + stmts + "}\n")
    return str(p)


@pytest.fixture
def ratio_file(tmp_path, ratio_pair):
    p = tmp_path / "pair.gr"
    p.write_text(to_dimacs(ratio_pair))
    return str(p)


def test_mean_values_tsv(gadget_file, capsys):
    assert main(["mean", gadget_file]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["1\t-1/1", "2\t-1/1", "3\t-1/1"]


def test_mean_values_json(gadget_file, capsys):
    assert main(["mean", gadget_file, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == 1
    assert doc["problem"] == "mean"
    assert doc["values"] == {"1": "-1/1", "2": "-1/1", "3": "-1/1"}


def test_mean_algo_agreement(gadget_file, capsys):
    outs = []
    for algo in ("tw", "karp", "oracle"):
        assert main(["mean", gadget_file, "--algo", algo]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1] == outs[2]


def test_mean_decide_exit_codes(gadget_file, capsys):
    assert main(["mean", gadget_file, "--decide", "-1"]) == 0
    assert capsys.readouterr().out.strip() == "yes"
    assert main(["mean", gadget_file, "--decide=-1/2"]) == 3  # '=' guards the leading dash
    assert capsys.readouterr().out.strip() == "no"
    assert main(["mean", gadget_file, "--decide", "-1", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["answer"] is True and doc["decide"] == "-1/1"


def test_mean_approx(gadget_file, capsys):
    assert main(["mean", gadget_file, "--approx", "1/10"]) == 0
    star, text = capsys.readouterr().out.strip().split("\t")
    assert star == "*"
    num, den = text.split("/")
    mu = int(num) / int(den)
    assert abs(mu - (-1.0)) <= 0.1


def test_ratio_values(ratio_file, capsys):
    assert main(["ratio", ratio_file]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["1\t3/2", "2\t3/2"]


def test_ratio_decide(ratio_file, capsys):
    assert main(["ratio", ratio_file, "--decide", "3/2"]) == 0
    assert main(["ratio", ratio_file, "--decide", "2"]) == 3
    capsys.readouterr()


def test_energy_values_all_algos(energy_file, capsys):
    for algo in ("tw", "general", "oracle"):
        assert main(["energy", energy_file, "--algo", algo]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        assert out == ["u\t0", "v\t2", "w\t3", "x\t0", "y\t1"]


def test_energy_decide(energy_file, capsys):
    assert main(["energy", energy_file, "--decide", "w", "3"]) == 0
    assert capsys.readouterr().out.strip() == "yes"
    assert main(["energy", energy_file, "--decide", "w", "2"]) == 3
    assert capsys.readouterr().out.strip() == "no"


def test_energy_inf_rendering(tmp_path, capsys):
    g = WeightedDigraph.from_edges(2, [(0, 1, -5)])
    p = tmp_path / "sink.gr"
    p.write_text(to_dimacs(g))
    assert main(["energy", str(p)]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["1\tinf", "2\tinf"]


def test_mincycle_output(gadget_file, capsys):
    assert main(["mincycle", gadget_file]) == 0
    out = capsys.readouterr().out.strip()
    value, kind = out.split("\t")
    assert kind in ("exact", "lower-bound")
    assert int(value) <= -2


def test_mincycle_exact_on_triangle(tmp_path, triangle, capsys):
    p = tmp_path / "tri.gr"
    p.write_text(to_dimacs(triangle))
    assert main(["mincycle", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "6\texact"


def test_treedec_text_and_validate(gadget_file, capsys):
    assert main(["treedec", gadget_file, "--validate"]) == 0
    out = capsys.readouterr().out
    lines = [l for l in out.strip().splitlines() if l]
    assert all(l.startswith("b ") for l in lines)
    roots = [l for l in lines if l.split()[2] == "-"]
    assert len(roots) == 1


def test_stats_go_to_stderr(gadget_file, capsys):
    assert main(["mean", gadget_file, "--stats"]) == 0
    err = capsys.readouterr().err
    assert "width=" in err and "decisions=" in err


def test_gen_is_deterministic(capsys):
    assert main(["gen", "ktree", "30", "2", "--seed", "9"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "ktree", "30", "2", "--seed", "9"]) == 0
    assert capsys.readouterr().out == first
    assert main(["gen", "ktree", "30", "2", "--seed", "10"]) == 0
    assert capsys.readouterr().out != first
    assert first.startswith("p mrc 30 ")


def test_gen_to_file_then_solve(tmp_path, capsys):
    out = tmp_path / "g.gr"
    assert main(["gen", "sparse-random", "12", "--seed", "4", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["energy", str(out)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 12


def test_gen_rejects_bad_k(capsys):
    assert main(["gen", "ktree", "10", "7"]) == 1
    assert "k" in capsys.readouterr().err


def test_gen_cfg_like(capsys):
    assert main(["gen", "cfg-like", "25", "--seed", "2"]) == 0
    assert capsys.readouterr().out.startswith("p mrc 25 ")


def test_missing_file_is_input_error(capsys):
    assert main(["mean", "/no/such/file.gr"]) == 1
    assert "error" in capsys.readouterr().err


def test_malformed_file_is_input_error(tmp_path, capsys):
    p = tmp_path / "bad.gr"
    p.write_text("p mrc 2 1\na 1 9 0\n")
    assert main(["mean", str(p)]) == 1
    assert "error" in capsys.readouterr().err


def test_acyclic_per_node_values_are_inf(tmp_path, capsys):
    p = tmp_path / "dag.gr"
    p.write_text("p mrc 2 1\na 1 2 5\n")
    assert main(["mean", str(p)]) == 0
    assert capsys.readouterr().out.strip().splitlines() == ["1\tinf", "2\tinf"]
    # but a decision on an acyclic graph has no value to compare against
    assert main(["mean", str(p), "--decide", "0"]) == 1
    capsys.readouterr()


def test_unknown_label_is_input_error(energy_file, capsys):
    assert main(["energy", energy_file, "--decide", "qq", "1"]) == 1
    capsys.readouterr()


def test_usage_error_maps_to_input_exit(capsys):
    assert main(["mean"]) == 1  # missing file argument
    assert main(["nope"]) == 1
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_bench_runs_and_reports(tmp_path, capsys):
    for seed in (1, 2):
        assert main(["gen", "ktree", "14", "2", "--seed", str(seed),
                     "--out", str(tmp_path / f"g{seed}.gr")]) == 0
    capsys.readouterr()
    assert main(["bench", str(tmp_path), "--problem", "mean", "--algos", "tw,karp,oracle"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0].split("\t")[:4] == ["file", "n", "m", "width"]
    assert len(out) == 1 + 2 * 3  # two files, three algorithms, one rep


def test_bench_energy_json(tmp_path, capsys):
    assert main(["gen", "sparse-random", "10", "--seed", "3",
                 "--out", str(tmp_path / "g.gr")]) == 0
    capsys.readouterr()
    assert main(["bench", str(tmp_path), "--problem", "energy",
                 "--algos", "tw,general,oracle", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["schema"] == 1
    assert len(doc["rows"]) == 3
    assert {r["algo"] for r in doc["rows"]} == {"tw", "general", "oracle"}


def test_selftest_smoke(capsys):
    assert main(["selftest", "--count", "4", "--seed", "1"]) == 0
    assert "selftest passed" in capsys.readouterr().out
