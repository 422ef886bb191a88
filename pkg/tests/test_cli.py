#!/usr/bin/env python3
#
# test_cli.py - tests for the analyze, simulate, sweep, gen and rerun commands

"""
test_cli.py - tests for the analyze, simulate, sweep, gen and rerun commands
"""

# import modules
#
import csv
import json
import math

# import from modules
#
from pathlib import Path

# 3rd party imports
#
import pytest

# import the tracesim python utility code
#
# Sort the import list with: sort -d -u
#
from tracesim import \
        EXIT_DATA, \
        EXIT_OK, \
        EXIT_USAGE, \
        cmd_analyze, \
        cmd_gen, \
        cmd_rerun, \
        cmd_simulate, \
        cmd_sweep, \
        main_analyze, \
        main_gen, \
        main_rerun, \
        main_simulate, \
        main_sweep, \
        read_edge_list_file


TRIANGLE = "0 1\n1 2\n0 2\n"


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def _read_csv(path):
    with open(path, encoding="utf-8", newline="") as csv_fp:
        return list(csv.reader(csv_fp))


def _read_json(path):
    with open(path, encoding="utf-8") as json_fp:
        return json.load(json_fp)


def _files(out_dir):
    return {p.name: p.read_bytes() for p in sorted(out_dir.iterdir()) if not p.name.startswith(".")}


@pytest.fixture
def ba_file(tmp_path_factory):
    """
    BA(300, 3) edge list written by cmd_gen.
    """
    path = tmp_path_factory.mktemp("graph") / "ba300.txt"
    assert cmd_gen(str(path), kind="ba", n=300, m=3, seed=17) == EXIT_OK
    return str(path)


def test_gen_triangle(tmp_path):
    out = tmp_path / "tri.txt"
    assert cmd_gen(str(out), kind="ba", n=3, m=2, seed=0) == EXIT_OK
    assert out.read_text(encoding="utf-8") == "0 1\n0 2\n1 2\n"
    manifest = _read_json(tmp_path / "tri.txt.manifest.json")
    assert manifest["command"] == "gen"
    assert manifest["parameters"] == {"output_name": "tri.txt", "kind": "BA", "n": 3, "m": 2, "seed": 0}


def test_gen_is_reproducible_and_parses_back(tmp_path):
    first = tmp_path / "a.txt"
    second = tmp_path / "b.txt"
    assert main_gen(["-l", "none", "-n", "200", "-m", "2", "--seed", "5", str(first)]) == EXIT_OK
    assert main_gen(["-l", "none", "-n", "200", "-m", "2", "--seed", "5", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()
    topology, _ = read_edge_list_file(first)
    assert topology.node_count == 200
    assert topology.edge_count == 3 + 2 * 197


def test_gen_bad_parameters_are_usage_errors(tmp_path):
    assert cmd_gen(str(tmp_path / "x.txt"), kind="ba", n=2, m=3) == EXIT_USAGE
    assert cmd_gen(str(tmp_path / "x.txt"), kind="glp", n=20) == EXIT_USAGE


def test_simulate_triangle(tmp_path):
    graph = _write(tmp_path / "tri.txt", TRIANGLE)
    out = tmp_path / "out"
    assert cmd_simulate(graph, str(out), model="uspm", sources="0", destinations="2") == EXIT_OK
    assert (out / "routes.txt").read_text(encoding="utf-8") == "0 2\n"
    assert _read_csv(out / "length_distribution.csv") == [["h", "probability"], ["1", "1.0"]]
    summary = _read_json(out / "summary.json")
    assert summary["mean_route_length"] == 1.0
    assert summary["unreachable_count"] == 0
    for name in ("hop_profile.csv", "hop_entropy.csv", "manifest.json"):
        assert (out / name).exists()
    assert _read_csv(out / "hop_profile.csv")[0] == ["h", "k", "p_h_k"]
    assert _read_csv(out / "hop_entropy.csv")[0] == ["h", "entropy"]


def test_simulate_lim_zero_matches_uspm(tmp_path, ba_file):
    uspm = tmp_path / "uspm"
    lim = tmp_path / "lim"
    common = {"sources": "random:15", "destinations": "random:15", "seed": 2}
    assert cmd_simulate(ba_file, str(uspm), model="uspm", **common) == EXIT_OK
    assert cmd_simulate(ba_file, str(lim), model="lim", alpha=0.0, **common) == EXIT_OK
    assert (uspm / "length_distribution.csv").read_bytes() == (lim / "length_distribution.csv").read_bytes()


def test_simulate_pfm_is_reproducible(tmp_path, ba_file):
    for name in ("one", "two"):
        assert cmd_simulate(ba_file, str(tmp_path / name), model="pfm", alpha=1.0, sources="random:5",
                            destinations="random:5", reps=3, seed=11) == EXIT_OK
    assert (tmp_path / "one" / "routes.txt").read_bytes() == (tmp_path / "two" / "routes.txt").read_bytes()
    summary = _read_json(tmp_path / "one" / "summary.json")
    assert summary["repetitions"] == 3
    assert summary["pareto_max"] == 300.0


def test_simulate_output_does_not_depend_on_threads(tmp_path, ba_file):
    for name, threads in (("t1", 1), ("t4", 4)):
        assert cmd_simulate(ba_file, str(tmp_path / name), model="lim", alpha=1.0, sources="random:10",
                            destinations="all", seed=3, threads=threads) == EXIT_OK
    assert _files(tmp_path / "t1") == _files(tmp_path / "t4")


def test_simulate_usage_errors(tmp_path, ba_file):
    out = str(tmp_path / "out")
    assert cmd_simulate(ba_file, out, model="lim", alpha=9.0) == EXIT_USAGE
    assert cmd_simulate(ba_file, out, model="rsp") == EXIT_USAGE
    assert cmd_simulate(ba_file, out, model="uspm", sources="random:abc") == EXIT_USAGE
    assert cmd_simulate(ba_file, out, model="uspm", sources="random:301") == EXIT_USAGE
    assert cmd_simulate(ba_file, out, model="uspm", destinations="0,no-such-node") == EXIT_USAGE
    assert cmd_simulate(ba_file, out, model="uspm", reps=0) == EXIT_USAGE


def test_simulate_data_errors(tmp_path):
    out = str(tmp_path / "out")
    assert cmd_simulate(str(tmp_path / "missing.txt"), out, model="uspm") == EXIT_DATA
    graph = _write(tmp_path / "split.txt", "a b\nc d\n")
    assert cmd_simulate(graph, out, model="uspm", sources="a", destinations="d") == EXIT_DATA


def test_main_simulate_exit_codes(tmp_path):
    graph = _write(tmp_path / "tri.txt", TRIANGLE)
    out = str(tmp_path / "out")
    assert main_simulate(["-l", "none", "-m", "ndm", "-o", out, graph]) == EXIT_OK
    with pytest.raises(SystemExit) as exit_info:
        main_simulate(["-l", "none", "-m", "bogus", "-o", out, graph])
    assert exit_info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exit_info:
        main_simulate(["-l", "none", "-m", "uspm", "--threads", "0", "-o", out, graph])
    assert exit_info.value.code == EXIT_USAGE


def test_analyze_toy_file(tmp_path, capsys):
    traces = _write(tmp_path / "toy.txt", "# toy\na b c\na b\n")
    out = tmp_path / "out"
    assert cmd_analyze(traces, str(out)) == EXIT_OK
    assert _read_csv(out / "length_distribution.csv") == [["h", "probability"], ["1", "0.5"], ["2", "0.5"]]
    metrics = _read_json(out / "metrics.json")
    assert metrics["mean_route_length"] == 1.5
    assert metrics["topology"]["node_count"] == 3
    assert metrics["topology"]["edge_count"] == 2
    assert "mean_route_length: 1.5" in capsys.readouterr().out


def test_analyze_is_deterministic(tmp_path):
    traces = _write(tmp_path / "toy.txt", "a b c d\na b e\nf b c\nf e\n")
    assert cmd_analyze(traces, str(tmp_path / "one")) == EXIT_OK
    assert cmd_analyze(traces, str(tmp_path / "two")) == EXIT_OK
    assert _files(tmp_path / "one") == _files(tmp_path / "two")


def test_analyze_log2_changes_stdout_only(tmp_path, capsys):
    traces = _write(tmp_path / "toy.txt", "a b c\nd b e\nd f\n")
    assert main_analyze(["-l", "none", "-o", str(tmp_path / "nats"), traces]) == EXIT_OK
    nats = capsys.readouterr().out
    assert main_analyze(["-l", "none", "--log2", "-o", str(tmp_path / "bits"), traces]) == EXIT_OK
    bits = capsys.readouterr().out
    assert "nats" in nats
    assert "bits" in bits
    assert (tmp_path / "nats" / "hop_entropy.csv").read_bytes() == (tmp_path / "bits" / "hop_entropy.csv").read_bytes()


def test_analyze_bad_input(tmp_path):
    empty = _write(tmp_path / "empty.txt", "# nothing\n")
    assert cmd_analyze(empty, str(tmp_path / "out")) == EXIT_DATA
    assert cmd_analyze(str(tmp_path / "missing.txt"), str(tmp_path / "out")) == EXIT_DATA


def test_analyze_of_simulated_routes_matches_simulate(tmp_path, ba_file):
    sim = tmp_path / "sim"
    assert cmd_simulate(ba_file, str(sim), model="pfm", alpha=0.5, sources="random:8", destinations="random:8",
                        reps=4, seed=21) == EXIT_OK
    ana = tmp_path / "ana"
    assert cmd_analyze(str(sim / "routes.txt"), str(ana)) == EXIT_OK
    simulated = _read_json(sim / "summary.json")["mean_route_length"]
    analyzed = _read_json(ana / "metrics.json")["mean_route_length"]
    assert analyzed == pytest.approx(simulated, abs=1e-9)


def test_sweep_zero_alpha_against_uspm_reference(tmp_path, ba_file):
    ref = tmp_path / "ref"
    common = {"sources": "random:12", "destinations": "random:12", "seed": 4}
    assert cmd_simulate(ba_file, str(ref), model="uspm", **common) == EXIT_OK
    out = tmp_path / "sweep"
    assert cmd_sweep(ba_file, str(ref / "routes.txt"), str(out), model="lim", alphas=[0.0], **common) == EXIT_OK
    rows = _read_csv(out / "sweep.csv")
    assert rows[0] == ["alpha", "mean_len", "distance", "avg_degree", "gamma", "clustering", "heterogeneity", "best"]
    assert len(rows) == 2
    assert all(len(row) == 8 for row in rows)
    assert float(rows[1][2]) == 0.0
    assert rows[1][7] == "1"


def test_sweep_recovers_generating_alpha(tmp_path):
    graph = tmp_path / "ba1000.txt"
    assert cmd_gen(str(graph), kind="ba", n=1000, m=3, seed=23) == EXIT_OK
    common = {"sources": "random:30", "destinations": "random:30", "seed": 6}
    ref = tmp_path / "ref"
    assert cmd_simulate(str(graph), str(ref), model="lim", alpha=0.5, **common) == EXIT_OK
    out = tmp_path / "sweep"
    assert main_sweep(["-l", "none", "-A", "0,0.25,0.5,0.75,1.0", "--sources", "random:30",
                       "--destinations", "random:30", "--seed", "6", "-o", str(out),
                       str(graph), str(ref / "routes.txt")]) == EXIT_OK
    content = _read_json(out / "sweep.json")
    assert content["best_alpha"] == 0.5
    best_rows = [row for row in _read_csv(out / "sweep.csv")[1:] if row[7] == "1"]
    assert len(best_rows) == 1
    assert float(best_rows[0][0]) == 0.5
    assert set(content["best_alpha_by_property"]) == {"avg_degree", "gamma", "clustering", "heterogeneity"}


def test_sweep_usage_errors(tmp_path, ba_file):
    ref = _write(tmp_path / "ref.txt", "0 1 2\n")
    out = str(tmp_path / "out")
    assert cmd_sweep(ba_file, ref, out, model="uspm", alphas=[0.0]) == EXIT_USAGE
    assert cmd_sweep(ba_file, ref, out, model="lim", alphas=[]) == EXIT_USAGE
    assert cmd_sweep(ba_file, ref, out, model="lim", alphas=[0.0, 4.0]) == EXIT_USAGE
    with pytest.raises(SystemExit) as exit_info:
        main_sweep(["-l", "none", "-A", "0,x", "-o", out, ba_file, ref])
    assert exit_info.value.code == EXIT_USAGE


def test_rerun_reproduces_simulate(tmp_path, ba_file):
    first = tmp_path / "first"
    assert cmd_simulate(ba_file, str(first), model="pfm", alpha=1.5, sources="random:6", destinations="all",
                        reps=2, seed=8) == EXIT_OK
    second = tmp_path / "second"
    assert main_rerun(["-l", "none", "--threads", "3", "-o", str(second), str(first / "manifest.json")]) == EXIT_OK
    assert _files(first) == _files(second)


def test_rerun_reproduces_analyze_sweep_and_gen(tmp_path, ba_file):
    traces = _write(tmp_path / "toy.txt", "a b c\na b d\n")
    assert cmd_analyze(traces, str(tmp_path / "ana")) == EXIT_OK
    assert cmd_rerun(str(tmp_path / "ana" / "manifest.json"), str(tmp_path / "ana2")) == EXIT_OK
    assert _files(tmp_path / "ana") == _files(tmp_path / "ana2")

    ref = tmp_path / "ref"
    assert cmd_simulate(ba_file, str(ref), model="lim", alpha=1.0, sources="random:5", destinations="random:5",
                        seed=1) == EXIT_OK
    assert cmd_sweep(ba_file, str(ref / "routes.txt"), str(tmp_path / "sw"), model="lim", alphas=[0.0, 1.0],
                     sources="random:5", destinations="random:5", seed=1) == EXIT_OK
    assert cmd_rerun(str(tmp_path / "sw" / "manifest.json"), str(tmp_path / "sw2")) == EXIT_OK
    assert _files(tmp_path / "sw") == _files(tmp_path / "sw2")

    gen_dir = tmp_path / "gen"
    gen_dir.mkdir()
    assert cmd_gen(str(gen_dir / "er.txt"), kind="er", n=50, p=0.1, seed=3) == EXIT_OK
    assert cmd_rerun(str(gen_dir / "er.txt.manifest.json"), str(tmp_path / "gen2")) == EXIT_OK
    assert _files(gen_dir) == _files(tmp_path / "gen2")


def test_rerun_from_another_directory(tmp_path, monkeypatch):
    work = tmp_path / "work"
    work.mkdir()
    _write(work / "tri.txt", TRIANGLE)
    _write(work / "toy.txt", "a b c\na b d\n")
    monkeypatch.chdir(work)
    assert cmd_simulate("tri.txt", str(tmp_path / "sim"), model="uspm") == EXIT_OK
    assert cmd_analyze("toy.txt", str(tmp_path / "ana")) == EXIT_OK
    assert cmd_sweep("tri.txt", "toy.txt", str(tmp_path / "sw"), model="lim", alphas=[0.0, 1.0]) == EXIT_OK

    elsewhere = tmp_path / "elsewhere"
    elsewhere.mkdir()
    monkeypatch.chdir(elsewhere)
    for name in ("sim", "ana", "sw"):
        assert cmd_rerun(str(tmp_path / name / "manifest.json"), str(tmp_path / f"{name}2")) == EXIT_OK
        assert _files(tmp_path / name) == _files(tmp_path / f"{name}2")


def test_threads_help_says_no_speedup(capsys):
    with pytest.raises(SystemExit):
        main_simulate(["-h"])
    assert "GIL" in capsys.readouterr().out


def test_rerun_detects_changed_input(tmp_path):
    graph = tmp_path / "tri.txt"
    _write(graph, TRIANGLE)
    assert cmd_simulate(str(graph), str(tmp_path / "out"), model="uspm") == EXIT_OK
    _write(graph, TRIANGLE + "2 3\n")
    assert cmd_rerun(str(tmp_path / "out" / "manifest.json"), str(tmp_path / "again")) == EXIT_DATA


def test_rerun_missing_manifest(tmp_path):
    assert main_rerun(["-l", "none", "-o", str(tmp_path / "out"), str(tmp_path / "nope.json")]) == EXIT_DATA


def test_manifest_has_no_run_specific_fields(tmp_path):
    graph = _write(tmp_path / "tri.txt", TRIANGLE)
    assert cmd_simulate(graph, str(tmp_path / "out"), model="uspm", threads=2) == EXIT_OK
    manifest = _read_json(tmp_path / "out" / "manifest.json")
    assert set(manifest) == {"no_comment", "manifest_JSON_format_version", "command", "parameters", "inputs",
                             "tracesim_version"}
    assert "threads" not in manifest["parameters"]
    assert list(manifest["inputs"]) == [str(Path(graph).resolve())]
    assert manifest["parameters"]["graph_file"] == str(Path(graph).resolve())
    assert math.isfinite(manifest["parameters"]["pareto_min"])
