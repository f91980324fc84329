import json
import subprocess
import sys

import pytest

from ramsey_forge.cli import main, resolve_graph
from ramsey_forge.graph import complete_graph, cycle_graph, parse_graph6, turan_graph


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_resolve_graph_forms(tmp_path):
    assert resolve_graph("K3") == complete_graph(3)
    assert resolve_graph("turan:6:2") == turan_graph(6, 2)
    assert resolve_graph("A_") == complete_graph(2)
    assert resolve_graph("hairy:K3:0").n == 4
    f = tmp_path / "c5.txt"
    f.write_text("0 1\n1 2\n2 3\n3 4\n4 0\n")
    assert resolve_graph(f"@{f}") == cycle_graph(5)
    f.write_text("Dhc\n")
    assert resolve_graph(f"@{f}") == cycle_graph(5)


def test_hairy(capsys, tmp_path):
    code, out, _ = run(capsys, "hairy", "--base", "K3", "--attach", "0,1,2")
    assert code == 0 and out.splitlines()[0] == "v=6 e=6 chi=3 k=1 crit=3"
    code, out, _ = run(capsys, "hairy", "--base", "C5", "--attach", "")
    assert parse_graph6(out.splitlines()[1]) == cycle_graph(5)
    code, _, err = run(capsys, "hairy", "--base", "K3", "--attach", "9")
    assert code == 3 and "out of range" in err


def test_parse_error(capsys):
    code, _, _ = run(capsys, "objective", "--h1", "K3", "--h2", "K3", "--g", "!!")
    assert code == 2


@pytest.mark.parametrize("g, value", [("C5", "0/1"), ("turan:6:2", "2/5"), ("K5", "4/1")])
def test_objective(capsys, g, value):
    code, out, _ = run(capsys, "objective", "--h1", "K3", "--h2", "K3", "--g", g)
    doc = json.loads(out)
    assert code == 0 and doc["value"] == value and doc["schema"]


def test_objective_too_small(capsys):
    code, _, _ = run(capsys, "objective", "--h1", "K3", "--h2", "K3", "--g", "K2")
    assert code == 4


def test_search(capsys, tmp_path):
    dump = tmp_path / "min.g6"
    code, out, _ = run(capsys, "search", "--h1", "K3", "--h2", "K3", "--n", "5", "--minimizers-out", str(dump))
    doc = json.loads(out)["report"]
    assert code == 0 and doc["min_value"] == "0/1" and doc["turan_verdict"] == "contains-non-turan"
    assert any(parse_graph6(s) for s in dump.read_text().split())
    code, out, _ = run(capsys, "search", "--h1", "K3", "--h2", "K3", "--n", "6", "--mode", "local", "--seed", "1")
    assert json.loads(out)["report"]["min_value"] == "2/5"
    code, _, err = run(capsys, "search", "--h1", "K3", "--h2", "K3", "--n", "12")
    assert code == 5 and "--max-n-override" in err


def test_perturb(capsys, tmp_path):
    csv = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "perturb", "--h1", "hairy:K3:0", "--h2", "K3", "--n", "40", "--out", str(csv))
    doc = json.loads(out)["report"]
    assert code == 0 and doc["verdict"] == "not-multiplicity-good" and doc["linear_coefficient"] == "-1/1"
    assert len(csv.read_text().splitlines()) == 12
    code, out, _ = run(capsys, "perturb", "--h1", "K3", "--h2", "K3", "--n", "40", "--grid", "0")
    doc = json.loads(out)["report"]
    assert doc["verdict"] == "inconclusive" and doc["linear_coefficient"] == "0/1"
    assert doc["points"][0]["value"] == doc["baseline"]
    code, _, _ = run(capsys, "perturb", "--h1", "K3", "--h2", "K3", "--n", "10", "--grid", "2")
    assert code == 3
    code, _, _ = run(capsys, "perturb", "--h1", "K3", "--h2", "K3", "--n", "10", "--grid", "x")
    assert code == 2


def test_bounds(capsys):
    _, out, _ = run(capsys, "bounds", "--h", "K3")
    b = json.loads(out)["bounds"]
    assert b["nearly_proper_count"] == "6" and b["nearly_proper_bound"] == "6"
    _, out, _ = run(capsys, "bounds", "--h", "C5")
    b = json.loads(out)["bounds"]
    assert (b["nearly_proper_count"], b["nearly_proper_bound"], b["proper_colourings"]) == ("10", "10", "30")
    assert b["tomescu_bound"] == "24" and b["tomescu_exceeded"] and not b["tomescu_applies"]
    _, out, _ = run(capsys, "bounds", "--h", "K4")
    b = json.loads(out)["bounds"]
    assert (b["nearly_proper_count"], b["nearly_proper_bound"], b["nearly_proper_branch"]) == ("36", "72", "chi4")
    code, out, _ = run(capsys, "bounds", "--h", "P4")
    doc = json.loads(out)
    assert code == 0 and "nearly_proper_bound" not in doc["bounds"]
    assert any("omitted" in w for w in doc["warnings"])


def test_config_and_env(capsys, tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"h1": "K3", "h2": "K3", "n": 5, "seed": 4}))
    monkeypatch.setenv("RAMSEY_FORGE_JOBS", "2")
    code, out, _ = run(capsys, "search", "--config", str(cfg), "--seed", "9")
    doc = json.loads(out)
    assert code == 0 and doc["config"]["seed"] == 9 and "jobs" not in doc["config"] and doc["config"]["n"] == 5
    code, _, _ = run(capsys, "search", "--config", str(tmp_path / "missing.json"))
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ramsey_forge", "objective", "--h1", "K3", "--h2", "K3", "--g", "C5"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["value"] == "0/1"


def test_env_sets_default_jobs(monkeypatch):
    from ramsey_forge.cli import build_parser, resolve_config

    monkeypatch.setenv("RAMSEY_FORGE_JOBS", "3")
    args = build_parser().parse_args(["search", "--h1", "K3", "--h2", "K3", "--n", "5"])
    assert resolve_config(args)["jobs"] == 3
    args = build_parser().parse_args(["search", "--h1", "K3", "--h2", "K3", "--n", "5", "--jobs", "1"])
    assert resolve_config(args)["jobs"] == 1
