import json
from fractions import Fraction

import pytest

from kempeflip.harness import (ExperimentConfig, barrier_grid, greedy_coloring, load_params,
                               read_csv_rows, resolve_graph, rows_to_csv, run_experiment)
from kempeflip.graph_core import Graph, is_proper


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(kind="nope")
    with pytest.raises(ValueError):
        ExperimentConfig(kind="stages", graph="G2:5")
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
    with pytest.raises(ValueError):
        ExperimentConfig.from_mapping({"kind": "couple", "colour": 3})
    assert ExperimentConfig(kind="stages").graph == "G2:4"


def test_params_from_file(tmp_path):
    path = tmp_path / "p.txt"
    path.write_text("1 1\n2 1/3\n")
    assert load_params(str(path))(2) == Fraction(1, 3)
    with pytest.raises(ValueError):
        load_params("no_such_preset")


def test_graph_sources(tmp_path):
    G, s, t, D = resolve_graph("G2:4")
    assert (G.n, D) == (13, 4) and s is not None
    path = tmp_path / "g.txt"
    path.write_text("3 2\n0 1\n1 2\n")
    G, s, t, D = resolve_graph(str(path))
    assert (G.n, D, s) == (3, 2, None)


def test_greedy_coloring_is_proper():
    G = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    assert is_proper(G, greedy_coloring(G, 3))


def test_barrier_grid():
    grid = barrier_grid(6, 6)
    assert len(grid) == 462
    assert all(p(2) >= p(3) >= p(6) for p in grid)


def test_csv_round_trip():
    text = rows_to_csv([(1, 0.5, "a"), (2, 1e-3, "b")], ["i", "x", "tag"])
    assert read_csv_rows(text) == [{"i": 1, "x": 0.5, "tag": "a"}, {"i": 2, "x": 0.001, "tag": "b"}]


def test_results_do_not_depend_on_worker_count(monkeypatch):
    cfg = ExperimentConfig(kind="couple", graph="G2:4", k=8, trials=48, seed=5)
    monkeypatch.setenv("KEMPEFLIP_WORKERS", "1")
    a = run_experiment(cfg)
    monkeypatch.setenv("KEMPEFLIP_WORKERS", "2")
    b = run_experiment(cfg)
    assert a.csv == b.csv
    assert a.summary == b.summary


def test_same_seed_same_result():
    cfg = ExperimentConfig(kind="stages", trials=64, seed=2)
    assert run_experiment(cfg).csv == run_experiment(cfg).csv


def test_outputs_are_written(tmp_path):
    out = tmp_path / "res" / "stages"
    res = run_experiment(ExperimentConfig(kind="stages", trials=50, seed=1, out=str(out)))
    meta = json.loads(out.with_suffix(".json").read_text())
    assert meta["metadata"]["seed"] == 1 and meta["metadata"]["preset"] == "vigoda_eq11"
    assert "seconds" in meta["metadata"]
    rows = read_csv_rows(out.with_suffix(".csv").read_text())
    assert {r["transition"] for r in rows} == {"Bad->Good", "Good->GoodEnd", "Good->BadEnd"}
    assert rows[0]["count"] == res.summary["Bad->Good"]["count"]


@pytest.mark.parametrize("kind, extra", [
    ("construct", {}),
    ("sample", {"trials": 5, "steps": 50}),
    ("list-sample", {"trials": 3, "steps": 20, "k": 5}),
    ("couple", {"trials": 10}),
    ("contract", {"graph": "all:3"}),
    ("barrier", {"graph": "G1:4", "grid": 2}),
    ("mixing", {"trials": 2}),
])
def test_every_experiment_runs(kind, extra):
    res = run_experiment(ExperimentConfig(kind=kind, seed=0, **extra))
    assert res.kind == kind
    json.loads(res.to_json())


def test_graph_families_only_for_contraction(tmp_path):
    with pytest.raises(ValueError, match="contract"):
        run_experiment(ExperimentConfig(kind="couple", graph="all:3"))
    with pytest.raises(ValueError, match="not a construction"):
        run_experiment(ExperimentConfig(kind="construct", graph=str(tmp_path / "missing.txt")))
    path = tmp_path / "g.txt"
    path.write_text("2 1\n0 1\n")
    with pytest.raises(ValueError, match="bare graph"):
        run_experiment(ExperimentConfig(kind="couple", graph=str(path)))


def test_verify_lp_report():
    res = run_experiment(ExperimentConfig(kind="verify-lp"))
    assert res.summary["report"] == "LP2 optimum 11/6, six tight configurations"
    assert res.summary["preset_feasible_LP2"]


def test_barrier_below_threshold():
    res = run_experiment(ExperimentConfig(kind="barrier", graph="G1:12", k=21))
    assert res.summary["vectors"] == 462
    assert res.summary["both_negative"] == 0
