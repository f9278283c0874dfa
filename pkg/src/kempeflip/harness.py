"""Experiment configuration, dispatch and result files.

Every experiment is a pure function of its :class:`ExperimentConfig`; random
streams are derived from ``seed`` with :class:`numpy.random.SeedSequence`, and
Monte Carlo work is cut into a fixed number of chunks so results do not depend
on the worker count (``KEMPEFLIP_WORKERS``).
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import BACKEND, kernels
from .chains import (FLIP, FlipParams, PRESETS, list_flip_step, parse_flip_params,
                     run_chain, state_space, uniform_on_proper)
from .config import config_text, count_states, extract_configurations, make_neighboring_pair
from .constructions import (construct_G1, construct_G2, default_k, random_graph,
                            random_neighboring_pair)
from .coupling import (expected_hamming_change, run_variable_length,
                       stage_statistics, terminating_bounds, terminating_probability)
from .graph_core import Graph, is_proper, load_graph

KINDS = ("sample", "verify-lp", "couple", "stages", "mixing", "construct", "contract",
         "list-sample", "barrier")
N_CHUNKS = 16
DEFAULT_GRAPHS = {"stages": "G2:4", "barrier": "G1:10", "contract": "all:4",
                  "sample": "random:6,3,0", "list-sample": "random:6,3,0"}


@dataclass
class ExperimentConfig:
    """Settings shared by all experiments.

    ``graph`` is ``"G1:<Delta>"``, ``"G2:<Delta>"``,
    ``"random:<n>,<Delta>,<seed>"`` or a path to an edge-list file.
    ``preset`` is a preset name or a path to a flip-parameter file.
    """

    kind: str = "construct"
    graph: str | None = None
    k: int | None = None
    preset: str = "vigoda_eq11"
    trials: int = 1000
    seed: int = 0
    step_cap: int = 10 ** 7
    steps: int = 1000
    out: str | None = None
    list_size: int = 3
    ratio: float = 1.8
    grid: int = 6

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown experiment kind {self.kind!r}; choose from {KINDS}")
        if self.graph is None:
            self.graph = DEFAULT_GRAPHS.get(self.kind, "G1:6")
        if self.graph.startswith("G2:") and int(self.graph[3:]) % 2:
            raise ValueError("G2 needs an even Delta")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")

    @classmethod
    def from_mapping(cls, data: dict) -> "ExperimentConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(data) - names
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


# ---------------------------------------------------------------- inputs

def load_params(source: str) -> FlipParams:
    if source in PRESETS:
        return PRESETS[source]
    path = Path(source)
    if not path.exists():
        raise ValueError(f"{source!r} is neither a preset ({sorted(PRESETS)}) nor a file")
    return parse_flip_params(path.read_text())


def resolve_graph(source: str, k: int | None = None) -> tuple:
    """``(G, sigma, tau, Delta)``; ``sigma``/``tau`` are ``None`` for plain graphs."""
    if source.startswith("G1:") or source.startswith("G2:"):
        Delta = int(source[3:])
        G, s, t = (construct_G1 if source[1] == "1" else construct_G2)(Delta)
        return G, s, t, Delta
    if source.startswith("random:"):
        n, Delta, seed = (int(x) for x in source[7:].split(","))
        kk = k if k is not None else max(default_k(max(Delta, 1)), 2)
        pair = random_neighboring_pair(n, Delta, kk, seed)
        return pair.G, pair.sigma, pair.tau, pair.G.max_degree
    if source.startswith("all:"):
        raise ValueError("'all:<n_max>' is only understood by the contract experiment")
    path = Path(source)
    if not path.is_file():
        raise ValueError(f"graph {source!r} is not a construction, a random-graph string or a file")
    G = load_graph(path.read_text())
    return G, None, None, G.max_degree


def greedy_coloring(G: Graph, k: int) -> tuple:
    out = [-1] * G.n
    for v in range(G.n):
        used = {out[w] for w in G.adjacency[v]}
        out[v] = next((c for c in range(k) if c not in used), 0)
    return tuple(out)


def workers() -> int:
    try:
        return max(1, int(os.environ.get("KEMPEFLIP_WORKERS", "1")))
    except ValueError:
        return 1


def _chunks(total: int, parts: int = N_CHUNKS) -> list:
    parts = min(parts, total)
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _map(fn, tasks: list) -> list:
    w = workers()
    if w == 1 or len(tasks) == 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=w) as pool:
        return list(pool.map(fn, tasks))


# ---------------------------------------------------------------- output

def rows_to_csv(rows: list, header: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def read_csv_rows(text: str) -> list:
    """Rows of a result CSV as dictionaries with numeric fields converted."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        conv = {}
        for key, val in row.items():
            try:
                conv[key] = int(val)
            except ValueError:
                try:
                    conv[key] = float(val)
                except ValueError:
                    conv[key] = val
        out.append(conv)
    return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) if math.isfinite(x) else None
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Result:
    kind: str
    summary: dict
    csv: str = ""
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(_jsonable({"kind": self.kind, "summary": self.summary,
                                     "metadata": self.metadata}), indent=2, sort_keys=True)

    def write(self, out: str):
        base = Path(out)
        base.parent.mkdir(parents=True, exist_ok=True)
        if self.csv:
            base.with_suffix(".csv").write_text(self.csv)
        base.with_suffix(".json").write_text(self.to_json() + "\n")


# ---------------------------------------------------------------- experiments

def _sample(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    G, _, _, Delta = resolve_graph(cfg.graph, cfg.k)
    k = cfg.k or default_k(max(Delta, 1))
    start = greedy_coloring(G, k)
    rows = []
    finals = []
    for t in range(cfg.trials):
        final = run_chain(G, start, k, cfg.steps, rng, FLIP, params)
        finals.append(final)
        rows.append((t, " ".join(map(str, final)), int(is_proper(G, final))))
    summary = {"n": G.n, "k": k, "steps": cfg.steps,
               "proper_fraction": sum(r[2] for r in rows) / len(rows),
               "distinct_final_states": len(set(finals))}
    if k ** G.n <= 4096:
        states = state_space(G, k)
        emp = np.zeros(len(states))
        index = {s: i for i, s in enumerate(states)}
        for f in finals:
            emp[index[f]] += 1
        emp /= emp.sum()
        summary["empirical_tv_to_uniform_proper"] = float(0.5 * np.abs(emp - uniform_on_proper(G, states)).sum())
    return Result(cfg.kind, summary, rows_to_csv(rows, ["trial", "coloring", "proper"]))


def _list_sample(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    G, _, _, Delta = resolve_graph(cfg.graph, cfg.k)
    k = cfg.k or default_k(max(Delta, 1))
    size = min(cfg.list_size, k)
    while True:
        L = tuple(frozenset(int(c) for c in rng.choice(k, size=size, replace=False))
                  for _ in range(G.n))
        start = []
        for v in range(G.n):
            used = {start[w] for w in G.adjacency[v] if w < v}
            free = sorted(L[v] - used)
            start.append(free[0] if free else min(L[v]))
        if is_proper(G, start):
            break
    rows = []
    for t in range(cfg.trials):
        s = tuple(start)
        for _ in range(cfg.steps):
            s = list_flip_step(G, s, L, params, rng)
        rows.append((t, " ".join(map(str, s)), int(is_proper(G, s))))
    summary = {"n": G.n, "k": k, "list_size": size, "steps": cfg.steps,
               "proper_fraction": sum(r[2] for r in rows) / len(rows)}
    return Result(cfg.kind, summary, rows_to_csv(rows, ["trial", "coloring", "proper"]))


def _verify_lp(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    from .flip_lp import (LP2, LP3, LP4, LP5_MIXED, DEFAULT_GAMMA, build_lp, canonical_tight_configs,
                          check_feasible, complete_assignment, solve_lp, tight_constraints,
                          verify_dpp_feasibility)
    lp2 = build_lp(LP2)
    res2 = solve_lp(lp2)
    res3 = solve_lp(build_lp(LP3), exact=True)
    res4 = solve_lp(build_lp(LP4), exact=True)
    lp5 = build_lp(LP5_MIXED, gamma=DEFAULT_GAMMA)
    res5 = solve_lp(lp5)
    asg = complete_assignment(lp2, params)
    feas = check_feasible(lp2, asg)
    tight = tight_constraints(lp2, asg)
    canon = sorted(canonical_tight_configs(tight))
    dpp = verify_dpp_feasibility(params) if params(7) == 0 and params(3) == Fraction(1, 6) else None
    rows = [(config_text(*c),) for c in canon] + [(t,) for t in tight if not t.startswith("cfg:")]
    lam = asg["lam"]
    words = {6: "six"}.get(len(canon), str(len(canon)))
    summary = {
        "LP2": res2.objective, "LP3": res3.objective, "LP4": res4.objective, "LP5": res5.objective,
        "preset_lambda_LP2": lam, "preset_feasible_LP2": feas.feasible,
        "tight_configurations": len(canon),
        "report": f"LP2 optimum {Fraction(res2.objective).limit_denominator(1000)}, "
                  f"{words} tight configurations",
        "dpp_feasible": None if dpp is None else dpp.ok,
    }
    return Result(cfg.kind, summary, rows_to_csv(rows, ["tight"]))


def _pair_from_cfg(cfg: ExperimentConfig) -> tuple:
    G, s, t, Delta = resolve_graph(cfg.graph, cfg.k)
    if s is None:
        raise ValueError("this experiment needs a construction or random pair, not a bare graph")
    k = cfg.k or default_k(max(Delta, 1))
    return make_neighboring_pair(G, s, t), k, Delta


def _couple_chunk(task):
    graph, k, preset, trials, seed, cap = task
    cfg = ExperimentConfig(kind="couple", graph=graph, k=k, preset=preset)
    pair, k, _ = _pair_from_cfg(cfg)
    params = load_params(preset)
    rng = np.random.default_rng(seed)
    return [(tr.T_stop, tr.final_distance, int(tr.truncated))
            for tr in (run_variable_length(pair, k, params, rng, step_cap=cap) for _ in range(trials))]


def _seeds(seed: int, parts: int) -> list:
    return np.random.SeedSequence(seed).spawn(parts)


def _couple(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    pair, k, Delta = _pair_from_cfg(cfg)
    e = expected_hamming_change(pair, k, params)
    tp = terminating_probability(pair, k, params)
    lo, hi = terminating_bounds(pair.G.n, k, Delta, params)
    chunks = _chunks(cfg.trials)
    seeds = _seeds(cfg.seed, len(chunks))
    tasks = [(cfg.graph, k, cfg.preset, c, s, cfg.step_cap) for c, s in zip(chunks, seeds)]
    rows = [r for part in _map(_couple_chunk, tasks) for r in part]
    ts = [r[0] for r in rows if r[0] is not None]
    summary = {"n": pair.G.n, "k": k, "Delta": Delta,
               "expected_change": float(e), "nk_expected_change": float(e * pair.G.n * k),
               "terminating_probability": float(tp), "terminating_bounds": [lo, hi],
               "mean_T_stop": float(np.mean(ts)) if ts else None,
               "T_stop_bound": pair.G.n * k / (k - Delta - 2) if k > Delta + 2 else None,
               "mean_final_distance": float(np.mean([r[1] for r in rows]))}
    csv_rows = [(i, r[0], r[1], r[2]) for i, r in enumerate(rows)]
    return Result(cfg.kind, summary, rows_to_csv(csv_rows, ["trial", "T_stop", "final_distance",
                                                            "truncated"]))


def _stages_chunk(task):
    graph, k, preset, trials, seed, cap = task
    cfg = ExperimentConfig(kind="stages", graph=graph, k=k, preset=preset)
    pair, k, _ = _pair_from_cfg(cfg)
    return stage_statistics(pair, k, load_params(preset), trials, np.random.default_rng(seed),
                            step_cap=cap)


def run_stages(cfg: ExperimentConfig):
    """Stage statistics merged over the fixed chunk split."""
    pair, k, Delta = _pair_from_cfg(cfg)
    chunks = _chunks(cfg.trials)
    seeds = _seeds(cfg.seed, len(chunks))
    tasks = [(cfg.graph, k, cfg.preset, c, s, cfg.step_cap) for c, s in zip(chunks, seeds)]
    parts = _map(_stages_chunk, tasks)
    stats = parts[0]
    for part in parts[1:]:
        stats = stats.merge(part)
    return pair, k, Delta, stats


def _stages(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    pair, k, Delta, stats = run_stages(cfg)
    n = pair.G.n
    mean, se = stats.mean_t_stop()
    summary = {"n": n, "k": k, "Delta": Delta, "trials": stats.trials, "truncated": stats.truncated,
               "mean_T_stop": mean, "T_stop_stderr": se, "T_stop_bound": n * k / (k - Delta - 2)}
    for src, dst in (("Bad", "Good"), ("Good", "GoodEnd"), ("Good", "BadEnd")):
        num, den, f, s = stats.frequency(src, dst)
        summary[f"{src}->{dst}"] = {"count": num, "opportunities": den, "freq": f, "stderr": s}
    return Result(cfg.kind, summary, stats.to_csv(n, k, Delta))


def _mixing_chunk(task):
    n, Delta, k, preset, trials, seed, cap = task
    rng = np.random.default_rng(seed)
    params = load_params(preset)
    out = []
    for _ in range(trials):
        G = random_graph(n, Delta, rng)
        x = np.asarray(greedy_coloring(G, k), dtype=np.int64)
        y = rng.integers(k, size=n).astype(np.int64)
        indptr, indices = G.csr
        acc = params.acceptance_table(n)
        t = kernels.grand_coupling_steps(indptr, indices, x, y, acc, rng.integers(n, size=cap),
                                         rng.integers(k, size=cap), rng.random(cap))
        out.append(int(t))
    return out


def _mixing(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    Delta = 3
    k = cfg.k or default_k(Delta)
    sizes = (8, 16, 32)
    rows = []
    summary = {"k": k, "Delta": Delta, "sizes": {}}
    for n in sizes:
        cap = int(200 * n * math.log(n))
        chunks = _chunks(cfg.trials)
        seeds = _seeds(cfg.seed + n, len(chunks))
        times = [t for part in _map(_mixing_chunk, [(n, Delta, k, cfg.preset, c, s, cap)
                                                    for c, s in zip(chunks, seeds)]) for t in part]
        done = [t for t in times if t >= 0]
        mean = float(np.mean(done)) if done else float("nan")
        summary["sizes"][n] = {"coalesced": len(done), "trials": len(times), "mean_steps": mean,
                               "mean_over_nlogn": mean / (n * math.log(n))}
        rows += [(n, i, t) for i, t in enumerate(times)]
    summary["note"] = "coalescence trend only; no asymptotic claim is asserted"
    return Result(cfg.kind, summary, rows_to_csv(rows, ["n", "trial", "coalescence_step"]))


def _construct(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    G, s, t, Delta = resolve_graph(cfg.graph, cfg.k)
    summary = {"n": G.n, "Delta": Delta, "graph": G.to_text()}
    rows = []
    if s is not None:
        pair = make_neighboring_pair(G, s, t)
        summary.update({"sigma": list(s), "tau": list(t), "v": pair.v,
                        "states_sing_bad_good": list(count_states(pair))})
        rows = [(c, cfg_.to_text(), cfg_.special) for c, cfg_ in extract_configurations(pair).items()]
    return Result(cfg.kind, summary, rows_to_csv(rows, ["color", "configuration", "special"]))


def contraction_check(graphs: list, p: FlipParams, k_of=lambda D: 2 * D, max_degree: int = 4) -> dict:
    """Exhaustive check of ``nabla <= (11/6 - delta/318) Delta - k`` and the
    decomposition identity over every canonical neighboring pair."""
    from .metrics import MetricParams, canonical_pairs, contraction_bound, default_eta, nabla
    worst = -math.inf
    worst_pair = None
    gap = 0.0
    count = 0
    for G in graphs:
        D = G.max_degree
        if D < 1 or D > max_degree:
            continue
        k = k_of(D)
        mp = MetricParams(default_eta(k, D), p)
        bound = contraction_bound(D, k)
        for pair in canonical_pairs(G, k):
            nb = nabla(pair, k, p, mp)
            count += 1
            gap = max(gap, abs(nb.total - nb.hamming - nb.extremal))
            if nb.total - bound > worst:
                worst = nb.total - bound
                worst_pair = (G.edges, pair.sigma, pair.tau, k, nb.total, bound)
    return {"pairs": count, "max_excess": worst, "worst": worst_pair, "max_identity_gap": gap}


def _contract(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    from .metrics import connected_graphs
    if cfg.graph.startswith("all:"):
        n_max = int(cfg.graph[4:])
        graphs = [G for n in range(2, n_max + 1) for G in connected_graphs(n)]
    else:
        graphs = [resolve_graph(cfg.graph, cfg.k)[0]]
    k_of = (lambda D: cfg.k) if cfg.k else (lambda D: 2 * D)
    report = contraction_check(graphs, params, k_of)
    rows = [("pairs", report["pairs"]), ("max_excess", report["max_excess"]),
            ("max_identity_gap", report["max_identity_gap"])]
    return Result(cfg.kind, report, rows_to_csv(rows, ["quantity", "value"]))


def barrier_grid(N_max: int = 6, levels: int = 6) -> list:
    """Non-increasing ``(p_2, ..., p_Nmax)`` with entries in ``{0, 1/levels, ..., 1}``."""
    from itertools import combinations_with_replacement
    vals = [Fraction(i, levels) for i in range(levels + 1)]
    out = []
    for combo in combinations_with_replacement(range(levels + 1), N_max - 1):
        out.append(FlipParams.from_tail(tuple(vals[i] for i in sorted(combo, reverse=True))))
    return out


def barrier_sweep(Delta: int, k: int, grid: list) -> list:
    """Rows ``(params, E_G1, E_G2)`` of exact expected changes."""
    p1 = make_neighboring_pair(*construct_G1(Delta))
    p2 = make_neighboring_pair(*construct_G2(Delta))
    return [(p, expected_hamming_change(p1, k, p), expected_hamming_change(p2, k, p)) for p in grid]


def _barrier(cfg: ExperimentConfig, params: FlipParams, rng) -> Result:
    if cfg.graph[:3] not in ("G1:", "G2:"):
        raise ValueError("the barrier sweep takes a Delta through --graph G1:<Delta>")
    Delta = int(cfg.graph[3:])
    Delta += Delta % 2
    k = cfg.k or math.floor(cfg.ratio * Delta)
    rows = barrier_sweep(Delta, k, barrier_grid(6, cfg.grid))
    both = [r for r in rows if r[1] < 0 and r[2] < 0]
    summary = {"Delta": Delta, "k": k, "vectors": len(rows), "both_negative": len(both),
               "min_max_change": min(float(max(r[1], r[2])) for r in rows)}
    csv_rows = [(" ".join(str(x) for x in r[0].values[2:]), float(r[1]), float(r[2])) for r in rows]
    return Result(cfg.kind, summary, rows_to_csv(csv_rows, ["p2..p6", "E_G1", "E_G2"]))


_DISPATCH = {"sample": _sample, "list-sample": _list_sample, "verify-lp": _verify_lp,
             "couple": _couple, "stages": _stages, "mixing": _mixing, "construct": _construct,
             "contract": _contract, "barrier": _barrier}


def run_experiment(cfg: ExperimentConfig) -> Result:
    """Run one experiment; write ``<out>.csv`` and ``<out>.json`` when ``cfg.out`` is set."""
    params = load_params(cfg.preset)
    rng = np.random.default_rng(cfg.seed)
    t0 = time.perf_counter()
    res = _DISPATCH[cfg.kind](cfg, params, rng)
    res.metadata = {"config": asdict(cfg), "seed": cfg.seed, "preset": cfg.preset,
                    "seconds": round(time.perf_counter() - t0, 3), "version": __version__,
                    "backend": BACKEND, "workers": workers()}
    if cfg.out:
        res.write(cfg.out)
    return res
