import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from kempeflip.chains import FLIP, PRESETS, state_space, transition_matrix
from kempeflip.config import make_neighboring_pair
from kempeflip.constructions import construction_pair, random_neighboring_pair
from kempeflip.coupling import (STAGE_BAD, STAGE_BAD_END, STAGE_GOOD, STAGE_GOOD_END,
                                StageStatistics, StageTracker, expected_hamming_change,
                                greedy_coupling_distribution, is_terminating_pair, mixing_bound,
                                run_variable_length, sample_coupled_step, stage_statistics,
                                terminating_bounds, terminating_probability)
from kempeflip.config import BAD, GOOD, SING
from kempeflip.graph_core import Graph
from kempeflip.harness import read_csv_rows

from strategies import neighboring_pairs

EQ11 = PRESETS["vigoda_eq11"]


@settings(max_examples=40)
@given(neighboring_pairs(max_n=4, max_k=4))
def test_marginals_match_the_flip_kernel(data):
    pair, k = data
    states = state_space(pair.G, k)
    index = {s: i for i, s in enumerate(states)}
    for p in (EQ11, PRESETS["dpp_obs51"]):
        dist = greedy_coupling_distribution(pair, k, p)
        assert dist.total_mass == 1
        assert dist.noop_mass >= 0 and all(o.mass > 0 for o in dist.outcomes)
        P = transition_matrix(pair.G, k, FLIP, p)
        for side, start in (("sigma", pair.sigma), ("tau", pair.tau)):
            row = np.zeros(len(states))
            for col, mass in dist.marginal(side, start).items():
                row[index[col]] += float(mass)
            assert np.abs(row - P[index[start]]).max() <= 1e-12


@given(neighboring_pairs())
def test_drift_is_symmetric_under_swap(data):
    pair, k = data
    assert expected_hamming_change(pair, k, EQ11) == expected_hamming_change(pair.swapped(), k, EQ11)


@given(neighboring_pairs())
def test_identity_moves_never_terminate(data):
    pair, k = data
    for o in greedy_coupling_distribution(pair, k, EQ11).outcomes:
        if o.move == "identity":
            assert o.s_sigma.flip_key == o.s_tau.flip_key
            assert not is_terminating_pair(pair, o.s_sigma, o.s_tau)


def test_lower_terminating_bound_on_constructions():
    for name in ("G1", "G2"):
        pair = construction_pair(name, 6)
        lo, hi = terminating_bounds(pair.G.n, 11, 6, EQ11)
        assert lo <= terminating_probability(pair, 11, EQ11) <= hi


def test_upper_terminating_bound_has_a_counterexample():
    # Improper pair with delta = 3 and k >= 1.9 Delta where the terminating
    # mass exceeds k + 2 p_2 Delta; kept as a regression for the ledger entry.
    seed = 140
    rng = np.random.default_rng(seed)
    n, D = int(rng.integers(3, 9)), int(rng.integers(1, 5))
    Dg = random_neighboring_pair(n, D, 2, seed).G.max_degree
    k = max(math.ceil(1.9 * Dg), Dg + 3)
    pair = random_neighboring_pair(n, D, k, seed)
    Dg = pair.G.max_degree
    k = max(math.ceil(1.9 * Dg), Dg + 3)
    nk = pair.G.n * k
    _, hi = terminating_bounds(pair.G.n, k, Dg, EQ11)
    tp = terminating_probability(pair, k, EQ11)
    assert float(tp) * nk == pytest.approx(8.14, abs=0.01)
    assert float(tp) > hi


def test_reserve_sampler_matches_exact_law():
    pair = random_neighboring_pair(4, 3, 3, 7)
    dist = greedy_coupling_distribution(pair, 3, EQ11)
    law = Counter()
    for o in dist.outcomes:
        law[o.apply(pair.sigma, pair.tau)] += float(o.mass)
    law[(pair.sigma, pair.tau)] += float(dist.noop_mass)
    rng = np.random.default_rng(3)
    N = 20_000
    emp = Counter(sample_coupled_step(pair, 3, EQ11, rng) for _ in range(N))
    for key in set(law) | set(emp):
        pr = law[key]
        se = math.sqrt(max(pr * (1 - pr), 1e-9) / N)
        assert abs(emp[key] / N - pr) <= 5 * se + 1e-4, key


def test_explicit_sampler_agrees_on_support():
    pair = construction_pair("G1", 3)
    rng = np.random.default_rng(0)
    dist = greedy_coupling_distribution(pair, 6, EQ11)
    support = {o.apply(pair.sigma, pair.tau) for o in dist.outcomes} | {(pair.sigma, pair.tau)}
    for _ in range(200):
        assert sample_coupled_step(pair, 6, EQ11, rng, method="explicit") in support


@pytest.mark.parametrize("events, expected", [
    ((BAD, [(False, GOOD), (True, GOOD)]), [STAGE_BAD, STAGE_GOOD, STAGE_GOOD_END]),
    ((BAD, [(False, SING)]), [STAGE_BAD, STAGE_BAD_END]),
    ((BAD, [(True, GOOD)]), [STAGE_BAD, STAGE_BAD_END]),
    ((GOOD, [(False, GOOD), (False, BAD)]), [STAGE_GOOD, STAGE_GOOD, STAGE_BAD_END]),
])
def test_stage_tracker(events, expected):
    start, steps = events
    tr = StageTracker(0, start)
    seen = [tr.stage]
    for terminating, state in steps:
        seen.append(tr.update(terminating, state))
    assert seen == expected
    assert tr.done
    assert tr.update(False, GOOD) is None


def test_sing_start_is_not_tracked():
    assert StageTracker(0, SING).done


def test_variable_length_needs_room():
    pair = construction_pair("G1", 4)
    with pytest.raises(ValueError):
        run_variable_length(pair, 6, EQ11, np.random.default_rng(0))


def test_variable_length_stops_on_distance_change():
    pair = construction_pair("G2", 4)
    rng = np.random.default_rng(1)
    for _ in range(20):
        tr = run_variable_length(pair, 8, EQ11, rng, record_steps=True)
        assert not tr.truncated and tr.final_distance != 1
        assert len(tr.steps) == tr.T_stop
        assert tr.first_terminating is not None and tr.first_terminating <= tr.T_stop


def test_step_cap_truncates():
    pair = construction_pair("G2", 4)
    tr = run_variable_length(pair, 8, EQ11, np.random.default_rng(0), step_cap=1)
    assert tr.truncated or tr.T_stop == 1


def test_stage_csv_round_trip():
    pair = construction_pair("G2", 4)
    a = stage_statistics(pair, 8, EQ11, 300, np.random.default_rng(0))
    b = stage_statistics(pair, 8, EQ11, 300, np.random.default_rng(1))
    stats = a.merge(b)
    assert stats.trials == 600
    rows = read_csv_rows(stats.to_csv(pair.G.n, 8, 4))
    for row in rows:
        src, dst = row["transition"].split("->")
        num, den, f, _ = stats.frequency(src, dst)
        assert (row["count"], row["trials"]) == (num, den)
        assert row["freq"] == pytest.approx(f, rel=1e-5)


def test_empty_frequency_is_nan():
    stats = StageStatistics(Counter(), 1, [], 0)
    assert math.isnan(stats.frequency(STAGE_BAD, STAGE_GOOD)[2])


def test_mixing_bound():
    assert mixing_bound(1.0, 1.0, 1.0, math.e, 1.0) == 2 * 2 * 1
    with pytest.raises(ValueError):
        mixing_bound(0.0, 1, 1, 10, 0.1)


def test_exact_drift_on_a_single_edge():
    # k far above the degree: the drift is exact and contracting.
    G = Graph.from_edges(2, [(0, 1)])
    pair = make_neighboring_pair(G, (0, 2), (1, 2))
    e = expected_hamming_change(pair, 4, EQ11)
    assert isinstance(e, Fraction)
    assert e < 0
