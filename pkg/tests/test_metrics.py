import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kempeflip.chains import PRESETS
from kempeflip.config import extract_configurations, extremal_classes, gamma, make_neighboring_pair
from kempeflip.constructions import construction_pair
from kempeflip.graph_core import Graph, hamming, kempe_component
from kempeflip.metrics import (DELTA, MetricParams, canonical_pairs, connected_graphs, d_B,
                               default_eta, edge_weight, exact_metric, extremal_bound,
                               hamming_bound, metric, monotone_metric, nabla, xi_contribution)

from strategies import colored_graphs, neighboring_pairs

OBS51 = PRESETS["dpp_obs51"]


def test_default_eta():
    assert DELTA == pytest.approx(1 / 264)
    assert default_eta(8, 4) == pytest.approx(4 / (264 * 53 * 8))
    with pytest.raises(ValueError):
        default_eta(0, 3)


@pytest.mark.parametrize("eta", [0.0, 0.5, -0.1])
def test_eta_range(eta):
    with pytest.raises(ValueError):
        MetricParams(eta, OBS51)


@given(neighboring_pairs())
def test_edge_weight_range(data):
    pair, _ = data
    mp = MetricParams(0.1, OBS51)
    w = edge_weight(pair, mp)
    assert 0.9 - 1e-15 <= w <= 1.0
    assert w == pytest.approx(1 - 0.1 * (1 - gamma(pair)))


def test_extremal_edges_have_unit_weight():
    pair = construction_pair("G1", 4)
    assert edge_weight(pair, MetricParams(0.2, OBS51)) == 1.0


def test_edge_weight_cache_respects_relabeling():
    G = Graph.from_edges(3, [(0, 1), (1, 2)])
    mp = MetricParams(0.2, OBS51)
    a = edge_weight(make_neighboring_pair(G, (0, 1, 0), (2, 1, 0)), mp)
    b = edge_weight(make_neighboring_pair(G, (3, 0, 3), (1, 0, 3)), mp)
    assert a == b and len(mp.cache) == 1


@settings(max_examples=30)
@given(colored_graphs(max_n=4, max_k=3), st.data())
def test_metric_properties(data, draw):
    G, k, sigma = data
    tau = tuple(draw.draw(st.lists(st.integers(0, k - 1), min_size=G.n, max_size=G.n)))
    mp = MetricParams(0.3, OBS51)
    d = exact_metric(G, k, sigma, tau, mp)
    assert d == pytest.approx(exact_metric(G, k, tau, sigma, mp))
    m = hamming(sigma, tau)
    assert (1 - mp.eta) * m - 1e-12 <= d <= m + 1e-12
    assert d == pytest.approx(metric(G, k, sigma, tau, mp))
    assert d_B(G, k, sigma, tau, mp) == pytest.approx(m - d)


@settings(max_examples=30)
@given(colored_graphs(max_n=4, max_k=3), st.data())
def test_monotone_paths_are_exact_for_small_eta(data, draw):
    G, k, sigma = data
    tau = tuple(draw.draw(st.lists(st.integers(0, k - 1), min_size=G.n, max_size=G.n)))
    mp = MetricParams(1.0 / (G.n + 2), OBS51)
    assert monotone_metric(G, sigma, tau, mp) == pytest.approx(exact_metric(G, k, sigma, tau, mp))


def test_triangle_inequality():
    G = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    k = 3
    mp = MetricParams(0.25, OBS51)
    cols = list(itertools.product(range(k), repeat=3))
    rng = np.random.default_rng(0)
    for _ in range(100):
        x, y, z = (cols[i] for i in rng.integers(len(cols), size=3))
        assert exact_metric(G, k, x, z, mp) <= exact_metric(G, k, x, y, mp) + exact_metric(G, k, y, z, mp) + 1e-12


def test_state_cap():
    G = Graph.from_edges(12, [(i, i + 1) for i in range(11)])
    with pytest.raises(ValueError):
        exact_metric(G, 4, (0,) * 12, (1,) * 12, MetricParams(0.1, OBS51))


@settings(max_examples=40)
@given(neighboring_pairs(max_n=5, max_k=8))
def test_drift_decomposition_and_bounds(data):
    pair, k = data
    D = pair.G.max_degree
    if D == 0 or k < 2 * D:
        return
    eta = default_eta(k, D)
    nb = nabla(pair, k, OBS51, MetricParams(eta, OBS51))
    assert nb.total == pytest.approx(nb.hamming + nb.extremal, abs=1e-10)
    assert nb.hamming <= hamming_bound(pair, k) + 1e-9
    assert nb.extremal <= extremal_bound(pair, k, eta) + 1e-9


def test_level_change_from_a_flip():
    # Color 0 starts extremal of size one; recoloring a grandchild breaks it.
    pair = construction_pair("G1", 3)
    c1, _ = extremal_classes(pair)
    assert 0 in c1
    S = kempe_component(pair.G, pair.sigma, 4, 5)
    assert xi_contribution(pair, 0, S) == -1
    with pytest.raises(ValueError):
        xi_contribution(pair, 0, kempe_component(pair.G, pair.sigma, 0, 5))


@given(neighboring_pairs(max_n=5, max_k=5), st.data())
def test_level_change_is_bounded(data, draw):
    pair, k = data
    u = draw.draw(st.integers(0, pair.G.n - 1))
    c = draw.draw(st.integers(0, k - 1))
    S = kempe_component(pair.G, pair.sigma, u, c)
    if pair.v in S.vertices or S.vertices != kempe_component(pair.G, pair.tau, u, c).vertices:
        return
    for col in extract_configurations(pair):
        try:
            x = xi_contribution(pair, col, S)
        except ValueError:
            return
        assert -2 <= x <= 2


def test_connected_graph_counts():
    assert [len(connected_graphs(n)) for n in range(1, 6)] == [1, 1, 2, 6, 21]


def test_canonical_pairs_cover_orbits():
    G = Graph.from_edges(2, [(0, 1)])
    pairs = list(canonical_pairs(G, 3))
    assert all(hamming(p.sigma, p.tau) == 1 for p in pairs)
    assert {(p.sigma, p.tau) for p in pairs} == {((0, 0), (1, 0)), ((0, 0), (0, 1)),
                                                  ((0, 1), (2, 1)), ((0, 1), (1, 1)),
                                                  ((0, 1), (0, 2)), ((0, 1), (0, 0))}
