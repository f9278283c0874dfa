import pytest
from hypothesis import given

from kempeflip.graph_core import (Graph, GraphParseError, available_colors, check_coloring,
                                  distinct_flips, enumerate_components, flip, hamming, is_proper,
                                  kempe_component, load_graph)

from strategies import colored_graphs, graphs


@given(graphs())
def test_text_round_trip(G):
    H = load_graph(G.to_text())
    assert H.n == G.n and H.edges == G.edges


def test_duplicate_edges_merge():
    G = load_graph("3 3\n0 1\n1 0\n1 2\n")
    assert G.edges == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text, where", [
    ("", "line 1"),
    ("3\n", "line 1"),
    ("3 2\n0 1\n", "line 1"),
    ("3 1\n0 5\n", "line 2"),
    ("3 1\n1 1\n", "line 2"),
    ("3 1\n0 x\n", "line 2"),
])
def test_parse_errors_name_the_line(text, where):
    with pytest.raises(GraphParseError, match=where):
        load_graph(text)


def test_check_coloring_rejects_bad_input():
    G = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        check_coloring(G, (0,), 3)
    with pytest.raises(ValueError):
        check_coloring(G, (0, 3), 3)
    assert check_coloring(G, [0, 2], 3) == (0, 2)


def test_component_on_path():
    G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    S = kempe_component(G, (0, 1, 0, 2), 0, 1)
    assert S.vertices == frozenset({0, 1, 2}) and S.color_pair == (0, 1)
    assert flip((0, 1, 0, 2), S) == (1, 0, 1, 2)
    assert not kempe_component(G, (0, 1, 0, 2), 0, 0)


@given(colored_graphs(proper=True))
def test_flip_is_an_involution_on_proper_colorings(data):
    G, k, sigma = data
    for v in range(G.n):
        for c in range(k):
            S = kempe_component(G, sigma, v, c)
            tau = flip(sigma, S)
            assert is_proper(G, tau)
            if S:
                back = kempe_component(G, tau, v, sigma[v])
                assert back.vertices == S.vertices
                assert flip(tau, back) == sigma


@given(colored_graphs(proper=True))
def test_anchors_per_flip_equal_its_size(data):
    G, k, sigma = data
    flips = distinct_flips(G, sigma, k)
    assert sum(S.size for S in flips.values()) == G.n * (k - 1)
    assert len(enumerate_components(G, sigma, k)) == G.n * k


@given(colored_graphs(proper=True))
def test_single_vertex_components_are_free_colors(data):
    G, k, sigma = data
    for v in range(G.n):
        free = {c for c in range(k) if c != sigma[v] and kempe_component(G, sigma, v, c).size == 1}
        assert free == available_colors(G, sigma, v, k) - {sigma[v]}


def test_hamming():
    assert hamming((0, 1, 2), (0, 2, 2)) == 1
    assert hamming((), ()) == 0
