from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kempeflip import _kernels_py
from kempeflip.chains import (FLIP, GLAUBER, LIST_FLIP, LIST_GLAUBER, FlipParams, PRESETS,
                              full_lists, list_flip_step, parse_flip_params, run_chain,
                              state_space, stationary_distribution, transition_matrix, tv_decay)
from kempeflip.graph_core import Graph, is_proper

from strategies import colored_graphs

P3 = Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.mark.parametrize("values", [(0,), (1, 1), (0, Fraction(1, 2)), (0, 1, Fraction(1, 2), 1),
                                    (0, 1, -0.1)])
def test_invalid_params(values):
    with pytest.raises(ValueError):
        FlipParams(values)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_preset_text_round_trip(name):
    p = PRESETS[name]
    back = parse_flip_params(p.to_text())
    assert [float(x) for x in back.values] == [float(x) for x in p.values]
    assert back.exact
    assert p(p.n_max + 1) == 0


def test_parse_reports_gaps_and_noise():
    with pytest.raises(ValueError, match="missing"):
        parse_flip_params("1 1\n3 1/6\n")
    with pytest.raises(ValueError, match="line 2"):
        parse_flip_params("1 1\n2\n")
    assert parse_flip_params("# comment\n1 1\n2 0.25\n")(2) == 0.25


def test_acceptance_table():
    p = PRESETS["vigoda_eq11"]
    acc = p.acceptance_table(4)
    assert acc[0] == 0 and acc[1] == 1
    assert acc[2] == pytest.approx(13 / 84)


@pytest.mark.parametrize("kind", [GLAUBER, FLIP])
def test_rows_are_stochastic(kind):
    P = transition_matrix(P3, 3, kind, PRESETS["vigoda_eq11"])
    assert np.allclose(P.sum(axis=1), 1)
    assert (P >= 0).all()


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_kernel_is_symmetric_on_proper_colorings(name):
    G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    P = transition_matrix(G, 3, FLIP, PRESETS[name])
    states = state_space(G, 3)
    proper = [i for i, s in enumerate(states) if is_proper(G, s)]
    sub = P[np.ix_(proper, proper)]
    assert np.allclose(sub, sub.T, atol=1e-15)


def test_flip_with_unit_parameters_is_glauber():
    p = FlipParams((0, 1))
    assert np.array_equal(transition_matrix(P3, 3, FLIP, p), transition_matrix(P3, 3, GLAUBER))


def test_multiset_formulation_matches_on_proper_rows():
    G = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (1, 3)])
    p = PRESETS["dpp_obs51"]
    A = transition_matrix(G, 4, FLIP, p)
    B = transition_matrix(G, 4, FLIP, p, formulation="multiset")
    states = state_space(G, 4)
    rows = [i for i, s in enumerate(states) if is_proper(G, s)]
    assert np.abs(A[rows] - B[rows]).max() < 1e-15


def test_list_chains_with_full_lists_match_plain_chains():
    p = PRESETS["vigoda_eq11"]
    L = full_lists(3, 3)
    assert np.allclose(transition_matrix(P3, 3, LIST_FLIP, p, L), transition_matrix(P3, 3, FLIP, p))
    assert np.allclose(transition_matrix(P3, 3, LIST_GLAUBER, None, L),
                       transition_matrix(P3, 3, GLAUBER))


def test_list_flip_rejects_colorings_outside_lists():
    L = (frozenset({0, 1}),) * 3
    with pytest.raises(ValueError):
        list_flip_step(P3, (0, 1, 2), L, PRESETS["vigoda_eq11"], np.random.default_rng(0))


def test_tv_decay_is_monotone():
    P = transition_matrix(P3, 3, FLIP, PRESETS["vigoda_eq11"])
    states = state_space(P3, 3)
    curve = tv_decay(P, states.index((0, 1, 0)), 30)
    assert curve[0] > curve[-1]
    assert all(b <= a + 1e-12 for a, b in zip(curve, curve[1:]))


def test_stationary_detects_unreachable_tolerance():
    P = transition_matrix(P3, 3, GLAUBER)
    with pytest.raises(RuntimeError):
        stationary_distribution(P, tol=0.0)


@settings(max_examples=40)
@given(colored_graphs(proper=True), st.integers(0, 2 ** 32 - 1))
def test_chains_preserve_properness(data, seed):
    G, k, sigma = data
    for kind in (GLAUBER, FLIP):
        out = run_chain(G, sigma, k, 200, np.random.default_rng(seed), kind, PRESETS["vigoda_eq11"])
        assert is_proper(G, out)


@settings(max_examples=40)
@given(colored_graphs(), st.integers(0, 2 ** 32 - 1))
def test_compiled_and_reference_kernels_agree(data, seed):
    from kempeflip import _backend
    if _backend.BACKEND != "cython":
        pytest.skip("compiled kernels not built")
    G, k, sigma = data
    rng = np.random.default_rng(seed)
    steps = 100
    vs, cs, us = rng.integers(G.n, size=steps), rng.integers(k, size=steps), rng.random(steps)
    acc = PRESETS["dpp_obs51"].acceptance_table(G.n)
    indptr, indices = G.csr
    out = []
    for mod in (_backend.kernels, _kernels_py):
        col = np.asarray(sigma, dtype=np.int64)
        mod.flip_steps(indptr, indices, col, acc, vs, cs, us)
        g = np.asarray(sigma, dtype=np.int64)
        mod.glauber_steps(indptr, indices, g, vs, cs)
        comp = sorted(mod.component(indptr, indices, np.asarray(sigma, dtype=np.int64), 0, k - 1))
        out.append((col.tolist(), g.tolist(), comp))
    assert out[0] == out[1]
