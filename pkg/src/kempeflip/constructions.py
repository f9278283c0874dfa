"""Adversarial trees and random neighboring pairs."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .config import NeighboringPair, make_neighboring_pair
from .graph_core import Graph


def default_k(Delta: int) -> int:
    """``ceil((11/6 - 1/84000) * Delta)``."""
    return math.ceil((Fraction(11, 6) - Fraction(1, 84000)) * Delta)


def construct_G1(Delta: int) -> tuple:
    """Height-2 tree: root ``0``, children ``1..Delta``, grandchild ``Delta + i`` under ``i``.

    Child ``i`` gets color ``i - 1``, every grandchild gets ``Delta`` and the
    root gets ``Delta`` in ``sigma`` and ``Delta + 1`` in ``tau``.  Each child
    color then carries the configuration ``(3,2;(2),(1))``.
    """
    if Delta < 1:
        raise ValueError("Delta must be at least 1")
    n = 1 + 2 * Delta
    edges = [(0, i) for i in range(1, Delta + 1)] + [(i, Delta + i) for i in range(1, Delta + 1)]
    G = Graph.from_edges(n, edges)
    sigma = [Delta] + [i - 1 for i in range(1, Delta + 1)] + [Delta] * Delta
    tau = list(sigma)
    tau[0] = Delta + 1
    return G, tuple(sigma), tuple(tau)


def construct_G2(Delta: int) -> tuple:
    """Height-2 tree where each child has two leaf children.

    Children ``2j - 1`` and ``2j`` share color ``j - 1``; leaves are colored
    ``Delta`` and the root ``Delta`` / ``Delta + 1``.  Each shared color then
    carries the configuration ``(7,3;(3,3),(1,1))``.
    """
    if Delta < 2 or Delta % 2:
        raise ValueError("G2 needs an even Delta >= 2")
    n = 1 + 3 * Delta
    edges = [(0, i) for i in range(1, Delta + 1)]
    for i in range(1, Delta + 1):
        edges += [(i, Delta + 2 * i - 1), (i, Delta + 2 * i)]
    G = Graph.from_edges(n, edges)
    sigma = [Delta] + [(i - 1) // 2 for i in range(1, Delta + 1)] + [Delta] * (2 * Delta)
    tau = list(sigma)
    tau[0] = Delta + 1
    return G, tuple(sigma), tuple(tau)


def construction_pair(name: str, Delta: int) -> NeighboringPair:
    build = {"G1": construct_G1, "G2": construct_G2}.get(name)
    if build is None:
        raise ValueError(f"unknown construction {name!r}")
    return make_neighboring_pair(*build(Delta))


def random_graph(n: int, Delta: int, rng: np.random.Generator, proposals: int | None = None) -> Graph:
    """Random graph with maximum degree at most ``Delta``.

    Proposes uniformly random vertex pairs and keeps an edge when neither end
    is saturated; ``proposals`` defaults to ``n * Delta``.
    """
    if n < 1 or Delta < 0:
        raise ValueError("need n >= 1 and Delta >= 0")
    deg = [0] * n
    edges = set()
    for _ in range(proposals if proposals is not None else n * Delta):
        if n < 2:
            break
        a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
        e = (min(a, b), max(a, b))
        if e in edges or deg[a] >= Delta or deg[b] >= Delta:
            continue
        edges.add(e)
        deg[a] += 1
        deg[b] += 1
    return Graph.from_edges(n, sorted(edges))


def random_neighboring_pair(n: int, Delta: int, k: int, seed) -> NeighboringPair:
    """Random graph plus two random colorings that differ at one random vertex.

    The colorings may be improper.
    """
    if k < 2:
        raise ValueError("need k >= 2 to build two different colorings")
    rng = np.random.default_rng(seed)
    G = random_graph(n, Delta, rng)
    sigma = [int(x) for x in rng.integers(k, size=n)]
    v = int(rng.integers(n))
    tau = list(sigma)
    tau[v] = int((sigma[v] + 1 + rng.integers(k - 1)) % k)
    return make_neighboring_pair(G, sigma, tau)
