"""The weighted pre-metric on colorings and the expected-change evaluator.

Two colorings that differ at one vertex ``v`` are joined by an edge of weight
``omega = 1 - eta * (1 - gamma)``, where ``gamma`` is the share of ``v``'s
neighbors sitting in extremal configurations.  The induced metric ``d`` is the
shortest-path distance; ``d_B = d_H - d``.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .chains import FlipParams
from .config import NeighboringPair, extract_configurations, extremal_classes, gamma
from .coupling import greedy_coupling_distribution
from .graph_core import Graph, KempeComponent, flip, hamming

DELTA = Fraction(11, 6) - Fraction(161, 88)
DEFAULT_STATE_CAP = 1 << 16


def default_eta(k: int, Delta: int) -> float:
    """``delta * Delta / (53 k)`` with ``delta = 1/264``."""
    if k < 1 or Delta < 1:
        raise ValueError("need k >= 1 and Delta >= 1")
    return float(DELTA * Delta / (53 * k))


@dataclass
class MetricParams:
    eta: float
    p: FlipParams
    delta: Fraction = DELTA
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not 0 < self.eta < 0.5:
            raise ValueError("eta must lie in (0, 1/2)")


def _relabel(x: Sequence[int], y: Sequence[int]) -> tuple:
    """Rename colors by first appearance in ``x`` then ``y``."""
    names: dict = {}
    rx = tuple(names.setdefault(c, len(names)) for c in x)
    ry = tuple(names.setdefault(c, len(names)) for c in y)
    return rx, ry


def _pair_at(G: Graph, x: tuple, y: tuple) -> NeighboringPair:
    v = next(i for i in range(G.n) if x[i] != y[i])
    return NeighboringPair(G, x, y, v)


def edge_weight(pair: NeighboringPair, mp: MetricParams) -> float:
    """``1 - eta * (1 - gamma)`` for a neighboring pair."""
    key = (pair.G.adjacency,) + _relabel(pair.sigma, pair.tau)
    w = mp.cache.get(key)
    if w is None:
        w = 1.0 - mp.eta * (1.0 - gamma(pair))
        mp.cache[key] = w
    return w


def _omega(G: Graph, x: tuple, y: tuple, mp: MetricParams) -> float:
    return edge_weight(_pair_at(G, x, y), mp)


def exact_metric(G: Graph, k: int, sigma: Sequence[int], tau: Sequence[int], mp: MetricParams,
                 cap: int = DEFAULT_STATE_CAP) -> float:
    """Shortest weighted path between two colorings over all ``k^n`` colorings.

    Raises
    ------
    ValueError
        If ``k^n`` exceeds ``cap``.
    """
    if k ** G.n > cap:
        raise ValueError(f"state space {k}^{G.n} exceeds cap {cap}")
    src, dst = tuple(sigma), tuple(tau)
    if src == dst:
        return 0.0
    dist = {src: 0.0}
    heap = [(0.0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if x == dst:
            return d
        if d > dist.get(x, float("inf")):
            continue
        for i in range(G.n):
            for c in range(k):
                if c == x[i]:
                    continue
                y = x[:i] + (c,) + x[i + 1:]
                nd = d + _omega(G, x, y, mp)
                if nd < dist.get(y, float("inf")):
                    dist[y] = nd
                    heapq.heappush(heap, (nd, y))
    raise RuntimeError("target coloring unreachable")


def monotone_metric(G: Graph, sigma: Sequence[int], tau: Sequence[int], mp: MetricParams) -> float:
    """Shortest path among paths that change each differing vertex once, straight
    to its target color (dynamic programming over subsets)."""
    x0, y0 = tuple(sigma), tuple(tau)
    D = [i for i in range(G.n) if x0[i] != y0[i]]
    m = len(D)
    if m == 0:
        return 0.0

    def state(mask):
        out = list(x0)
        for b, i in enumerate(D):
            if mask >> b & 1:
                out[i] = y0[i]
        return tuple(out)

    best = [float("inf")] * (1 << m)
    best[0] = 0.0
    for mask in range(1 << m):
        if best[mask] == float("inf"):
            continue
        cur = state(mask)
        for b in range(m):
            if mask >> b & 1:
                continue
            nxt = list(cur)
            nxt[D[b]] = y0[D[b]]
            nxt = tuple(nxt)
            w = best[mask] + _omega(G, cur, nxt, mp)
            if w < best[mask | 1 << b]:
                best[mask | 1 << b] = w
    return best[-1]


def metric(G: Graph, k: int, sigma: Sequence[int], tau: Sequence[int], mp: MetricParams,
           cap: int = DEFAULT_STATE_CAP) -> float:
    """The induced metric ``d``.

    Every path with more than ``m = d_H`` steps weighs at least
    ``(m + 1)(1 - eta)``, which is ``>= m`` when ``eta <= 1/(m + 1)``; the
    subset recursion over monotone paths is then exact.  Otherwise the full
    shortest-path search is used.
    """
    m = hamming(sigma, tau)
    if m <= 1:
        return 0.0 if m == 0 else _omega(G, tuple(sigma), tuple(tau), mp)
    if mp.eta <= 1.0 / (m + 1):
        return monotone_metric(G, sigma, tau, mp)
    return exact_metric(G, k, sigma, tau, mp, cap)


def d_B(G: Graph, k: int, sigma: Sequence[int], tau: Sequence[int], mp: MetricParams,
        cap: int = DEFAULT_STATE_CAP) -> float:
    """``d_H - d``."""
    return hamming(sigma, tau) - metric(G, k, sigma, tau, mp, cap)


@dataclass(frozen=True)
class Nabla:
    total: float
    hamming: float
    extremal: float

    def __iter__(self):
        return iter((self.total, self.hamming, self.extremal))


def nabla(pair: NeighboringPair, k: int, p: FlipParams, mp: MetricParams,
          cap: int = DEFAULT_STATE_CAP) -> Nabla:
    """``n k`` times the expected one-step change of ``d``, ``d_H`` and ``-d_B``.

    Returns ``(nabla, nabla_H, nabla_B)`` with ``nabla = nabla_H + nabla_B``.
    """
    G = pair.G
    nk = G.n * k
    omega = edge_weight(pair, mp)
    eta_term = 1.0 - omega
    dist = greedy_coupling_distribution(pair, k, p)
    tot = ham = ext = 0.0
    for o in dist.outcomes:
        s2, t2 = o.apply(pair.sigma, pair.tau)
        m = float(o.mass)
        dh = hamming(s2, t2)
        d = metric(G, k, s2, t2, mp, cap)
        tot += m * (d - omega)
        ham += m * (dh - 1)
        ext -= m * ((dh - d) - eta_term)
    return Nabla(nk * tot, nk * ham, nk * ext)


def hamming_bound(pair: NeighboringPair, k: int, delta=DELTA) -> float:
    """``(11/6 - delta (1 - gamma)) Delta - k``."""
    Delta = pair.G.max_degree
    return (11 / 6 - float(delta) * (1 - gamma(pair))) * Delta - k


def contraction_bound(Delta: int, k: int, delta=DELTA) -> float:
    """``(11/6 - delta/318) Delta - k``."""
    return (11 / 6 - float(delta) / 318) * Delta - k


def extremal_bound(pair: NeighboringPair, k: int, eta: float) -> float:
    """``-eta (k/Delta - 3/2) gamma + 2 eta (10 + 16 k/Delta)(1 - gamma)``."""
    Delta = pair.G.max_degree
    g = gamma(pair)
    return -eta * (k / Delta - 1.5) * g + 2 * eta * (10 + 16 * k / Delta) * (1 - g)


def _level(pair: NeighboringPair, c: int) -> int:
    c1, c2 = extremal_classes(pair, extract_configurations(pair))
    return 1 if c in c1 else 2 if c in c2 else 0


def xi_contribution(pair: NeighboringPair, c: int, S: KempeComponent, p: FlipParams | None = None) -> int:
    """Change of color ``c``'s extremal level (0 none, 1 size one, 2 size two)
    after flipping ``S`` in both colorings.

    Raises
    ------
    ValueError
        If ``S`` contains ``v`` or is not a component of both colorings.
    """
    from .coupling import reserved_flips
    if pair.v in S.vertices:
        raise ValueError("component contains the disagreement vertex")
    k = 1 + max(max(pair.sigma), max(pair.tau), *S.color_pair)
    res_s, res_t = reserved_flips(pair, k)
    if S.flip_key in res_s or S.flip_key in res_t:
        raise ValueError("component is coupled around the disagreement vertex")
    after = NeighboringPair(pair.G, flip(pair.sigma, S), flip(pair.tau, S), pair.v)
    return _level(after, c) - _level(pair, c)


# ---------------------------------------------------------------- exhaustive enumeration

def canonical_pairs(G: Graph, k: int):
    """One neighboring pair per orbit under renaming colors.

    Colors of ``sigma`` are numbered by first appearance, and ``tau(v)`` is
    either a color already used by ``sigma`` or the next unused one.
    """
    n = G.n

    def growth(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(min(top + 2, k)):
            yield from growth(prefix + [c], max(top, c))

    for sigma in growth([], -1):
        used = max(sigma) + 1
        for v in range(n):
            for c in range(min(used + 1, k)):
                if c == sigma[v]:
                    continue
                tau = sigma[:v] + (c,) + sigma[v + 1:]
                yield NeighboringPair(G, sigma, tau, v)


def connected_graphs(n: int) -> list:
    """All connected graphs on ``n`` vertices up to isomorphism."""
    pairs = list(itertools.combinations(range(n), 2))
    perms = list(itertools.permutations(range(n)))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        if len(edges) < n - 1:
            continue
        canon = min(tuple(sorted(tuple(sorted((pi[a], pi[b]))) for a, b in edges)) for pi in perms)
        if canon in seen:
            continue
        seen.add(canon)
        G = Graph.from_edges(n, canon)
        if _connected(G):
            out.append(G)
    return out


def _connected(G: Graph) -> bool:
    if G.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for w in G.adjacency[x]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n
