"""Graphs, colorings and Kempe components.

Colorings are plain tuples of integers in ``0..k-1``; the color count ``k``
travels separately because most operations never need it.  Properness is not
assumed anywhere: improper colorings are legal states of every chain.

A Kempe component ``S_sigma(v, c)`` is the set of vertices reachable from
``v`` along paths whose consecutive vertices alternate between the colors
``sigma(v)`` and ``c``.  Only bichromatic edges are traversed, so a
monochromatic edge never joins two vertices into one component.  On proper
colorings this is the same as connectivity in the subgraph induced by the two
color classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from collections import deque
from typing import Iterable, Sequence

import numpy as np

Coloring = tuple


class GraphParseError(ValueError):
    """Raised when an edge-list document is malformed."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    Attributes
    ----------
    n : int
        Number of vertices, labelled ``0..n-1``.
    adjacency : tuple of tuple of int
        Sorted neighbor list per vertex.
    """

    n: int
    adjacency: tuple
    _csr: tuple = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple]) -> "Graph":
        nbrs = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        indptr = np.zeros(n + 1, dtype=np.int64)
        for i, row in enumerate(adjacency):
            indptr[i + 1] = indptr[i] + len(row)
        indices = np.fromiter((w for row in adjacency for w in row),
                              dtype=np.int64, count=int(indptr[-1]))
        return cls(n, adjacency, (indptr, indices))

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def edges(self) -> list:
        return [(u, w) for u in range(self.n) for w in self.adjacency[u] if u < w]

    @property
    def csr(self) -> tuple:
        """``(indptr, indices)`` int64 arrays for the compiled kernels."""
        return self._csr

    def to_text(self) -> str:
        es = self.edges
        lines = [f"{self.n} {len(es)}"] + [f"{u} {w}" for u, w in es]
        return "\n".join(lines) + "\n"


def load_graph(text: str) -> Graph:
    """Parse an edge-list document.

    The first non-empty line holds ``n m``; each of the next ``m`` lines holds
    an edge ``u v``.  Duplicate edges are merged.
    """
    lines = [(i + 1, ln.strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphParseError("line 1: missing header 'n m'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
        raise GraphParseError(f"line {lineno}: expected header 'n m', got {header!r}")
    n, m = int(parts[0]), int(parts[1])
    if n < 0 or m < 0:
        raise GraphParseError(f"line {lineno}: negative count in header")
    body = lines[1:]
    if len(body) != m:
        raise GraphParseError(
            f"line {lineno}: header announces {m} edges but {len(body)} edge lines follow")
    edges = []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise GraphParseError(f"line {lineno}: expected 'u v', got {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphParseError(f"line {lineno}: self-loop at vertex {u}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def check_coloring(G: Graph, sigma: Sequence[int], k: int) -> Coloring:
    """Return ``sigma`` as a tuple after validating its length and range."""
    sigma = tuple(int(x) for x in sigma)
    if len(sigma) != G.n:
        raise ValueError(f"coloring has length {len(sigma)}, graph has {G.n} vertices")
    if any(not 0 <= x < k for x in sigma):
        raise ValueError(f"coloring entries must lie in 0..{k - 1}")
    return sigma


@dataclass(frozen=True)
class KempeComponent:
    """A Kempe component together with the anchor that produced it.

    Two components with equal vertex sets but different anchors are distinct
    multiset entries.  :attr:`flip_key` identifies the flip itself (vertex set
    plus swapped color pair), which is what matters for dynamics.
    """

    vertices: frozenset
    anchor: tuple
    color_pair: tuple

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def flip_key(self) -> tuple:
        return (self.vertices, self.color_pair)

    def __len__(self) -> int:
        return len(self.vertices)

    def __bool__(self) -> bool:
        return bool(self.vertices)


def component_vertices(G: Graph, sigma: Sequence[int], v: int, c: int) -> frozenset:
    """Vertex set of ``S_sigma(v, c)``, empty when ``c == sigma(v)``."""
    a = sigma[v]
    if c == a:
        return frozenset()
    adj = G.adjacency
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        want = c if sigma[x] == a else a
        for w in adj[x]:
            if w not in seen and sigma[w] == want:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def kempe_component(G: Graph, sigma: Sequence[int], v: int, c: int) -> KempeComponent:
    """Extract ``S_sigma(v, c)`` by breadth-first search over bichromatic edges."""
    a = sigma[v]
    pair = (a,) if c == a else (min(a, c), max(a, c))
    return KempeComponent(component_vertices(G, sigma, v, c), (v, c), pair)


def flip(sigma: Sequence[int], S: KempeComponent | None) -> Coloring:
    """Swap the two colors of ``S`` on its vertices."""
    sigma = tuple(sigma)
    if not S:
        return sigma
    x, y = S.color_pair
    out = list(sigma)
    for w in S.vertices:
        out[w] = y if out[w] == x else x
    return tuple(out)


def is_proper(G: Graph, sigma: Sequence[int]) -> bool:
    return all(sigma[u] != sigma[w] for u in range(G.n) for w in G.adjacency[u] if u < w)


def available_colors(G: Graph, sigma: Sequence[int], v: int, k: int) -> set:
    """Colors not carried by any neighbor of ``v``."""
    used = {sigma[w] for w in G.adjacency[v]}
    return {c for c in range(k) if c not in used}


def enumerate_components(G: Graph, sigma: Sequence[int], k: int) -> list:
    """The multiset of all ``S_sigma(v, c)``: one entry per ``(v, c)``, ``n*k`` in total."""
    return [kempe_component(G, sigma, v, c) for v in range(G.n) for c in range(k)]


def distinct_flips(G: Graph, sigma: Sequence[int], k: int) -> dict:
    """Map each distinct nonempty flip to a representative component.

    A component of size ``alpha`` arises from exactly ``alpha`` anchors, so
    the vertex-color formulation flips it with total probability
    ``p_alpha / (n k)``.
    """
    out = {}
    covered = set()
    for v in range(G.n):
        for c in range(k):
            if c == sigma[v] or (v, c) in covered:
                continue
            S = kempe_component(G, sigma, v, c)
            out[S.flip_key] = S
            x, y = S.color_pair
            for w in S.vertices:
                covered.add((w, y if sigma[w] == x else x))
    return out


def hamming(sigma: Sequence[int], tau: Sequence[int]) -> int:
    return sum(1 for x, y in zip(sigma, tau) if x != y)
