"""Hypothesis strategies for small graphs and colorings."""

from hypothesis import strategies as st

from kempeflip.graph_core import Graph


@st.composite
def graphs(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, w) for u in range(n) for w in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def colored_graphs(draw, max_n=6, max_k=5, proper=False):
    G = draw(graphs(max_n=max_n))
    k = draw(st.integers(max(2, G.max_degree + 1 if proper else 2), max(max_k, G.max_degree + 2)))
    if proper:
        sigma = []
        for v in range(G.n):
            used = {sigma[w] for w in G.adjacency[v] if w < v}
            free = [c for c in range(k) if c not in used]
            sigma.append(draw(st.sampled_from(free)))
    else:
        sigma = draw(st.lists(st.integers(0, k - 1), min_size=G.n, max_size=G.n))
    return G, k, tuple(sigma)


@st.composite
def neighboring_pairs(draw, max_n=5, max_k=5):
    from kempeflip.config import make_neighboring_pair
    G, k, sigma = draw(colored_graphs(max_n=max_n, max_k=max_k))
    v = draw(st.integers(0, G.n - 1))
    c = draw(st.integers(0, k - 1).filter(lambda c: c != sigma[v]))
    tau = sigma[:v] + (c,) + sigma[v + 1:]
    return make_neighboring_pair(G, sigma, tau), k
