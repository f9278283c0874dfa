"""Pure-Python reference kernels.

Same signatures and semantics as the compiled ``_ext`` module.  Colorings are
int64 numpy arrays updated in place; graphs are passed in CSR form.
"""

from __future__ import annotations

import numpy as np

RESERVED = 2
SHARED_FLIP = 1
NO_CHANGE = 0


def _bfs(indptr, indices, col, v, c):
    a = col[v]
    if c == a:
        return []
    seen = {v}
    order = [v]
    head = 0
    while head < len(order):
        x = order[head]
        head += 1
        want = c if col[x] == a else a
        for j in range(indptr[x], indptr[x + 1]):
            w = indices[j]
            if w not in seen and col[w] == want:
                seen.add(w)
                order.append(w)
    return order


def _swap(col, verts, a, c):
    for w in verts:
        col[w] = c if col[w] == a else a


def component(indptr, indices, colors, v, c):
    """Vertices of ``S(v, c)`` in breadth-first order."""
    return np.array(_bfs(indptr.tolist(), indices.tolist(), colors.tolist(), int(v), int(c)),
                    dtype=np.int64)


def glauber_steps(indptr, indices, colors, vs, cs):
    ip, ix, col = indptr.tolist(), indices.tolist(), colors.tolist()
    for v, c in zip(vs.tolist(), cs.tolist()):
        if all(col[ix[j]] != c for j in range(ip[v], ip[v + 1])):
            col[v] = c
    colors[:] = col


def flip_steps(indptr, indices, colors, acc, vs, cs, us):
    ip, ix, col = indptr.tolist(), indices.tolist(), colors.tolist()
    acc = acc.tolist()
    for v, c, u in zip(vs.tolist(), cs.tolist(), us.tolist()):
        S = _bfs(ip, ix, col, v, c)
        if S and u < acc[len(S)]:
            _swap(col, S, col[v], c)
    colors[:] = col


def coupled_shared_step(indptr, indices, sigma, tau, v, w, c, u, acc):
    """One anchor draw of the coupled flip step.

    Returns ``RESERVED`` when the anchor ``(w, c)`` in ``sigma`` gives the
    empty component or a component whose flip differs between the two
    colorings (it contains ``v`` or would merge with ``v`` in ``tau``).
    Otherwise the shared component is flipped in both colorings with
    probability ``acc[size]``.
    """
    ip, ix = indptr, indices
    col = sigma.tolist()
    a = col[w]
    if c == a:
        return RESERVED
    S = _bfs(ip, ix, col, w, c)
    tv = int(tau[v])
    if v in S:
        return RESERVED
    if tv == a or tv == c:
        for s in S:
            if col[s] != tv:
                for j in range(ip[s], ip[s + 1]):
                    if ix[j] == v:
                        return RESERVED
    if u < acc[len(S)]:
        for s in S:
            x = sigma[s]
            y = c if x == a else a
            sigma[s] = y
            tau[s] = y
        return SHARED_FLIP
    return NO_CHANGE


def grand_coupling_steps(indptr, indices, x, y, acc, vs, cs, us):
    """Run two flip chains on shared variates; return the first step at which
    they agree (0 if already equal) or -1 if they never do."""
    ip, ix = indptr.tolist(), indices.tolist()
    cx, cy = x.tolist(), y.tolist()
    diff = sum(1 for a, b in zip(cx, cy) if a != b)
    if diff == 0:
        return 0
    t = 0
    for v, c, u in zip(vs.tolist(), cs.tolist(), us.tolist()):
        t += 1
        for col in (cx, cy):
            S = _bfs(ip, ix, col, v, c)
            if S and u < acc[len(S)]:
                _swap(col, S, col[v], c)
        if cx == cy:
            x[:] = cx
            y[:] = cy
            return t
    x[:] = cx
    y[:] = cy
    return -1
