"""Glauber, flip and list-coloring flip dynamics.

Every stochastic function takes an explicit ``numpy.random.Generator``.  A
step draws ``v``, then ``c``, then (for flip chains) one uniform acceptance
variate, so identical seeds give identical trajectories.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .graph_core import Graph, distinct_flips, flip, kempe_component

GLAUBER = "glauber"
FLIP = "flip"
LIST_GLAUBER = "list_glauber"
LIST_FLIP = "list_flip"
CHAIN_KINDS = (GLAUBER, FLIP, LIST_GLAUBER, LIST_FLIP)

DEFAULT_STATE_CAP = 2 ** 20


def _as_number(x):
    if isinstance(x, (Fraction, float)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return float(x)


@dataclass(frozen=True)
class FlipParams:
    """Flip parameters ``p_0, p_1, ..., p_Nmax``; ``p_alpha = 0`` beyond ``N_max``.

    Parameters
    ----------
    values : sequence
        ``p_0..p_Nmax``.  Entries may be ``Fraction`` (exact) or ``float``.
        ``p_0 = 0``, ``p_1 = 1`` and monotonicity are enforced.
    """

    values: tuple

    def __post_init__(self):
        vals = tuple(_as_number(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ValueError("need at least p_0 and p_1")
        if vals[0] != 0:
            raise ValueError("p_0 must be 0")
        if vals[1] != 1:
            raise ValueError("p_1 must be 1")
        for i in range(2, len(vals)):
            if vals[i] < 0 or vals[i] > vals[i - 1]:
                raise ValueError(f"flip parameters must be non-increasing and nonnegative (p_{i})")

    @classmethod
    def from_tail(cls, tail: Sequence) -> "FlipParams":
        """Build from ``p_2, p_3, ...``."""
        return cls((0, 1) + tuple(tail))

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    @property
    def exact(self) -> bool:
        return all(isinstance(x, Fraction) for x in self.values)

    def __call__(self, alpha: int):
        if 0 <= alpha < len(self.values):
            return self.values[alpha]
        return self.values[0] * 0

    def acceptance(self, alpha: int):
        """``p_alpha / alpha`` (0 for the empty component)."""
        return self(alpha) / alpha if alpha > 0 else self(0)

    def as_floats(self) -> "FlipParams":
        return FlipParams(tuple(float(x) for x in self.values))

    def acceptance_table(self, n: int) -> np.ndarray:
        """Float array of ``p_alpha / alpha`` for ``alpha = 0..n``."""
        return np.array([float(self.acceptance(a)) for a in range(n + 1)])

    def to_text(self) -> str:
        return "".join(f"{a} {x}\n" for a, x in enumerate(self.values) if a >= 1)


def parse_flip_params(text: str) -> FlipParams:
    """Read ``alpha p_alpha`` lines; rationals may be written ``a/b``.

    Missing ``alpha`` values below the largest one listed are an error;
    ``p_0 = 0`` is implied.
    """
    entries = {0: Fraction(0)}
    for lineno, ln in enumerate(text.splitlines(), 1):
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'alpha p_alpha', got {ln!r}")
        alpha = int(parts[0])
        try:
            val = Fraction(parts[1])
        except ValueError:
            val = float(parts[1])
        entries[alpha] = val
    top = max(entries)
    missing = [a for a in range(top + 1) if a not in entries]
    if missing:
        raise ValueError(f"missing flip parameters for alpha = {missing}")
    return FlipParams(tuple(entries[a] for a in range(top + 1)))


VIGODA_EQ11 = FlipParams.from_tail((Fraction(13, 42), Fraction(1, 6), Fraction(2, 21),
                                    Fraction(1, 21), Fraction(1, 84)))
CM_EQ12 = FlipParams.from_tail((0.296706, 0.166762, 0.101790, 0.058475, 0.025989))
DPP_OBS51 = FlipParams.from_tail((Fraction(185, 616), Fraction(1, 6), Fraction(47, 462),
                                  Fraction(9, 154), Fraction(2, 77)))

PRESETS = {"vigoda_eq11": VIGODA_EQ11, "cm_eq12": CM_EQ12, "dpp_obs51": DPP_OBS51}


def preset(name: str) -> FlipParams:
    try:
        return PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None


# ---------------------------------------------------------------- list colorings

def full_lists(n: int, k: int) -> tuple:
    return tuple(frozenset(range(k)) for _ in range(n))


def check_lists(G: Graph, L) -> tuple:
    L = tuple(frozenset(x) for x in L)
    if len(L) != G.n:
        raise ValueError(f"list assignment has {len(L)} entries, graph has {G.n} vertices")
    return L


def is_list_coloring(sigma: Sequence[int], L) -> bool:
    return all(sigma[u] in L[u] for u in range(len(sigma)))


def _require_list_coloring(sigma, L):
    if not is_list_coloring(sigma, L):
        bad = next(u for u in range(len(sigma)) if sigma[u] not in L[u])
        raise ValueError(f"not an L-coloring: vertex {bad} has color {sigma[bad]} outside its list")


def is_flippable(S, sigma: Sequence[int], c: int, L) -> bool:
    """True iff every vertex of ``S`` has both swap colors in its list."""
    if not S:
        return True
    v = S.anchor[0]
    need = {sigma[v], c}
    return all(need <= L[u] for u in S.vertices)


# ---------------------------------------------------------------- single steps

def glauber_step(G: Graph, sigma: Sequence[int], k: int, rng: np.random.Generator):
    v = int(rng.integers(G.n))
    c = int(rng.integers(k))
    return _glauber_move(G, tuple(sigma), v, c)


def _glauber_move(G, sigma, v, c):
    if any(sigma[w] == c for w in G.adjacency[v]):
        return sigma
    out = list(sigma)
    out[v] = c
    return tuple(out)


def flip_step(G: Graph, sigma: Sequence[int], k: int, p: FlipParams, rng: np.random.Generator):
    sigma = tuple(sigma)
    v = int(rng.integers(G.n))
    c = int(rng.integers(k))
    u = rng.random()
    S = kempe_component(G, sigma, v, c)
    if u < float(p.acceptance(S.size)):
        return flip(sigma, S)
    return sigma


def list_glauber_step(G: Graph, sigma: Sequence[int], L, rng: np.random.Generator):
    sigma = tuple(sigma)
    _require_list_coloring(sigma, L)
    v = int(rng.integers(G.n))
    choices = sorted(L[v])
    c = choices[int(rng.integers(len(choices)))]
    return _glauber_move(G, sigma, v, c)


def list_flip_step(G: Graph, sigma: Sequence[int], L, p: FlipParams, rng: np.random.Generator):
    sigma = tuple(sigma)
    _require_list_coloring(sigma, L)
    v = int(rng.integers(G.n))
    choices = sorted(L[v])
    c = choices[int(rng.integers(len(choices)))]
    u = rng.random()
    S = kempe_component(G, sigma, v, c)
    if is_flippable(S, sigma, c, L) and u < float(p.acceptance(S.size)):
        return flip(sigma, S)
    return sigma


def run_chain(G: Graph, sigma: Sequence[int], k: int, steps: int, rng: np.random.Generator,
              kind: str = FLIP, p: FlipParams | None = None) -> tuple:
    """Run ``steps`` steps of the Glauber or flip chain with the compiled kernel.

    All variates are drawn up front (``v``, ``c`` and acceptance arrays) so the
    compiled and pure-Python kernels consume the same stream.
    """
    from . import _backend
    colors = np.asarray(sigma, dtype=np.int64).copy()
    vs = rng.integers(G.n, size=steps)
    cs = rng.integers(k, size=steps)
    indptr, indices = G.csr
    if kind == GLAUBER:
        _backend.kernels.glauber_steps(indptr, indices, colors, vs, cs)
    elif kind == FLIP:
        if p is None:
            raise ValueError("flip chain needs flip parameters")
        us = rng.random(steps)
        _backend.kernels.flip_steps(indptr, indices, colors, p.acceptance_table(G.n), vs, cs, us)
    else:
        raise ValueError(f"run_chain supports {GLAUBER!r} and {FLIP!r}, not {kind!r}")
    return tuple(int(x) for x in colors)


# ---------------------------------------------------------------- exact kernels

def _state_space(G: Graph, k: int, L, cap: int):
    if L is None:
        size = k ** G.n
        if size > cap:
            raise ValueError(f"state space {k}^{G.n} = {size} exceeds cap {cap}")
        states = list(itertools.product(range(k), repeat=G.n))
    else:
        lists = [sorted(x) for x in L]
        size = math.prod(len(x) for x in lists)
        if size > cap:
            raise ValueError(f"state space of size {size} exceeds cap {cap}")
        states = list(itertools.product(*lists))
    return states, {s: i for i, s in enumerate(states)}


def state_space(G: Graph, k: int, L=None, cap: int = DEFAULT_STATE_CAP) -> list:
    """All colorings (or all L-colorings) in the row order of :func:`transition_matrix`."""
    return _state_space(G, k, L, cap)[0]


def transition_matrix(G: Graph, k: int, kind: str = FLIP, p: FlipParams | None = None, L=None,
                      cap: int = DEFAULT_STATE_CAP, formulation: str = "vertex") -> np.ndarray:
    """Exact one-step kernel over all colorings (or all L-colorings for list chains).

    ``formulation="multiset"`` builds the flip kernel by choosing each
    distinct flip with probability ``1/(n k)`` and accepting with ``p_alpha``,
    the second description of the flip dynamics; it must agree with the
    default vertex-color formulation.
    """
    if kind not in CHAIN_KINDS:
        raise ValueError(f"unknown chain kind {kind!r}")
    if kind in (FLIP, LIST_FLIP) and p is None:
        raise ValueError("flip chains need flip parameters")
    if kind in (LIST_GLAUBER, LIST_FLIP):
        if L is None:
            raise ValueError("list chains need a list assignment")
        L = check_lists(G, L)
    states, index = _state_space(G, k, L if kind in (LIST_GLAUBER, LIST_FLIP) else None, cap)
    N = len(states)
    P = np.zeros((N, N))
    n = G.n
    for i, s in enumerate(states):
        if kind == FLIP and formulation == "multiset":
            w = 1.0 / (n * k)
            for S in distinct_flips(G, s, k).values():
                P[i, index[flip(s, S)]] += w * float(p(S.size))
            P[i, i] += 1.0 - P[i].sum()
            continue
        for v in range(n):
            colors = range(k) if L is None or kind in (GLAUBER, FLIP) else sorted(L[v])
            colors = list(colors)
            w = 1.0 / (n * len(colors))
            for c in colors:
                if kind in (GLAUBER, LIST_GLAUBER):
                    P[i, index[_glauber_move(G, s, v, c)]] += w
                    continue
                S = kempe_component(G, s, v, c)
                acc = float(p.acceptance(S.size))
                if kind == LIST_FLIP and not is_flippable(S, s, c, L):
                    acc = 0.0
                if acc > 0:
                    P[i, index[flip(s, S)]] += w * acc
                P[i, i] += w * (1.0 - acc)
    return P


def stationary_distribution(P: np.ndarray, tol: float = 1e-13, max_iter: int = 10 ** 6,
                            start: np.ndarray | None = None) -> np.ndarray:
    """Stationary vector by power iteration from the uniform distribution.

    Raises
    ------
    RuntimeError
        If the iteration stalls above ``tol`` (for instance when ``tol`` is
        below floating-point resolution) or runs out of iterations.
    """
    x = np.full(P.shape[0], 1.0 / P.shape[0]) if start is None else np.asarray(start, float)
    # Squaring accelerates convergence on slowly mixing kernels.
    Q = P.copy()
    squaring = Q.shape[0] <= 4096
    best, stalled = np.inf, 0
    for _ in range(max_iter):
        y = x @ Q
        diff = np.abs(y - x).sum()
        if diff < tol:
            return y / y.sum()
        x = y
        if squaring:
            Q = Q @ Q
            stalled = stalled + 1 if diff >= best else 0
            best = min(best, diff)
            if stalled > 8:
                raise RuntimeError(f"power iteration stalled at {diff:.3g} > tol = {tol:g}")
    raise RuntimeError("power iteration did not converge")


def uniform_on_proper(G: Graph, states: list) -> np.ndarray:
    from .graph_core import is_proper
    mask = np.array([is_proper(G, s) for s in states], dtype=float)
    return mask / mask.sum()


def tv_distance(mu: np.ndarray, nu: np.ndarray) -> float:
    return 0.5 * float(np.abs(np.asarray(mu) - np.asarray(nu)).sum())


def tv_decay(P: np.ndarray, start: int, t: int, pi: np.ndarray | None = None) -> list:
    """Exact TV distance to stationarity after ``0..t`` steps from state ``start``."""
    if pi is None:
        pi = stationary_distribution(P)
    x = np.zeros(P.shape[0])
    x[start] = 1.0
    out = [tv_distance(x, pi)]
    for _ in range(t):
        x = x @ P
        out.append(tv_distance(x, pi))
    return out
