"""Per-color configurations around the disagreement vertex of a neighboring pair.

For a neighboring pair ``(sigma, tau)`` disagreeing at ``v`` and a color ``c``
carried by ``delta_c > 0`` neighbors ``u_1 < ... < u_m`` of ``v``, the
configuration ``(A, B; a, b)`` records

* ``A = |S_sigma(v, c)|`` and ``B = |S_tau(v, c)|``,
* ``a_i = |S_tau(u_i, sigma(v))|`` and ``b_i = |S_sigma(u_i, tau(v))|``.

A component shared by several ``u_i`` is counted once, at the smallest index;
the later copies are set to zero.  The two colors ``sigma(v)`` and ``tau(v)``
follow the special conventions documented on :func:`extract_configurations`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph_core import Graph, component_vertices, hamming

NONE = "none"
C_IS_SIGMA_V = "c_is_sigma_v"
C_IS_TAU_V = "c_is_tau_v"

SING = "Sing"
BAD = "Bad"
GOOD = "Good"
NOT_PRESENT = "NotPresent"


class PairError(ValueError):
    """Raised when two colorings are not a neighboring pair."""


@dataclass(frozen=True)
class NeighboringPair:
    """Two colorings of ``G`` that differ exactly at vertex ``v``."""

    G: Graph
    sigma: tuple
    tau: tuple
    v: int

    @property
    def sigma_v(self) -> int:
        return self.sigma[self.v]

    @property
    def tau_v(self) -> int:
        return self.tau[self.v]

    def swapped(self) -> "NeighboringPair":
        return NeighboringPair(self.G, self.tau, self.sigma, self.v)


def make_neighboring_pair(G: Graph, sigma: Sequence[int], tau: Sequence[int]) -> NeighboringPair:
    sigma, tau = tuple(sigma), tuple(tau)
    if len(sigma) != G.n or len(tau) != G.n:
        raise PairError("colorings must have one entry per vertex")
    d = hamming(sigma, tau)
    if d != 1:
        raise PairError(f"colorings are not neighbors: d_H = {d}")
    v = next(u for u in range(G.n) if sigma[u] != tau[u])
    return NeighboringPair(G, sigma, tau, v)


@dataclass(frozen=True)
class Configuration:
    """The tuple ``(A, B; a, b)`` for one color, with its derived maxima.

    ``units`` lists ``U_c`` in ascending order; ``a[i]`` and ``b[i]`` refer to
    ``units[i]``.  ``j_star`` is only set for ``special == "c_is_sigma_v"``.
    """

    c: int
    A: int
    B: int
    a: tuple
    b: tuple
    special: str = NONE
    units: tuple = ()
    j_star: int | None = None

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def a_max(self) -> int:
        return max(self.a) if self.a else 0

    @property
    def i_max(self) -> int:
        return self.a.index(self.a_max) if self.a else 0

    @property
    def b_max(self) -> int:
        if not self.b:
            return 0
        return max(self._b_shifted())

    @property
    def j_max(self) -> int:
        if not self.b:
            return 0
        s = self._b_shifted()
        return s.index(max(s))

    def _b_shifted(self) -> list:
        if self.j_star is None:
            return list(self.b)
        return [x - (1 if j == self.j_star else 0) for j, x in enumerate(self.b)]

    @property
    def key(self) -> tuple:
        return (self.A, self.B, self.a, self.b)

    def to_text(self) -> str:
        return config_text(self.A, self.B, self.a, self.b)


def config_text(A: int, B: int, a: Sequence[int], b: Sequence[int]) -> str:
    """Canonical text form ``A,B;[a...];[b...]``."""
    return f"{A},{B};[{','.join(map(str, a))}];[{','.join(map(str, b))}]"


def parse_config_text(text: str) -> tuple:
    """Inverse of :func:`config_text`; returns ``(A, B, a, b)``."""
    try:
        head, a_txt, b_txt = text.strip().split(";")
        A, B = (int(x) for x in head.split(","))
        a = tuple(int(x) for x in a_txt.strip()[1:-1].split(",") if x.strip())
        b = tuple(int(x) for x in b_txt.strip()[1:-1].split(",") if x.strip())
    except ValueError as exc:
        raise ValueError(f"malformed configuration text {text!r}") from exc
    return A, B, a, b


def template(A: int, B: int, a: Sequence[int], b: Sequence[int], c: int = -1,
             special: str = NONE, j_star: int | None = None) -> Configuration:
    """A free-standing configuration, not tied to any graph."""
    return Configuration(c, A, B, tuple(a), tuple(b), special, (), j_star)


def neighbors_by_color(pair: NeighboringPair) -> dict:
    """``U_c`` for every color present around ``v``, in ascending vertex order."""
    out: dict = {}
    for u in pair.G.adjacency[pair.v]:
        out.setdefault(pair.sigma[u], []).append(u)
    return {c: tuple(us) for c, us in out.items()}


def _sizes(G, col, units, other, keep=None) -> list:
    """Sizes of ``S_col(u, other)`` over ``units`` with repeats set to 0.

    ``keep(S, u)`` may veto a component (its size is recorded as 0).
    """
    seen = []
    out = []
    for u in units:
        S = component_vertices(G, col, u, other)
        if not S or S in seen or (keep is not None and not keep(S, u)):
            out.append(0)
        else:
            out.append(len(S))
        if S:
            seen.append(S)
    return out


def _configuration(pair: NeighboringPair, c: int, units: tuple, flippable=None) -> Configuration:
    G, s, t, v = pair.G, pair.sigma, pair.tau, pair.v
    sv, tv = s[v], t[v]
    ok = flippable if flippable is not None else (lambda S, col, x, y: True)

    def size(col, x, y):
        S = component_vertices(G, col, x, y)
        return len(S) if S and ok(S, col, x, y) else 0

    def keep_for(col, y):
        return lambda S, u: ok(S, col, u, y)

    if c == tv:
        # a_j counts S_tau(y_j, sigma(v)); a component that already contains v
        # is the flip of S_tau(v, sigma(v)) and is accounted for under sigma(v).
        def keep_a(S, u):
            return v not in S and ok(S, t, u, sv)
        a = _sizes(G, t, units, sv, keep_a)
        return Configuration(c, 0, 0, tuple(a), (0,) * len(units), C_IS_TAU_V, units)
    if c == sv:
        b = _sizes(G, s, units, tv, keep_for(s, tv))
        j_star = None
        for j, u in enumerate(units):
            if b[j] and v in component_vertices(G, s, u, tv):
                j_star = j
                break
        return Configuration(c, 0, sum(b), (0,) * len(units), tuple(b), C_IS_SIGMA_V, units, j_star)
    a = _sizes(G, t, units, sv, keep_for(t, sv))
    b = _sizes(G, s, units, tv, keep_for(s, tv))
    return Configuration(c, size(s, v, c), size(t, v, c), tuple(a), tuple(b), NONE, units)


def extract_configurations(pair: NeighboringPair) -> dict:
    """Configurations for every color carried by at least one neighbor of ``v``.

    For ``c = tau(v)`` we set ``A = B = 0`` and ``b = 0``; ``a_j`` is the size of
    ``S_tau(y_j, sigma(v))`` unless that component contains ``v``, in which
    case it is the same flip as ``S_tau(v, sigma(v))`` and is recorded as 0.
    For ``c = sigma(v)`` we set ``A = 0``, ``a = 0`` and ``B = sum(b)``;
    ``j_star`` marks the neighbor whose component contains ``v`` and
    ``b_max`` is taken over ``b_j - [j = j_star]``.
    """
    return {c: _configuration(pair, c, units)
            for c, units in sorted(neighbors_by_color(pair).items())}


# ---------------------------------------------------------------- extremality

EXTREMAL_KEYS = (
    (3, 2, (2,), (1,)),
    (2, 3, (1,), (2,)),
    (7, 3, (3, 3), (1, 1)),
    (3, 7, (1, 1), (3, 3)),
)
BAD_KEYS = EXTREMAL_KEYS[2:]


def _multiset_key(A, B, a, b) -> tuple:
    return (A, B, tuple(sorted(a)), tuple(sorted(b)))


_EXTREMAL = {_multiset_key(*k) for k in EXTREMAL_KEYS}
_BAD = {_multiset_key(*k) for k in BAD_KEYS}


def is_extremal(cfg: Configuration) -> bool:
    """Membership in the four canonical extremal configurations.

    Vectors are compared as multisets.  Configurations for ``sigma(v)`` or
    ``tau(v)`` have ``A = 0`` or ``B = 0`` and are therefore never extremal.
    """
    return cfg.special == NONE and _multiset_key(*cfg.key) in _EXTREMAL


def is_bad(cfg: Configuration) -> bool:
    return cfg.special == NONE and _multiset_key(*cfg.key) in _BAD


def classify_state(cfg: Configuration | None) -> str:
    if cfg is None or cfg.m == 0:
        return NOT_PRESENT
    if cfg.special != NONE:
        return GOOD
    if cfg.m == 1:
        return SING
    if is_bad(cfg):
        return BAD
    return GOOD


def state_of_color(pair: NeighboringPair, c: int) -> str:
    units = neighbors_by_color(pair).get(c)
    if not units:
        return NOT_PRESENT
    return classify_state(_configuration(pair, c, units))


def count_states(pair: NeighboringPair) -> tuple:
    """``(N_sing, N_bad, N_good)`` over the colors present around ``v``."""
    tally = {SING: 0, BAD: 0, GOOD: 0}
    for cfg in extract_configurations(pair).values():
        tally[classify_state(cfg)] += 1
    return tally[SING], tally[BAD], tally[GOOD]


def extremal_classes(pair: NeighboringPair, configs: dict | None = None) -> tuple:
    """The color sets ``(C1, C2)`` of extremal configurations of size 1 and 2."""
    configs = extract_configurations(pair) if configs is None else configs
    c1 = frozenset(c for c, cfg in configs.items() if cfg.m == 1 and is_extremal(cfg))
    c2 = frozenset(c for c, cfg in configs.items() if cfg.m == 2 and is_extremal(cfg))
    return c1, c2


def gamma(pair: NeighboringPair, p=None, L=None) -> float:
    """Share of ``v``'s neighbors that sit in extremal configurations, over ``Delta``.

    The extremal set is fixed (see :data:`EXTREMAL_KEYS`); ``p`` is accepted
    for call-site symmetry with the flip-parameter context and is not used.
    With a list assignment ``L`` the configurations come from
    :func:`list_extract_configurations`.
    """
    Delta = pair.G.max_degree
    if Delta == 0:
        return 0.0
    configs = None if L is None else list_extract_configurations(pair, L)
    c1, c2 = extremal_classes(pair, configs)
    return (len(c1) + 2 * len(c2)) / Delta


# ---------------------------------------------------------------- list colorings

def list_extract_configurations(pair: NeighboringPair, L) -> dict:
    """As :func:`extract_configurations`, with unflippable components counted as 0.

    A component is flippable when every vertex lists both of its colors.
    Size-1 components are always flippable for a list coloring because the
    chosen color belongs to the anchor's list.
    """
    from .chains import check_lists, is_list_coloring
    L = check_lists(pair.G, L)
    for col in (pair.sigma, pair.tau):
        if not is_list_coloring(col, L):
            raise ValueError("pair is not made of L-colorings")

    def flippable(S, col, x, y):
        need = {col[x], y}
        return all(need <= L[u] for u in S)

    return {c: _configuration(pair, c, units, flippable)
            for c, units in sorted(neighbors_by_color(pair).items())}
