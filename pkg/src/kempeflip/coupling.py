"""Greedy one-step coupling of the flip dynamics and the variable-length coupling.

The coupled step is a joint law over pairs ``(S, S')`` of flips in ``sigma``
and ``tau``.  Flips that exist in both colorings and do not touch the
disagreement vertex ``v`` are matched to themselves.  The remaining flips (the
disagreement set) live around ``v`` and are matched color by color:

* move 1 pairs ``S_sigma(v, c)`` with the largest ``S_tau(u_i, sigma(v))``
  (mass ``p_A``), move 2 pairs ``S_tau(v, c)`` with the largest
  ``S_sigma(u_j, tau(v))`` (mass ``p_B``),
* moves 3a/3b/3c split the leftover masses ``q_i`` and ``q'_i`` of
  ``S_tau(u_i, sigma(v))`` and ``S_sigma(u_i, tau(v))`` into a joint part
  ``min(q_i, q'_i)`` and two one-sided remainders.

The pair of colors ``{sigma(v), tau(v)}`` is handled separately, see
:func:`_special_outcomes`.  Masses are kept in units of ``1/(n k)`` internally
("weights") so exact parameters stay exact.
"""

from __future__ import annotations

import math
from collections import Counter, OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._backend import kernels
from .chains import FlipParams
from .config import BAD, GOOD, NeighboringPair, neighbors_by_color, state_of_color
from .graph_core import KempeComponent, distinct_flips, flip, hamming, kempe_component

RESERVED = 2
SHARED_FLIP = 1

STAGE_BAD = "Bad"
STAGE_GOOD = "Good"
STAGE_GOOD_END = "GoodEnd"
STAGE_BAD_END = "BadEnd"

DEFAULT_STEP_CAP = 10 ** 7


class CouplingInvariantError(AssertionError):
    """Raised when a coupling mass would become negative."""


@dataclass(frozen=True)
class CoupledFlip:
    """One joint outcome; ``None`` on a side means that coloring is unchanged."""

    s_sigma: KempeComponent | None
    s_tau: KempeComponent | None
    mass: object
    move: str = ""

    def apply(self, sigma, tau) -> tuple:
        return flip(sigma, self.s_sigma), flip(tau, self.s_tau)


@dataclass
class CouplingDistribution:
    outcomes: list
    noop_mass: object
    n: int
    k: int

    @property
    def total_mass(self):
        return sum((o.mass for o in self.outcomes), self.noop_mass * 0) + self.noop_mass

    def marginal(self, side: str, start) -> dict:
        """Law of one coordinate after the step, keyed by coloring."""
        law: Counter = Counter()
        for o in self.outcomes:
            S = o.s_sigma if side == "sigma" else o.s_tau
            law[flip(start, S)] += o.mass
        law[tuple(start)] += self.noop_mass
        return dict(law)


# ---------------------------------------------------------------- disagreement set

def _dedupe(components):
    seen = set()
    out = []
    for S in components:
        if S is None or not S or S.flip_key in seen:
            out.append(None)
        else:
            seen.add(S.flip_key)
            out.append(S)
    return out


def _check(q, label):
    if q < 0:
        raise CouplingInvariantError(f"negative leftover mass {q} in {label}")
    return q


class _Components:
    """Memoized ``S_sigma(x, c)`` and ``S_tau(x, c)`` for one pair."""

    def __init__(self, pair: NeighboringPair):
        self.pair = pair
        self.memo: dict = {}

    def __call__(self, side: int, x: int, c: int) -> KempeComponent:
        key = (side, x, c)
        S = self.memo.get(key)
        if S is None:
            col = self.pair.sigma if side == 0 else self.pair.tau
            S = kempe_component(self.pair.G, col, x, c)
            self.memo[key] = S
        return S


def _color_outcomes(pair: NeighboringPair, c: int, units: tuple, p: FlipParams, comp) -> list:
    """Moves 1, 2 and 3a-3c for one color outside ``{sigma(v), tau(v)}``."""
    s, t, v = pair.sigma, pair.tau, pair.v
    Ss, St = comp(0, v, c), comp(1, v, c)
    if not units:
        return [CoupledFlip(Ss, St, p(1), "free")]
    ta = _dedupe([comp(1, u, s[v]) for u in units])
    sb = _dedupe([comp(0, u, t[v]) for u in units])
    a = [S.size if S else 0 for S in ta]
    b = [S.size if S else 0 for S in sb]
    i_max, j_max = a.index(max(a)), b.index(max(b))
    pA, pB = p(Ss.size), p(St.size)
    out = [CoupledFlip(Ss, ta[i_max], pA, "move1"), CoupledFlip(sb[j_max], St, pB, "move2")]
    for i in range(len(units)):
        q = _check(p(a[i]) - (pA if i == i_max else 0), f"q_{i} for color {c}")
        qp = _check(p(b[i]) - (pB if i == j_max else 0), f"q'_{i} for color {c}")
        m = min(q, qp)
        out.append(CoupledFlip(sb[i], ta[i], m, "move3a"))
        out.append(CoupledFlip(None, ta[i], q - m, "move3b"))
        out.append(CoupledFlip(sb[i], None, qp - m, "move3c"))
    return out


def _greedy_pairs(left: list, right: list, p: FlipParams, schedule: list, label: str) -> list:
    """Pair flips by ``schedule`` (index pairs) taking the smaller leftover, then
    emit the one-sided remainders."""
    rl = [p(S.size) for S in left]
    rr = [p(S.size) for S in right]
    out = []
    for i, j in schedule:
        m = min(rl[i], rr[j])
        out.append(CoupledFlip(left[i], right[j], m, label))
        rl[i] -= m
        rr[j] -= m
    out += [CoupledFlip(S, None, r, label + "_sigma") for S, r in zip(left, rl)]
    out += [CoupledFlip(None, S, r, label + "_tau") for S, r in zip(right, rr)]
    return out


def _special_outcomes(pair: NeighboringPair, by_color: dict, p: FlipParams, comp) -> list:
    """Flips with color pair ``{sigma(v), tau(v)}``.

    ``W_sigma = S_sigma(v, tau(v))`` and ``W_tau = S_tau(v, sigma(v))``.  When
    they coincide the flip is shared: a single vertex is cross-coupled with
    the empty flip (both halves coalesce), a larger one is matched to itself.
    Otherwise ``W_sigma`` is paired with the largest tau-only component of
    the same color pair and ``W_tau`` with the largest sigma-only one; the
    remaining such components are paired in size order.
    """
    s, t, v = pair.sigma, pair.tau, pair.v
    sv, tv = s[v], t[v]
    Ws, Wt = comp(0, v, tv), comp(1, v, sv)
    X = [S for S in _dedupe([comp(0, u, tv) for u in by_color.get(sv, ())])
         if S and v not in S.vertices]
    Y = [S for S in _dedupe([comp(1, u, sv) for u in by_color.get(tv, ())])
         if S and v not in S.vertices]
    X.sort(key=lambda S: -S.size)
    Y.sort(key=lambda S: -S.size)
    out = []
    if Ws.vertices == Wt.vertices:
        if Ws.size == 1:
            out += [CoupledFlip(Ws, None, p(1), "cross"), CoupledFlip(None, Wt, p(1), "cross")]
        else:
            out.append(CoupledFlip(Ws, Wt, p(Ws.size), "shared_v"))
        out += _greedy_pairs(X, Y, p, list(zip(range(len(X)), range(len(Y)))), "special")
        return out
    left, right = [Ws] + X, [Wt] + Y
    schedule = []
    if Y:
        schedule.append((0, 1))
    if X:
        schedule.append((1, 0))
    schedule += [(1 + i, 1 + i) for i in range(1, min(len(X), len(Y)))]
    if not X and not Y:
        schedule = []
    return _greedy_pairs(left, right, p, schedule, "special")


def disagreement_outcomes(pair: NeighboringPair, k: int, p: FlipParams, comp=None) -> list:
    """Joint outcomes for flips that touch the disagreement, with weights ``n k * mass``.

    Zero-weight outcomes are dropped.
    """
    comp = comp if comp is not None else _Components(pair)
    by_color = neighbors_by_color(pair)
    out = []
    for c in range(k):
        if c in (pair.sigma_v, pair.tau_v):
            continue
        out += _color_outcomes(pair, c, by_color.get(c, ()), p, comp)
    out += _special_outcomes(pair, by_color, p, comp)
    return [o for o in out if o.mass != 0 and (o.s_sigma or o.s_tau)]


def reserved_flips(pair: NeighboringPair, k: int, comp=None) -> tuple:
    """Flip keys of ``sigma`` and of ``tau`` that are coupled around ``v``.

    These are ``S(v, c)`` for every color and ``S_sigma(u, tau(v))`` resp.
    ``S_tau(u, sigma(v))`` over neighbors ``u`` of ``v``.
    """
    comp = comp if comp is not None else _Components(pair)
    v = pair.v
    out = []
    for side, other in ((0, pair.tau[v]), (1, pair.sigma[v])):
        comps = {}
        for c in range(k):
            S = comp(side, v, c)
            if S:
                comps[S.flip_key] = S
        for u in pair.G.adjacency[v]:
            S = comp(side, u, other)
            if S:
                comps[S.flip_key] = S
        out.append(comps)
    return out[0], out[1]


def _scale(weight, nk: int):
    if isinstance(weight, Fraction):
        return weight / nk
    return weight / nk


def greedy_coupling_distribution(pair: NeighboringPair, k: int, p: FlipParams) -> CouplingDistribution:
    """The full joint law of one coupled step.

    Raises
    ------
    CouplingInvariantError
        If a leftover mass or the joint no-op mass is negative, or the flips
        outside the disagreement set differ between the two colorings.
    """
    n = pair.G.n
    nk = n * k
    res_s, res_t = reserved_flips(pair, k)
    fs = distinct_flips(pair.G, pair.sigma, k)
    ft = distinct_flips(pair.G, pair.tau, k)
    shared_s = set(fs) - set(res_s)
    shared_t = set(ft) - set(res_t)
    if shared_s != shared_t:
        raise CouplingInvariantError("flips away from the disagreement differ between colorings")
    outcomes = [CoupledFlip(fs[key], fs[key], _scale(p(fs[key].size), nk), "identity")
                for key in sorted(shared_s, key=lambda kk: (sorted(kk[0]), kk[1]))
                if p(fs[key].size) != 0]
    for o in disagreement_outcomes(pair, k, p):
        outcomes.append(CoupledFlip(o.s_sigma, o.s_tau, _scale(o.mass, nk), o.move))
    one = Fraction(1) if p.exact else 1.0
    noop = one - sum(o.mass for o in outcomes)
    if noop < (0 if p.exact else -1e-12):
        raise CouplingInvariantError(f"joint no-op mass is negative ({noop})")
    return CouplingDistribution(outcomes, noop, n, k)


def expected_hamming_change(pair: NeighboringPair, k: int, p: FlipParams):
    """``E[d_H(sigma', tau') - 1]`` under the greedy coupling.

    Matched flips away from ``v`` leave the distance at 1, so only the
    disagreement outcomes contribute.
    """
    nk = pair.G.n * k
    total = 0
    for o in disagreement_outcomes(pair, k, p):
        s2, t2 = o.apply(pair.sigma, pair.tau)
        total += o.mass * (hamming(s2, t2) - 1)
    return _scale(total, nk) if total != 0 else total * 0


# ---------------------------------------------------------------- terminating pairs

def is_terminating_pair(pair: NeighboringPair, S, S_prime) -> bool:
    """Whether ``S`` is some ``S_sigma(v, c)`` or ``S_sigma(u, tau(v))`` or
    ``S'`` is some ``S_tau(v, c)`` or ``S_tau(u, sigma(v))`` with ``u`` a
    neighbor of ``v``.  Components are compared as flips."""
    k = 1 + max(max(pair.sigma), max(pair.tau))
    if S is not None and S:
        k = max(k, 1 + max(S.color_pair))
    if S_prime is not None and S_prime:
        k = max(k, 1 + max(S_prime.color_pair))
    res_s, res_t = reserved_flips(pair, k)
    return bool((S and S.flip_key in res_s) or (S_prime and S_prime.flip_key in res_t))


def terminating_probability(pair: NeighboringPair, k: int, p: FlipParams):
    """Exact probability that the coupled step draws a terminating pair."""
    res_s, res_t = reserved_flips(pair, k)
    total = 0
    for o in disagreement_outcomes(pair, k, p):
        if (o.s_sigma and o.s_sigma.flip_key in res_s) or (o.s_tau and o.s_tau.flip_key in res_t):
            total += o.mass
    return _scale(total, pair.G.n * k)


def terminating_bounds(n: int, k: int, Delta: int, p: FlipParams) -> tuple:
    """``((k - Delta - 2)/(n k), (k + 2 p_2 Delta)/(n k))``."""
    return (k - Delta - 2) / (n * k), (k + 2 * float(p(2)) * Delta) / (n * k)


# ---------------------------------------------------------------- sampling

class _ReserveTable:
    """Per-state cache of the disagreement outcomes in sampling form."""

    def __init__(self, k: int, p: FlipParams, maxsize: int = 200000):
        self.k = k
        self.p = p
        self.maxsize = maxsize
        self.cache: OrderedDict = OrderedDict()

    def get(self, G, sigma: tuple, tau: tuple, v: int):
        key = (sigma, tau)
        hit = self.cache.get(key)
        if hit is not None:
            self.cache.move_to_end(key)
            return hit
        pair = NeighboringPair(G, sigma, tau, v)
        comp = _Components(pair)
        res_s, _ = reserved_flips(pair, self.k, comp)
        R = G.n + sum(S.size for S in res_s.values())
        outs = disagreement_outcomes(pair, self.k, self.p, comp)
        weights = np.array([float(o.mass) for o in outs])
        cum = np.cumsum(weights)
        if len(cum) and cum[-1] > R + 1e-9:
            raise CouplingInvariantError("disagreement weight exceeds the reserve")
        entry = (R, cum, outs, [None] * len(outs))
        self.cache[key] = entry
        if len(self.cache) > self.maxsize:
            self.cache.popitem(last=False)
        return entry


class VariateStream:
    """Blocks of anchor vertices, colors and two uniforms drawn from one generator."""

    def __init__(self, rng: np.random.Generator, n: int, k: int, block: int = 1024):
        self.rng, self.n, self.k, self.block = rng, n, k, block
        self._i = block

    def next(self) -> tuple:
        if self._i >= self.block:
            b = self.block
            self._ws = self.rng.integers(self.n, size=b).tolist()
            self._cs = self.rng.integers(self.k, size=b).tolist()
            self._us = self.rng.random(b).tolist()
            self._rs = self.rng.random(b).tolist()
            self._i = 0
        i = self._i
        self._i += 1
        return self._ws[i], self._cs[i], self._us[i], self._rs[i]


class CoupledState:
    """Mutable pair of colorings advanced by coupled flip steps.

    Each step draws an anchor ``(w, c)`` and a uniform variate.  When the
    anchor lies on a flip matched to itself, the compiled kernel applies it to
    both colorings.  Otherwise (probability ``R/(n k)``) an outcome of the
    disagreement coupling is drawn with probability ``weight / R``.
    """

    def __init__(self, pair: NeighboringPair, k: int, p: FlipParams, rng: np.random.Generator,
                 table: _ReserveTable | None = None, variates: VariateStream | None = None):
        self.G = pair.G
        self.k = k
        self.p = p
        self.rng = rng
        self.sigma = np.asarray(pair.sigma, dtype=np.int64).copy()
        self.tau = np.asarray(pair.tau, dtype=np.int64).copy()
        self.v = pair.v
        self.indptr, self.indices = pair.G.csr
        self.acc = p.acceptance_table(pair.G.n)
        self.table = table if table is not None else _ReserveTable(k, p)
        self.variates = variates if variates is not None else VariateStream(rng, pair.G.n, k)

    def pair(self) -> NeighboringPair:
        return NeighboringPair(self.G, tuple(self.sigma.tolist()), tuple(self.tau.tolist()), self.v)

    def step(self) -> tuple:
        """Advance one step; return ``(terminating, outcome or None)``."""
        w, c, u, r = self.variates.next()
        code = kernels.coupled_shared_step(self.indptr, self.indices, self.sigma, self.tau,
                                           self.v, w, c, u, self.acc)
        if code != RESERVED:
            return False, None
        s, t = tuple(self.sigma.tolist()), tuple(self.tau.tolist())
        R, cum, outs, results = self.table.get(self.G, s, t, self.v)
        x = r * R
        j = int(np.searchsorted(cum, x, side="right"))
        if j >= len(outs):
            return False, None
        if results[j] is None:
            results[j] = outs[j].apply(s, t)
        s2, t2 = results[j]
        self.sigma[:] = s2
        self.tau[:] = t2
        if hamming(s2, t2) == 1:
            self.v = next(u for u in range(self.G.n) if s2[u] != t2[u])
        return True, outs[j]

    @property
    def distance(self) -> int:
        return int(np.count_nonzero(self.sigma != self.tau))


def sample_coupled_step(pair: NeighboringPair, k: int, p: FlipParams, rng: np.random.Generator,
                        method: str = "reserve") -> tuple:
    """One coupled step from ``pair``; returns ``(sigma', tau')``.

    ``method="explicit"`` samples directly from
    :func:`greedy_coupling_distribution`; ``"reserve"`` uses the anchor-based
    sampler of :class:`CoupledState`.  Both draw from the same law.
    """
    if pair.sigma == pair.tau:
        from .chains import flip_step
        s = flip_step(pair.G, pair.sigma, k, p, rng)
        return s, s
    if method == "explicit":
        dist = greedy_coupling_distribution(pair, k, p)
        masses = np.array([float(o.mass) for o in dist.outcomes] + [float(dist.noop_mass)])
        j = int(rng.choice(len(masses), p=masses / masses.sum()))
        if j == len(dist.outcomes):
            return pair.sigma, pair.tau
        return dist.outcomes[j].apply(pair.sigma, pair.tau)
    if method != "reserve":
        raise ValueError(f"unknown sampling method {method!r}")
    st = CoupledState(pair, k, p, rng, variates=VariateStream(rng, pair.G.n, k, block=1))
    st.step()
    return tuple(st.sigma.tolist()), tuple(st.tau.tolist())


# ---------------------------------------------------------------- variable-length coupling

@dataclass
class CouplingTrace:
    T_stop: int | None
    final_distance: int
    stages: list = field(default_factory=list)
    steps: list = field(default_factory=list)
    truncated: bool = False
    first_terminating: int | None = None


def _stage_of(state: str) -> str | None:
    if state == BAD:
        return STAGE_BAD
    if state == GOOD:
        return STAGE_GOOD
    return None


class StageTracker:
    """Stage labels for one color along a coupled run.

    A run starting in state Bad ends in BadEnd at the first step if that
    step is terminating or does not land in state Good.  From stage Good, a
    terminating step gives GoodEnd and a step that leaves state Good gives
    BadEnd.  BadEnd is absorbing and tracking stops after GoodEnd.
    """

    def __init__(self, color: int, start_state: str):
        self.color = color
        self.stage = _stage_of(start_state)
        self.transitions: list = []
        self.done = self.stage is None

    def update(self, terminating: bool, new_state: str | None) -> str | None:
        if self.done:
            return None
        prev = self.stage
        if prev == STAGE_BAD:
            new = STAGE_BAD_END if (terminating or new_state != GOOD) else STAGE_GOOD
        else:
            if terminating:
                new = STAGE_GOOD_END
            elif new_state != GOOD:
                new = STAGE_BAD_END
            else:
                new = STAGE_GOOD
        self.transitions.append((prev, new))
        self.stage = new
        if new in (STAGE_GOOD_END, STAGE_BAD_END):
            self.done = True
        return new


def run_variable_length(pair: NeighboringPair, k: int, p: FlipParams, rng: np.random.Generator,
                        tracked_color: int | None = None, step_cap: int = DEFAULT_STEP_CAP,
                        record_steps: bool = False, table: _ReserveTable | None = None,
                        state_cache: dict | None = None,
                        variates: VariateStream | None = None) -> CouplingTrace:
    """Run coupled steps until the Hamming distance changes.

    Parameters
    ----------
    tracked_color : int, optional
        Color whose stage is followed until the first terminating step.
    step_cap : int
        Truncate after this many steps (``truncated`` is then set).
    """
    if pair.G.max_degree + 2 >= k:
        raise ValueError("the variable-length coupling needs k > Delta + 2")
    st = CoupledState(pair, k, p, rng, table, variates)
    cache = state_cache if state_cache is not None else {}

    def state(s, t, v):
        key = (s, t, tracked_color)
        hit = cache.get(key)
        if hit is None:
            hit = state_of_color(NeighboringPair(pair.G, s, t, v), tracked_color)
            cache[key] = hit
        return hit

    tracker = None
    if tracked_color is not None:
        tracker = StageTracker(tracked_color, state(pair.sigma, pair.tau, pair.v))
    trace = CouplingTrace(None, 1)
    if tracker is not None and tracker.stage is not None:
        trace.stages.append(tracker.stage)
    for t in range(1, step_cap + 1):
        terminating, outcome = st.step()
        if terminating and trace.first_terminating is None:
            trace.first_terminating = t
        d = st.distance if terminating else 1
        if record_steps:
            trace.steps.append((tuple(st.sigma.tolist()), tuple(st.tau.tolist()), outcome))
        if tracker is not None and not tracker.done:
            s, tt = tuple(st.sigma.tolist()), tuple(st.tau.tolist())
            new_state = state(s, tt, st.v) if d == 1 else None
            trace.stages.append(tracker.update(terminating, new_state))
        if d != 1:
            trace.T_stop = t
            trace.final_distance = d
            return trace
    trace.truncated = True
    return trace


@dataclass
class StageStatistics:
    counts: Counter
    trials: int
    t_stop: list
    truncated: int

    def frequency(self, src: str, dst: str) -> tuple:
        """``(count, opportunities, freq, stderr)`` for a one-step transition."""
        num = self.counts[(src, dst)]
        den = sum(c for (a, _), c in self.counts.items() if a == src)
        if den == 0:
            return num, 0, float("nan"), float("nan")
        f = num / den
        return num, den, f, math.sqrt(max(f * (1 - f), 1e-300) / den)

    def mean_t_stop(self) -> tuple:
        arr = np.array(self.t_stop, dtype=float)
        if len(arr) == 0:
            return float("nan"), float("nan")
        return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else 0.0

    def merge(self, other: "StageStatistics") -> "StageStatistics":
        return StageStatistics(self.counts + other.counts, self.trials + other.trials,
                               self.t_stop + other.t_stop, self.truncated + other.truncated)

    def to_csv(self, n: int, k: int, Delta: int) -> str:
        bounds = {
            (STAGE_BAD, STAGE_GOOD): (">=", 4 * (k - Delta - 1) / (n * k)),
            (STAGE_GOOD, STAGE_GOOD_END): (">=", (k - Delta - 2) / (n * k)),
            (STAGE_GOOD, STAGE_BAD_END): ("<=", 5 / n),
        }
        lines = ["transition,count,trials,freq,stderr,paper_bound"]
        for (a, b), (rel, val) in bounds.items():
            num, den, f, se = self.frequency(a, b)
            lines.append(f"{a}->{b},{num},{den},{f:.6g},{se:.3g},{rel}{val:.6g}")
        return "\n".join(lines) + "\n"


def stage_statistics(pair: NeighboringPair, k: int, p: FlipParams, trials: int,
                     rng: np.random.Generator, color: int | None = None,
                     step_cap: int = DEFAULT_STEP_CAP) -> StageStatistics:
    """Monte Carlo stage-transition counts over ``trials`` variable-length runs.

    ``color`` defaults to the first color in state Bad around ``v`` (or the
    smallest neighbor color if none is Bad).
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if color is None:
        colors = sorted(neighbors_by_color(pair))
        bad = [c for c in colors if state_of_color(pair, c) == BAD]
        color = bad[0] if bad else colors[0]
    table = _ReserveTable(k, p)
    variates = VariateStream(rng, pair.G.n, k)
    cache: dict = {}
    counts: Counter = Counter()
    t_stop = []
    truncated = 0
    for _ in range(trials):
        tr = run_variable_length(pair, k, p, rng, color, step_cap, table=table, state_cache=cache,
                                 variates=variates)
        for i in range(1, len(tr.stages)):
            counts[(tr.stages[i - 1], tr.stages[i])] += 1
        if tr.truncated:
            truncated += 1
        else:
            t_stop.append(tr.T_stop)
    return StageStatistics(counts, trials, t_stop, truncated)


# ---------------------------------------------------------------- mixing bound

def mixing_bound(alpha: float, W: float, beta: float, n: float, epsilon: float) -> int:
    """``2 * ceil(2 beta W / alpha) * ceil(ln(n / epsilon) / alpha)``."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return 2 * math.ceil(2 * beta * W / alpha) * math.ceil(math.log(n / epsilon) / alpha)
