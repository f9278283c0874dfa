"""The potential H, realizable configurations and the flip-parameter LPs.

Linear programs are built symbolically: every constraint is a sparse map from
variable name to coefficient, a relation (``<=`` or ``=``), a right-hand side
and a tag naming where it came from.  Tags are

* ``cfg:A,B;[a];[b]``   the main constraint ``H(A,B;a,b) <= -1 + m*lambda``,
* ``sigma:[b]``         the relaxed bound for colors equal to ``sigma(v)``,
* ``alpha_p:alpha``     ``alpha * p_alpha <= 1``,
* ``crude_x:A``, ``crude_y:a,b``, ``crude_sum``   the crude block for large ``m``,
* ``mono:alpha``        ``p_alpha <= p_(alpha-1)``,
* ``fix:name``          pinned values such as ``p_1 = 1``,
* ``link:...``          the linking rows of the mixed LP,
* ``bound:name``        upper bounds (lower bounds are always 0).

A term ``-min(q, q')`` is linearized as two rows (one per branch) that share a
tag, so a configuration of size ``m`` contributes ``2**m`` rows.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


from .chains import FlipParams
from .config import BAD_KEYS, C_IS_SIGMA_V, EXTREMAL_KEYS, Configuration, is_extremal, template
from .simplex import OPTIMAL, solve_inequality_form

LP1_RESTRICTED = "LP1_restricted"
LP2 = "LP2"
LP3 = "LP3"
LP4 = "LP4"
LP5_MIXED = "LP5_mixed"
LP_KINDS = (LP1_RESTRICTED, LP2, LP3, LP4, LP5_MIXED)

DEFAULT_GAMMA = 25.597784
LAMBDA_UPPER = 10
DUMMY_UPPER = 100

ELEVEN_SIXTHS = Fraction(11, 6)
DPP_LAMBDA = Fraction(161, 88)


# ---------------------------------------------------------------- potential H

def _maxima(cfg: Configuration):
    return cfg.a_max, cfg.i_max, cfg.b_max, cfg.j_max


def H_value(cfg: Configuration, p: FlipParams):
    """``(A - a_max - 1) p_A + (B - b_max - 1) p_B + sum_i a_i q_i + b_i q'_i - min(q_i, q'_i)``.

    ``q_i = p_{a_i} - p_A [i = i_max]`` and ``q'_i = p_{b_i} - p_B [i = j_max]``.
    The maxima and their indices come from the configuration, which already
    encodes the conventions for ``c = sigma(v)`` and ``c = tau(v)``.
    """
    A, B, a, b = cfg.A, cfg.B, cfg.a, cfg.b
    a_max, i_max, b_max, j_max = _maxima(cfg)
    total = (A - a_max - 1) * p(A) + (B - b_max - 1) * p(B)
    for i in range(len(a)):
        q = p(a[i]) - (p(A) if i == i_max else 0)
        qp = p(b[i]) - (p(B) if i == j_max else 0)
        total += a[i] * q + b[i] * qp - min(q, qp)
    return total


def H_crude_bound(cfg: Configuration, p: FlipParams):
    """``(A - 2) p_A + (B - 2) p_B + sum_i (a_i p_{a_i} + b_i p_{b_i} - min(p_{a_i}, p_{b_i}))``."""
    total = (cfg.A - 2) * p(cfg.A) + (cfg.B - 2) * p(cfg.B)
    for x, y in zip(cfg.a, cfg.b):
        total += x * p(x) + y * p(y) - min(p(x), p(y))
    return total


def _nonzero_vectors(m: int, n_max: int):
    return [v for v in itertools.product(range(n_max + 1), repeat=m) if any(v)]


def enumerate_realizable(m_star: int, N_max: int) -> list:
    """Configuration templates indexing the finite main and ``sigma(v)`` constraints.

    Main templates: every size ``1 <= m < m_star`` with ``a`` and ``b`` each a
    nonzero vector in ``{0..N_max}^m`` and ``A = 1 + sum(a)``, ``B = 1 + sum(b)``.
    ``sigma(v)`` templates: sizes ``2 <= m < m_star`` with sorted
    ``0 <= b_1 <= ... <= b_m <= N_max``, ``b_m > 0`` and ``B = sum(b)``.
    """
    if m_star < 2 or N_max < 1:
        raise ValueError("need m_star >= 2 and N_max >= 1")
    out = []
    for m in range(1, m_star):
        vecs = _nonzero_vectors(m, N_max)
        for a in vecs:
            for b in vecs:
                out.append(template(1 + sum(a), 1 + sum(b), a, b))
    for m in range(2, m_star):
        for b in itertools.combinations_with_replacement(range(N_max + 1), m):
            if b[-1] > 0:
                out.append(template(0, sum(b), (0,) * m, b, special=C_IS_SIGMA_V))
    return out


# ---------------------------------------------------------------- LP instances

@dataclass(frozen=True)
class Constraint:
    coeffs: dict
    rel: str
    rhs: object
    tag: str

    def lhs(self, assignment: dict):
        return sum(c * assignment[v] for v, c in self.coeffs.items())

    def slack(self, assignment: dict):
        """``rhs - lhs``; negative means violated (for ``=`` rows use ``abs``)."""
        return self.rhs - self.lhs(assignment)


@dataclass
class LPInstance:
    """``minimize objective`` over nonnegative variables with upper bounds."""

    kind: str
    variables: list
    upper: dict
    constraints: list = field(default_factory=list)
    objective: str = "lam"
    exact: bool = True
    params: dict = field(default_factory=dict)

    def add(self, coeffs: dict, rel: str, rhs, tag: str):
        coeffs = {v: c for v, c in coeffs.items() if c != 0}
        unknown = set(coeffs) - set(self.variables)
        if unknown:
            raise ValueError(f"constraint {tag} uses undeclared variables {sorted(unknown)}")
        self.constraints.append(Constraint(coeffs, rel, rhs, tag))

    @property
    def tags(self) -> list:
        return list(dict.fromkeys(c.tag for c in self.constraints))

    def count(self, prefix: str) -> int:
        """Number of distinct tags starting with ``prefix``."""
        return sum(1 for t in self.tags if t.startswith(prefix))

    def to_lp_text(self) -> str:
        return export_lp_text(self)


class _Expr:
    """Affine expression ``const + sum coeff * var`` with exact coefficients."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs=None, const=0):
        self.coeffs = dict(coeffs or {})
        self.const = const

    def __add__(self, other):
        out = _Expr(self.coeffs, self.const + other.const)
        for v, c in other.coeffs.items():
            out.coeffs[v] = out.coeffs.get(v, 0) + c
        return out

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, k):
        return _Expr({v: c * k for v, c in self.coeffs.items()}, self.const * k)

    __rmul__ = __mul__


def _pvar(alpha: int, N: int) -> _Expr:
    if 1 <= alpha <= N:
        return _Expr({f"p{alpha}": 1})
    return _Expr()


def _h_branches(cfg: Configuration, N: int) -> list:
    """Affine pieces whose maximum is ``H``; one per choice of min-branch."""
    A, B, a, b = cfg.A, cfg.B, cfg.a, cfg.b
    a_max, i_max, b_max, j_max = _maxima(cfg)
    pA, pB = _pvar(A, N), _pvar(B, N)
    base = (A - a_max - 1) * pA + (B - b_max - 1) * pB
    qs = []
    for i in range(len(a)):
        q = _pvar(a[i], N) - (pA if i == i_max else _Expr())
        qp = _pvar(b[i], N) - (pB if i == j_max else _Expr())
        base = base + a[i] * q + b[i] * qp
        qs.append((q, qp))
    out = []
    for choice in itertools.product((0, 1), repeat=len(a)):
        e = base
        for i, ch in enumerate(choice):
            e = e - qs[i][ch]
        out.append(e)
    return out


def _add_le(lp: LPInstance, expr: _Expr, lam_terms: dict, rhs, tag: str):
    """Add ``expr + sum(lam_terms) <= rhs``."""
    coeffs = dict(expr.coeffs)
    for v, c in lam_terms.items():
        coeffs[v] = coeffs.get(v, 0) + c
    lp.add(coeffs, "<=", rhs - expr.const, tag)


def _add_cfg(lp: LPInstance, cfg: Configuration, N: int, lam: str = "lam"):
    tag = "cfg:" + cfg.to_text()
    for e in _h_branches(cfg, N):
        _add_le(lp, e, {lam: -cfg.m}, Fraction(-1), tag)


def _add_sigma(lp: LPInstance, b: tuple, N: int, lam: str = "lam"):
    m = len(b)
    B = sum(b)
    e = (B - b[-1]) * _pvar(B, N)
    for x in b[:-1]:
        e = e + x * _pvar(x, N)
    _add_le(lp, e, {lam: -m}, Fraction(-1), "sigma:[" + ",".join(map(str, b)) + "]")


def _base_instance(kind: str, N: int, lambdas: Sequence[str], dummies: bool) -> LPInstance:
    pv = [f"p{a}" for a in range(1, N + 1)]
    variables = pv + list(lambdas) + (["x", "y"] if dummies else [])
    upper = {v: Fraction(1) for v in pv}
    upper.update({v: Fraction(LAMBDA_UPPER) for v in lambdas})
    if dummies:
        upper.update({"x": Fraction(DUMMY_UPPER), "y": Fraction(DUMMY_UPPER)})
    lp = LPInstance(kind, variables, upper, params={"N_max": N})
    lp.add({"p1": 1}, "=", Fraction(1), "fix:p1")
    for a in range(2, N + 1):
        lp.add({f"p{a}": 1, f"p{a - 1}": -1}, "<=", Fraction(0), f"mono:{a}")
    return lp


def _add_alpha_p(lp: LPInstance, N: int):
    for a in range(1, N + 1):
        lp.add({f"p{a}": a}, "<=", Fraction(1), f"alpha_p:{a}")


def _add_crude_block(lp: LPInstance, N: int, m_star: int, lam: str, extended: bool):
    for A in range(0, N + 2):
        e = (A - 2) * _pvar(A, N)
        _add_le(lp, e, {"x": -1}, Fraction(0), f"crude_x:{A}")
    for a in range(0, N + 1):
        for b in range(a if extended else a + 1, N + 1):
            pa, pb = _pvar(a, N), _pvar(b, N)
            base = a * pa + b * pb
            for branch in (pa, pb):
                _add_le(lp, base - branch, {"y": -1}, Fraction(0), f"crude_y:{a},{b}")
    lp.add({"x": 2, "y": m_star, lam: -m_star}, "<=", Fraction(-1), "crude_sum")


_BAD_MULTISETS = {(x[0], x[1], tuple(sorted(x[2])), tuple(sorted(x[3]))) for x in BAD_KEYS}


def _is_bad_key(A, B, a, b) -> bool:
    return (A, B, tuple(sorted(a)), tuple(sorted(b))) in _BAD_MULTISETS


def build_lp(kind: str, N_max: int = 6, m_star: int = 3, gamma=None,
             extended_crude: bool = False) -> LPInstance:
    """Construct one of the flip-parameter linear programs.

    Parameters
    ----------
    kind : str
        ``LP1_restricted`` (main and ``sigma(v)`` constraints below ``m_star``
        plus ``alpha p_alpha <= 1``; a relaxation of the infinite program),
        ``LP2`` (adds the crude block for ``m >= m_star``), ``LP3`` (two
        configurations only), ``LP4`` (pinned ``p_3 = 1/6`` with the size-1
        family and one size-2 configuration) or ``LP5_mixed`` (``LP2`` with
        separate ``lambda`` per state class and linking rows).
    gamma : float or Fraction, optional
        Required for ``LP5_mixed``.
    extended_crude : bool
        Also include ``a = b`` in the crude block.
    """
    if kind not in LP_KINDS:
        raise ValueError(f"unknown LP kind {kind!r}; choose from {LP_KINDS}")
    if (gamma is not None) != (kind == LP5_MIXED):
        raise ValueError("gamma is required for LP5_mixed and only for it")
    if N_max < 1 or m_star < 2:
        raise ValueError("need N_max >= 1 and m_star >= 2")

    if kind == LP3:
        lp = _base_instance(kind, 6, ["lam"], False)
        for A, B, a, b in ((3, 2, (2,), (1,)), (7, 3, (3, 3), (1, 1))):
            _add_cfg(lp, template(A, B, a, b), 6)
        return lp

    if kind == LP4:
        lp = _base_instance(kind, 6, ["lam"], False)
        lp.add({"p3": 1}, "=", Fraction(1, 6), "fix:p3")
        for i in range(1, 7):
            for j in range(2, 7):
                if (i, j) != (1, 2):
                    _add_cfg(lp, template(i + 1, j + 1, (i,), (j,)), 6)
        _add_cfg(lp, template(5, 3, (2, 2), (1, 1)), 6)
        return lp

    mixed = kind == LP5_MIXED
    lambdas = ["lam_sing", "lam_bad", "lam_good", "lam"] if mixed else ["lam"]
    lp = _base_instance(kind, N_max, lambdas, kind in (LP2, LP5_MIXED))
    lp.params.update({"m_star": m_star})
    good = "lam_good" if mixed else "lam"
    for cfg in enumerate_realizable(m_star, N_max):
        if cfg.special == C_IS_SIGMA_V:
            _add_sigma(lp, cfg.b, N_max, good)
            continue
        lam = "lam"
        if mixed:
            if cfg.m == 1:
                lam = "lam_sing"
            elif _is_bad_key(*cfg.key):
                lam = "lam_bad"
            else:
                lam = "lam_good"
        _add_cfg(lp, cfg, N_max, lam)
    _add_alpha_p(lp, N_max)
    if kind in (LP2, LP5_MIXED):
        _add_crude_block(lp, N_max, m_star, good, extended_crude)
    if mixed:
        g = Fraction(gamma) if not isinstance(gamma, float) else Fraction(str(gamma))
        lp.params["gamma"] = g
        lp.add({"lam_sing": 1, "lam": -1}, "<=", Fraction(0), "link:sing")
        lp.add({"lam_good": 1, "lam": -1}, "<=", Fraction(0), "link:good")
        lp.add({"lam_bad": g / (g + 1), "lam_good": 1 / (g + 1), "lam": -1}, "<=",
               Fraction(0), "link:bad")
    return lp


# ---------------------------------------------------------------- solving

@dataclass
class SolveResult:
    status: str
    objective: object = None
    assignment: dict = field(default_factory=dict)
    tight: list = field(default_factory=list)
    duality_gap: object = None
    pivots: int = 0

    def flip_params(self) -> FlipParams:
        N = max(int(v[1:]) for v in self.assignment if re.fullmatch(r"p\d+", v))
        vals = [self.assignment[f"p{a}"] for a in range(1, N + 1)]
        return FlipParams((0,) + tuple(vals))


def _matrix_form(lp: LPInstance, exact: bool):
    conv = (lambda x: Fraction(x)) if exact else float
    idx = {v: j for j, v in enumerate(lp.variables)}
    rows, rhs = [], []

    def put(coeffs, r, sign=1):
        row = [conv(0)] * len(idx)
        for v, c in coeffs.items():
            row[idx[v]] = conv(c) * sign
        rows.append(row)
        rhs.append(conv(r) * sign)

    for con in lp.constraints:
        put(con.coeffs, con.rhs)
        if con.rel == "=":
            put(con.coeffs, con.rhs, -1)
    for v, u in lp.upper.items():
        put({v: 1}, u)
    c = [conv(0)] * len(idx)
    c[idx[lp.objective]] = conv(1)
    return c, rows, rhs


def solve_lp(lp: LPInstance, exact: bool = False, tol: float = 1e-9) -> SolveResult:
    """Solve with the dense Bland simplex; ``exact=True`` uses rationals throughout."""
    c, G, h = _matrix_form(lp, exact)
    res = solve_inequality_form(c, G, h, exact=exact, tol=tol)
    if res.status != OPTIMAL:
        return SolveResult(res.status, pivots=res.pivots)
    assignment = {v: res.x[j] for j, v in enumerate(lp.variables)}
    out = SolveResult(OPTIMAL, res.objective, assignment, duality_gap=res.extra["gap"],
                      pivots=res.pivots)
    out.tight = tight_constraints(lp, assignment, 0 if exact else tol)
    return out


@dataclass
class FeasibilityReport:
    feasible: bool
    violations: list
    slacks: dict

    def worst(self):
        return min(self.slacks.items(), key=lambda kv: kv[1]) if self.slacks else None


def check_feasible(lp: LPInstance, assignment: dict, tol: float = 1e-9) -> FeasibilityReport:
    """Evaluate every constraint and bound; the slack of a tag is its smallest row slack."""
    slacks: dict = {}
    violations = []
    for con in lp.constraints:
        s = con.slack(assignment)
        if con.rel == "=":
            s = -abs(s)
            bad = abs(s) > tol
        else:
            bad = s < -tol
        slacks[con.tag] = min(slacks.get(con.tag, s), s)
        if bad and con.tag not in violations:
            violations.append(con.tag)
    for v, u in lp.upper.items():
        val = assignment[v]
        s = min(u - val, val)
        slacks[f"bound:{v}"] = s
        if s < -tol:
            violations.append(f"bound:{v}")
    return FeasibilityReport(not violations, violations, slacks)


_NON_REPORTED = ("fix:", "crude_x:", "crude_y:", "bound:")


def tight_constraints(lp: LPInstance, assignment: dict, tol: float = 1e-9) -> list:
    """Tags of inequality rows with zero slack (within ``tol``).

    Pinning rows and the rows defining the dummies ``x`` and ``y`` are not
    reported.
    """
    out = []
    for con in lp.constraints:
        if con.rel != "<=" or con.tag.startswith(_NON_REPORTED):
            continue
        if abs(con.slack(assignment)) <= tol and con.tag not in out:
            out.append(con.tag)
    return out


def complete_assignment(lp: LPInstance, p: FlipParams, lam=None) -> dict:
    """Extend flip parameters to a full assignment.

    The dummies ``x``, ``y`` take their smallest feasible values; every
    ``lambda`` takes the smallest value its own rows allow unless ``lam`` is
    given, in which case all lambdas are set to it.
    """
    N = lp.params["N_max"]
    asg = {f"p{a}": p(a) for a in range(1, N + 1)}
    zero = p(0)
    if "x" in lp.variables:
        for v in ("x", "y"):
            asg[v] = zero
            for con in lp.constraints:
                if con.tag.startswith(f"crude_{v}:"):
                    rest = sum(c * asg[u] for u, c in con.coeffs.items() if u != v)
                    asg[v] = max(asg[v], (rest - con.rhs) / -con.coeffs[v])
    lams = [v for v in lp.variables if v.startswith("lam")]
    if lam is not None:
        asg.update({v: lam for v in lams})
        return asg
    for v in lams:
        asg[v] = zero
    # Two passes: lambda rows first, then the linking rows that read them.
    for pass_links in (False, True):
        for con in lp.constraints:
            if con.tag.startswith("link:") != pass_links:
                continue
            for v in lams:
                coef = con.coeffs.get(v, 0)
                if coef < 0 and all(u in asg for u in con.coeffs if u != v):
                    rest = sum(c * asg[u] for u, c in con.coeffs.items() if u != v)
                    asg[v] = max(asg[v], (rest - con.rhs) / -coef)
    return asg


# ---------------------------------------------------------------- symmetry helpers

def canonical_key(A: int, B: int, a: Sequence[int], b: Sequence[int]) -> tuple:
    """Representative under joint permutations of ``(a_i, b_i)`` and the mirror.

    The orientation with the lexicographically larger ``(A, B, ...)`` is kept,
    so ``(2,3;(1),(2))`` maps to ``(3,2;(2),(1))``.
    """
    pairs = sorted(zip(a, b))
    mirror = sorted(zip(b, a))
    k1 = (A, B, tuple(x for x, _ in pairs), tuple(y for _, y in pairs))
    k2 = (B, A, tuple(x for x, _ in mirror), tuple(y for _, y in mirror))
    return max(k1, k2)


def tag_config(tag: str) -> tuple | None:
    """``(A, B, a, b)`` from a ``cfg:`` tag, else ``None``."""
    from .config import parse_config_text
    if not tag.startswith("cfg:"):
        return None
    return parse_config_text(tag[4:])


def canonical_tight_configs(tags: Sequence[str]) -> set:
    return {canonical_key(*tag_config(t)) for t in tags if t.startswith("cfg:")}


# ---------------------------------------------------------------- LP text format

def _num(x) -> str:
    return repr(float(x))


def export_lp_text(lp: LPInstance) -> str:
    """CPLEX-style LP text; each row carries its tag as a trailing ``\\`` comment."""
    lines = [f"\\ kind: {lp.kind}", "Minimize", f" obj: {lp.objective}", "Subject To"]
    for i, con in enumerate(lp.constraints):
        terms = " ".join(f"{'+' if c >= 0 else '-'} {_num(abs(c))} {v}"
                         for v, c in con.coeffs.items())
        rel = "<=" if con.rel == "<=" else "="
        lines.append(f" r{i}: {terms} {rel} {_num(con.rhs)} \\ {con.tag}")
    lines.append("Bounds")
    for v in lp.variables:
        lines.append(f" 0 <= {v} <= {_num(lp.upper[v])}")
    lines.append("End")
    return "\n".join(lines) + "\n"


_TERM = re.compile(r"([+-])\s*([0-9.eE+-]+)\s+([A-Za-z_][A-Za-z0-9_]*)")


def parse_lp_text(text: str) -> LPInstance:
    """Parse the output of :func:`export_lp_text` (floats, tags preserved)."""
    kind, objective = "custom", None
    section = None
    cons, bounds, order = [], {}, []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("\\"):
            m = re.match(r"\\\s*kind:\s*(\S+)", line)
            if m:
                kind = m.group(1)
            continue
        low = line.lower()
        if low in ("minimize", "subject to", "bounds", "end"):
            section = low
            continue
        if section == "minimize":
            objective = line.split(":", 1)[1].strip()
        elif section == "subject to":
            body, _, tag = line.partition("\\")
            body = body.split(":", 1)[1]
            m = re.search(r"(<=|=)\s*([0-9.eE+-]+)\s*$", body.strip())
            if not m:
                raise ValueError(f"cannot parse constraint line {raw!r}")
            lhs = body.strip()[:m.start()]
            coeffs = {}
            for sgn, val, var in _TERM.findall(lhs):
                coeffs[var] = coeffs.get(var, 0.0) + (float(val) if sgn == "+" else -float(val))
                if var not in order:
                    order.append(var)
            cons.append((coeffs, m.group(1), float(m.group(2)), tag.strip()))
        elif section == "bounds":
            m = re.match(r"([0-9.eE+-]+)\s*<=\s*(\S+)\s*<=\s*([0-9.eE+-]+)", line)
            if not m:
                raise ValueError(f"cannot parse bound line {raw!r}")
            bounds[m.group(2)] = float(m.group(3))
    variables = list(bounds) if bounds else order
    lp = LPInstance(kind, variables, bounds, objective=objective or "lam", exact=False)
    N = sum(1 for v in variables if re.fullmatch(r"p\d+", v))
    lp.params["N_max"] = N
    for coeffs, rel, rhs, tag in cons:
        lp.add(coeffs, rel, rhs, tag)
    return lp


# ---------------------------------------------------------------- DPP feasibility

@dataclass
class DPPReport:
    ok: bool
    cases: dict
    m2_equalities: list
    violations: list
    extremal_excess: list = field(default_factory=list)

    def summary(self) -> str:
        lines = [f"{name}: {'ok' if good else 'FAIL'}" for name, good in self.cases.items()]
        if self.violations:
            lines.append("violations: " + "; ".join(self.violations))
        for text, h in self.extremal_excess:
            lines.append(f"excluded extremal {text}: H = {h} exceeds its bound")
        return "\n".join(lines)


def verify_dpp_feasibility(p_hat: FlipParams, lam=DPP_LAMBDA, n_entries: int = 6) -> DPPReport:
    """Check that ``p_hat`` meets ``H <= -1 + m * lam`` for every realizable
    configuration outside the four extremal ones.

    Sizes 1 and 2 are enumerated exhaustively with entries up to
    ``n_entries``; sizes 3 and above use the crude bound together with the
    helper inequalities; colors equal to ``tau(v)`` or ``sigma(v)`` use
    ``alpha p_alpha <= 1`` and the relaxed ``sigma(v)`` bound.
    """
    p = p_hat
    lam = Fraction(lam) if p.exact else float(lam)
    cases: dict = {}
    violations: list = []

    def record(name, ok, detail=None):
        cases[name] = cases.get(name, True) and ok
        if not ok and detail:
            violations.append(f"{name}: {detail}")

    record("pinned p3 = 1/6", p(3) == Fraction(1, 6) if p.exact else abs(p(3) - 1 / 6) < 1e-12,
           f"p3 = {p(3)}")
    record("p7 = 0", p(7) == 0, f"p7 = {p(7)}")

    for a in range(1, n_entries + 1):
        record("helper a*p_a <= 1", a * p(a) <= 1, f"alpha={a}")
        record("helper (a-1)*p_a <= 1/3", (a - 1) * p(a) <= Fraction(1, 3), f"alpha={a}")
        record("helper (a-2)*p_a <= (3*lam-5)/2", (a - 2) * p(a) <= (3 * lam - 5) / 2, f"alpha={a}")

    for i in range(1, n_entries + 1):
        for j in range(1, n_entries + 1):
            cfg = template(i + 1, j + 1, (i,), (j,))
            if is_extremal(cfg):
                continue
            h = H_value(cfg, p)
            record("size 1", h <= -1 + lam, f"{cfg.to_text()} H={h}")

    excess = []
    for key in EXTREMAL_KEYS:
        cfg = template(*key)
        h = H_value(cfg, p)
        if h > -1 + cfg.m * lam:
            excess.append((cfg.to_text(), h))

    equalities = []
    vecs = _nonzero_vectors(2, n_entries)
    for a in vecs:
        for b in vecs:
            cfg = template(1 + sum(a), 1 + sum(b), a, b)
            if is_extremal(cfg):
                continue
            h = H_value(cfg, p)
            bound = -1 + 2 * lam
            record("size 2", h <= bound, f"{cfg.to_text()} H={h}")
            if h == bound if p.exact else abs(h - bound) <= 1e-12:
                equalities.append(cfg.key)

    pair_max = max(x * p(x) + y * p(y) - min(p(x), p(y))
                   for x in range(n_entries + 2) for y in range(n_entries + 2))
    record("size 3 (crude bound)", pair_max <= Fraction(4, 3), f"pair term max {pair_max}")
    record("size >= 4 (lam >= 4/3)", lam >= Fraction(4, 3), f"lam={lam}")

    record("c = tau(v)", all(a * p(a) <= 1 for a in range(n_entries + 2)))
    record("c = sigma(v), size 1", 0 <= -1 + lam)
    for b in itertools.combinations_with_replacement(range(n_entries + 1), 2):
        if b[-1] == 0:
            continue
        B = sum(b)
        val = (B - b[-1]) * p(B) + b[0] * p(b[0])
        record("c = sigma(v), size 2", val <= -1 + 2 * lam, f"b={b} value={val}")
    tail = max((a - 1) * p(a) for a in range(1, 2 * n_entries + 2))
    record("c = sigma(v), size >= 3", all(tail + (m - 1) <= -1 + m * lam for m in range(3, 64)),
           f"(B-1)p_B max {tail}")
    return DPPReport(all(cases.values()), cases, equalities, violations, excess)
