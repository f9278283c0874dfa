"""Dense tableau simplex with Bland's rule, over floats or exact rationals.

:func:`solve_inequality_form` minimizes ``c @ x`` subject to ``G @ x <= h``
and ``x >= 0``.  It works on the dual

    maximize ``-h @ w``  subject to  ``-G.T @ w <= c``,  ``w >= 0``

whose tableau has one row per primal variable.  The flip-parameter LPs have a
handful of variables and thousands of constraints, so the dual tableau is
short and wide.  The primal optimum is read off the reduced costs of the dual
slack columns.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class TableauResult:
    status: str
    x: np.ndarray | None = None
    objective: object = None
    dual: np.ndarray | None = None
    dual_objective: object = None
    pivots: int = 0
    extra: dict = field(default_factory=dict)


class _Tableau:
    """Rows ``T[:m]`` hold constraints with rhs in the last column; ``T[m]``
    holds reduced costs ``z_j - c_j`` of a maximization (all >= 0 at optimum)."""

    def __init__(self, T, basis, exact: bool, tol: float):
        self.T = T
        self.basis = list(basis)
        self.exact = exact
        self.tol = 0 if exact else tol
        self.pivots = 0

    @property
    def m(self):
        return len(self.basis)

    def pivot(self, r: int, j: int):
        T = self.T
        T[r] = T[r] / T[r, j]
        col = T[:, j].copy()
        col[r] = 0
        nz = np.nonzero(col)[0] if self.exact else np.nonzero(np.abs(col) > 0)[0]
        if len(nz):
            T[nz] -= np.outer(col[nz], T[r])
        if not self.exact:
            T[np.abs(T) < 1e-14] = 0.0
        self.basis[r] = j
        self.pivots += 1

    def entering(self, allowed: int):
        z = self.T[self.m, :allowed]
        if self.exact:
            idx = [j for j in range(allowed) if z[j] < 0]
            return idx[0] if idx else None
        cand = np.nonzero(z < -self.tol)[0]
        return int(cand[0]) if len(cand) else None

    def leaving(self, j: int):
        best = None
        for i in range(self.m):
            a = self.T[i, j]
            if a > self.tol:
                ratio = self.T[i, -1] / a
                key = (ratio, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        return None if best is None else best[1]

    def run(self, allowed: int, max_pivots: int) -> str:
        while self.pivots < max_pivots:
            j = self.entering(allowed)
            if j is None:
                return OPTIMAL
            r = self.leaving(j)
            if r is None:
                return UNBOUNDED
            self.pivot(r, j)
        raise RuntimeError(f"simplex exceeded {max_pivots} pivots")


def _zero(exact):
    return Fraction(0) if exact else 0.0


def maximize(A, b, c, exact: bool = False, tol: float = 1e-9, max_pivots: int = 100000):
    """Maximize ``c @ y`` subject to ``A @ y <= b`` and ``y >= 0`` (two-phase).

    Returns a :class:`TableauResult` whose ``x`` is the optimal ``y`` and whose
    ``dual`` holds the row multipliers (reduced costs of the slack columns).
    """
    dtype = object if exact else float
    A = np.array(A, dtype=dtype)
    b = np.array(b, dtype=dtype)
    c = np.array(c, dtype=dtype)
    m, n = A.shape
    neg = [i for i in range(m) if b[i] < 0]
    n_art = len(neg)
    width = n + m + n_art + 1
    T = np.empty((m + 1, width), dtype=dtype)
    T[...] = _zero(exact)
    sign = np.array([-1 if i in set(neg) else 1 for i in range(m)])
    for i in range(m):
        s = sign[i]
        T[i, :n] = A[i] * s
        T[i, n + i] = s
        T[i, -1] = b[i] * s
    basis = []
    art_of = {}
    for k, i in enumerate(neg):
        T[i, n + m + k] = 1
        art_of[i] = n + m + k
    for i in range(m):
        basis.append(art_of.get(i, n + i))
    tab = _Tableau(T, basis, exact, tol)

    if n_art:
        # Phase 1: maximize -sum(artificials).
        T[m, :] = _zero(exact)
        for i in neg:
            T[m] -= T[i]
        T[m, n + m:n + m + n_art] = _zero(exact)
        tab.run(n + m + n_art, max_pivots)
        if T[m, -1] < -(0 if exact else tol * max(1, m)):
            return TableauResult(INFEASIBLE, pivots=tab.pivots)
        for i in range(m):
            if tab.basis[i] >= n + m:
                row = T[i, :n + m]
                nz = [j for j in range(n + m) if (row[j] != 0 if exact else abs(row[j]) > tol)]
                if nz:
                    tab.pivot(i, nz[0])
        T[:, n + m:n + m + n_art] = _zero(exact)

    T[m, :] = _zero(exact)
    T[m, :n] = -c
    for i in range(m):
        j = tab.basis[i]
        if j < n and c[j] != 0:
            T[m] += c[j] * T[i]
    status = tab.run(n + m, max_pivots)
    if status == UNBOUNDED:
        return TableauResult(UNBOUNDED, pivots=tab.pivots)
    y = np.empty(n, dtype=dtype)
    y[...] = _zero(exact)
    for i in range(m):
        j = tab.basis[i]
        if j < n:
            y[j] = T[i, -1]
    duals = np.array([T[m, n + i] for i in range(m)], dtype=dtype)
    return TableauResult(OPTIMAL, x=y, objective=T[m, -1], dual=duals, pivots=tab.pivots)


def solve_inequality_form(c, G, h, exact: bool = False, tol: float = 1e-9,
                          max_pivots: int = 100000) -> TableauResult:
    """Minimize ``c @ x`` subject to ``G @ x <= h``, ``x >= 0`` via the dual.

    The returned ``x`` is the primal optimum; ``dual`` is the optimal dual
    vector ``w`` and ``extra['gap']`` the duality gap ``c@x - (-h@w)``.
    """
    dtype = object if exact else float
    G = np.array(G, dtype=dtype)
    h = np.array(h, dtype=dtype)
    c = np.array(c, dtype=dtype)
    res = maximize(-G.T, c, -h, exact=exact, tol=tol, max_pivots=max_pivots)
    if res.status == UNBOUNDED:
        return TableauResult(INFEASIBLE, pivots=res.pivots)
    if res.status == INFEASIBLE:
        return TableauResult(UNBOUNDED, pivots=res.pivots)
    x = res.dual
    w = res.x
    primal = c @ x
    dual_obj = -(h @ w)
    return TableauResult(OPTIMAL, x=x, objective=primal, dual=w, dual_objective=dual_obj,
                         pivots=res.pivots, extra={"gap": primal - dual_obj})
