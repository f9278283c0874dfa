from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kempeflip.chains import FlipParams, PRESETS
from kempeflip.config import template
from kempeflip.flip_lp import (LP1_RESTRICTED, LP2, LP3, LP4, H_crude_bound, H_value, LPInstance,
                               build_lp, canonical_key, check_feasible, complete_assignment,
                               enumerate_realizable, export_lp_text, parse_lp_text, solve_lp,
                               tag_config, verify_dpp_feasibility)
from kempeflip.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_inequality_form

EQ11 = PRESETS["vigoda_eq11"]


@pytest.mark.parametrize("cfg, expected", [
    (((3, 2, (2,), (1,))), Fraction(5, 6)),
    (((2, 3, (1,), (2,))), Fraction(5, 6)),
    (((7, 3, (3, 3), (1, 1))), Fraction(8, 3)),
])
def test_extremal_potentials(cfg, expected):
    assert H_value(template(*cfg), EQ11) == expected


@st.composite
def monotone_params(draw):
    tail = sorted(draw(st.lists(st.fractions(0, 1, max_denominator=50), min_size=1, max_size=5)),
                  reverse=True)
    return FlipParams.from_tail(tail)


@given(monotone_params())
def test_crude_bound_dominates(p):
    for cfg in enumerate_realizable(3, 4):
        if cfg.special == "none":
            assert H_value(cfg, p) <= H_crude_bound(cfg, p)


def test_realizable_counts():
    cfgs = enumerate_realizable(2, 6)
    assert sum(1 for c in cfgs if c.m == 1) == 36
    with pytest.raises(ValueError):
        enumerate_realizable(1, 6)


def test_canonical_orientation():
    assert canonical_key(2, 3, (1,), (2,)) == (3, 2, (2,), (1,))
    assert canonical_key(3, 7, (1, 1), (3, 3)) == (7, 3, (3, 3), (1, 1))
    assert tag_config("cfg:2,3;[1];[2]") == (2, 3, (1,), (2,))
    assert tag_config("alpha_p:1") is None


def test_small_lps_are_exact():
    assert solve_lp(build_lp(LP3), exact=True).objective == Fraction(11, 6)
    res = solve_lp(build_lp(LP4), exact=True)
    assert res.status == OPTIMAL and res.duality_gap == 0
    assert res.flip_params() == PRESETS["dpp_obs51"]


def test_restricted_lp_matches_full():
    assert solve_lp(build_lp(LP1_RESTRICTED)).objective == pytest.approx(11 / 6, abs=1e-9)


def test_text_round_trip_preserves_optimum():
    lp = build_lp(LP4)
    back = parse_lp_text(export_lp_text(lp))
    assert len(back.constraints) == len(lp.constraints)
    assert solve_lp(back).objective == pytest.approx(float(Fraction(161, 88)), abs=1e-9)


def test_infeasible_assignment_is_reported():
    lp = build_lp(LP2)
    asg = complete_assignment(lp, FlipParams.from_tail((1, 1, 1)), lam=Fraction(11, 6))
    rep = check_feasible(lp, asg)
    assert not rep.feasible and rep.violations


def test_eq11_fails_the_alternative_lp():
    assert not verify_dpp_feasibility(EQ11).ok


def test_undeclared_variable_rejected():
    lp = LPInstance("toy", ["x", "lam"], {"x": 1, "lam": 10})
    with pytest.raises(ValueError):
        lp.add({"y": 1}, "<=", 1, "bad")


def _scipy():
    return pytest.importorskip("scipy.optimize")


@given(st.integers(0, 10 ** 6))
def test_simplex_matches_reference_solver(seed):
    opt = _scipy()
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(1, 5)), int(rng.integers(1, 8))
    G = rng.integers(-3, 4, size=(m, n)).astype(float)
    h = rng.integers(-2, 6, size=m).astype(float)
    c = rng.integers(-3, 4, size=n).astype(float)
    G = np.vstack([G, np.eye(n)])
    h = np.concatenate([h, np.full(n, 5.0)])
    ref = opt.linprog(c, A_ub=G, b_ub=h, bounds=[(0, None)] * n, method="highs")
    mine = solve_inequality_form(c.tolist(), G.tolist(), h.tolist())
    if ref.status == 2:
        assert mine.status == INFEASIBLE
    else:
        assert mine.status == OPTIMAL
        assert mine.objective == pytest.approx(ref.fun, abs=1e-7)
        exact = solve_inequality_form([Fraction(int(x)) for x in c],
                                      [[Fraction(int(x)) for x in row] for row in G],
                                      [Fraction(int(x)) for x in h], exact=True)
        assert float(exact.objective) == pytest.approx(ref.fun, abs=1e-9)


def test_simplex_unbounded():
    res = solve_inequality_form([-1.0], [[-1.0]], [0.0])
    assert res.status == UNBOUNDED
