"""The closed-form contractive flow: axioms, crossings, convergence, and the
two evaluation paths of the commutation identity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tnnflow import linalg
from tnnflow.chevalley import build_pinning, exp_generator_sum
from tnnflow.embedding import chart_coords, line_of
from tnnflow.flow import (
    Convergence,
    DiagonalFlow,
    commutation_check,
    converge,
    default_ball_radius,
    default_invariance_cases,
    fixed_flag,
    flow_point,
    has_overflow,
    invariance_check,
    line_to_sl3_coords,
    sphere_crossing,
    trajectory,
    verify_axioms,
)
from tnnflow.totpos import sample_params, sample_positive, sl3_coords, standard_word_w0


def test_flow_rates_from_chart(flow3):
    assert flow3.ncoords == 7
    assert flow3.is_contractive
    assert abs(flow3.log_contraction - math.sqrt(2.0)) < 1e-12
    # rates are mu_k - mu_0 <= -gap < 0
    assert np.max(flow3.rates) <= -flow3.log_contraction + 1e-12


def test_flow_identity_and_formula(flow3):
    p = np.linspace(0.2, 1.4, flow3.ncoords)
    assert np.array_equal(flow_point(flow3, 0.0, p), p)
    moved = flow_point(flow3, 0.5, p)
    want = p * np.exp(0.5 * np.asarray(flow3.rates))
    assert np.max(np.abs(moved - want)) == 0


times = st.floats(min_value=0.01, max_value=5.0)


@settings(max_examples=50, deadline=None)
@given(times, times)
def test_semigroup_property(t1, t2):
    flow = DiagonalFlow(rates=np.array([-1.0, -2.5, -0.125]))
    p = np.array([0.7, -1.3, 2.9])
    once = flow_point(flow, t1 + t2, p)
    twice = flow_point(flow, t2, flow_point(flow, t1, p))
    assert np.max(np.abs(once - twice)) <= 1e-12 * np.max(np.abs(once))


@settings(max_examples=50, deadline=None)
@given(times)
def test_contraction_bound(t):
    flow = DiagonalFlow(rates=np.array([-2.0, -3.0, -2.0]))
    p = np.array([1.0, -2.0, 0.5])
    lhs = np.linalg.norm(flow_point(flow, t, p))
    rhs = math.exp(-t * flow.log_contraction) * np.linalg.norm(p)
    assert lhs <= rhs + 1e-12


def test_verify_axioms_passes(flow3, rng):
    report = verify_axioms(flow3, rng, samples=200)
    assert report.passed
    names = {c.name for c in report.checks}
    assert names == {"continuity", "identity", "semigroup", "contraction"}


def test_verify_axioms_catches_flat_direction(rng):
    # a rate pinned at zero is not contractive and must fail loudly
    flat = DiagonalFlow(rates=np.array([-1.0, 0.0, -2.0]))
    report = verify_axioms(flat, rng, samples=50)
    assert not report.passed
    assert not report.check("contraction").passed


def test_trajectory_shape(flow3):
    p = np.ones(flow3.ncoords)
    ts = [0.0, 0.5, 1.0, 2.0]
    traj = trajectory(flow3, p, ts)
    assert traj.shape == (4, flow3.ncoords)
    assert np.array_equal(traj[0], p)


def test_has_overflow():
    assert not has_overflow(np.array([1.0, 2.0]))
    assert has_overflow(np.array([1.0, np.inf]))
    assert has_overflow(np.array([np.nan, 0.0]))


def test_sphere_crossing_single_rate():
    # all rates equal: ||f(t,p)|| = e^{-t} ||p||, crossing solvable by hand
    flow = DiagonalFlow(rates=np.array([-1.0, -1.0]))
    p = np.array([3.0, 4.0])  # norm 5
    hit = sphere_crossing(flow, p, radius=1.0)
    assert abs(hit.time - math.log(5.0)) < 1e-10
    assert abs(np.linalg.norm(hit.point) - 1.0) < 1e-10
    assert hit.residual <= 1e-12


def test_default_ball_radius(chart3):
    r = default_ball_radius(chart3, np.random.default_rng(5))
    assert 0.0 < r < 0.1  # a hundredth of a boundary norm stays well below 1
    assert r == default_ball_radius(chart3, np.random.default_rng(5))
    # the factor is exactly 1e-2 of the smallest sampled boundary norm
    word = standard_word_w0(3)
    rng = np.random.default_rng(5)
    norms = []
    for _ in range(25):
        size = int(rng.integers(1, len(word) + 1))
        mask = sorted(rng.choice(len(word), size=size, replace=False).tolist())
        u = sample_positive(sample_params(word, rng, zero_mask=mask), "lower")
        norms.append(np.linalg.norm(chart_coords(chart3, line_of(chart3.rep, u.to_float()))))
    assert abs(r - 1e-2 * min(norms)) < 1e-15


def test_sphere_crossing_rejects_bad_input(flow3):
    with pytest.raises(ValueError):
        sphere_crossing(flow3, np.zeros(flow3.ncoords), radius=1.0)
    with pytest.raises(ValueError):
        sphere_crossing(flow3, np.ones(flow3.ncoords), radius=-2.0)
    drift = DiagonalFlow(rates=np.array([0.5, -1.0]))  # not contractive
    with pytest.raises(ValueError):
        sphere_crossing(drift, np.ones(2), radius=1.0)


def test_converge_single_rate():
    flow = DiagonalFlow(rates=np.array([-1.0, -1.0]))
    p = np.array([3.0, 4.0])
    run = converge(flow, p, tol=1e-6)
    assert run.final_norm < 1e-6
    assert run.within_bound
    # the a priori bound for equal rates is tight: log(norm/tol)
    assert run.bound == pytest.approx(math.log(5.0 / 1e-6), rel=1e-12)


def test_fixed_flag_matches_closed_form(pin3):
    flag = fixed_flag(pin3)
    coords = sl3_coords(flag)
    s = 2.0 + math.sqrt(2.0)
    v = np.array([float(x) for x in coords.v])
    w = np.array([float(x) for x in coords.w])
    want_v = np.array([1.0 / s, math.sqrt(2.0) / s, 1.0 / s])
    assert np.max(np.abs(v - want_v)) < 1e-12
    assert np.max(np.abs(w - want_v)) < 1e-12


def test_commutation_paths_agree(pin3, chart3, rng):
    word = standard_word_w0(3)
    for t in (0.1, 1.0):
        params = sample_params(word, rng)
        result = commutation_check(pin3, chart3, params, t)
        assert result["max_diff"] < 1e-9


def test_line_to_sl3_coords_roundtrip(chart3, rng):
    params = sample_params(standard_word_w0(3), rng)
    line = line_of(chart3.rep, params, "lower")
    coords = line_to_sl3_coords(chart3, line)
    from tnnflow.totpos import flag_of, sample_positive

    direct = sl3_coords(flag_of(sample_positive(params, "lower")))
    got = np.array(list(coords.v) + list(coords.w), dtype=float)
    want = np.array([float(x) for x in list(direct.v) + list(direct.w)])
    assert np.max(np.abs(got - want)) < 1e-10


def test_invariance_all_cases(rng):
    from tnnflow.embedding import build_rep, eigenchart, lambda_for

    for case in default_invariance_cases():
        rep = build_rep(lambda_for(case.n, case.J))
        chart = eigenchart(rep) if (case.n, case.J) == (3, frozenset()) else None
        out = invariance_check(case, rep, chart, 0.1, rng, count=25)
        assert out["passed"], out
        assert not out["control_interior"]
