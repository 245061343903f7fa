import math
from fractions import Fraction

import pytest

import chargedfock.virasoro as virasoro
from chargedfock.fock import Space, Truncation
from chargedfock.harness import (
    algebra_report,
    commutativity_report,
    current_bracket_suite,
    current_covariance_suite,
    decay_report,
    divergence_series,
    float_norm_series,
    float_partial_rows,
    lorentz_closure_suite,
    mode_adjoint_suite,
    mode_oracle_suite,
    primary_covariance_suite,
    virasoro_bracket_suite,
)
from chargedfock.scalar import make_context
from chargedfock.twodim import partial_sum_norm_series
from chargedfock.vertex import vacuum_mode_norm_sq

EXACT = make_context("exact-rational")
A0 = HALF = Fraction(1, 2)


def space(L, window=(-2, 2)):
    return Space(EXACT, A0, Truncation(L, *window))


def test_identity_suites_pass_on_small_window():
    sp = space(6)
    for suite in (
        current_bracket_suite(sp, m_range=3),
        virasoro_bracket_suite(sp, m_range=2),
        lorentz_closure_suite(sp, max_level=2),
        current_covariance_suite(sp, HALF, m_range=2, delta_range=2),
        primary_covariance_suite(sp, HALF, m_range=2, delta_range=2),
        mode_oracle_suite(sp, HALF, max_level=4),
        mode_adjoint_suite(sp, HALF, delta_range=3, max_level=3),
    ):
        assert suite["status"] == "pass", suite
        assert suite["first_failure"] is None
        assert suite["states_checked"] > 0


def test_fault_injection_is_pinpointed():
    sp = space(6)
    virasoro.FAULT_SUGAWARA = True
    try:
        suite = virasoro_bracket_suite(sp, m_range=4)
    finally:
        virasoro.FAULT_SUGAWARA = False
    assert suite["status"] == "fail"
    failure = suite["first_failure"]
    # the corrupted quadratic-current coefficient sits in the m=2 generator
    assert failure["n"] == 2 or failure["m"] == 2
    assert failure == {"m": -4, "n": 2, "sector": -2, "basis": [1]}
    # a clean rerun must not inherit the corrupt generator
    assert virasoro_bracket_suite(sp, m_range=4)["status"] == "pass"


def test_degenerate_cutoff_warns_vacuous_interior():
    rep = algebra_report(space(0), HALF)
    assert rep["verdict"] == "pass"
    assert any("vacuous interior" in w for w in rep["warnings"])


def test_headroom_keeps_identities_truncation_free():
    # the same suite at a deeper cutoff checks strictly more states, and both
    # pass: interior selection never trades exactness for coverage
    small = current_bracket_suite(space(4), m_range=2)
    big = current_bracket_suite(space(6), m_range=2)
    assert small["status"] == big["status"] == "pass"
    assert big["states_checked"] > small["states_checked"]


def test_float_norm_series_matches_exact_closed_form():
    series = float_norm_series(float(HALF * HALF), 24)
    for n in range(25):
        exact = float(vacuum_mode_norm_sq(HALF, n))
        assert series[n] == pytest.approx(exact, rel=1e-12)


def test_float_partial_rows_track_exact_series():
    exact_rows = partial_sum_norm_series(HALF, 1, 12)
    float_rows = float_partial_rows(0.25, 1, 12)
    assert [r[0] for r in float_rows] == [r[0] for r in exact_rows]
    for (_, fv, ft), (_, ev, et) in zip(float_rows, exact_rows):
        assert fv == pytest.approx(float(ev), rel=1e-12)
        assert ft == pytest.approx(float(et), rel=1e-12)


def test_decay_report_shape_and_verdict():
    rep = decay_report(space(10), HALF, n_max=512)
    assert rep["verdict"] == "pass"
    assert rep["exact_table"][1] == {"n": 1, "computed": "1/4", "closed_form": "1/4", "equal": True}
    assert len(rep["exact_table"]) == 11  # n = 0..min(L, 30)
    assert abs(rep["slope"]["fitted"] - (-0.75)) < 0.05
    assert rep["block_norms"]["ok"]
    assert all(r["norm"] <= 1 + 1e-9 for r in rep["block_norms"]["rows"])
    deltas = {r["delta"] for r in rep["block_norms"]["rows"]}
    assert deltas == set(range(-6, 7))
    charges = {r["alpha"] for r in rep["block_norms"]["rows"]}
    assert charges == {"1/2", "1"}


def test_decay_report_without_slope_window():
    rep = decay_report(space(6), HALF, n_max=16)
    assert rep["slope"]["fitted"] is None
    assert rep["verdict"] == "budget_exceeded"
    assert any("slope window" in w for w in rep["warnings"])


def test_commutativity_vacuum_cells_vanish_exactly():
    rep = commutativity_report(space(8), HALF, m_range=1, samples=0, low_cutoff=6)
    assert rep["verdict"] == "pass"
    vac = rep["vacuum"]
    assert vac["all_exact_zero"]
    assert vac["max_abs_residual"] == 0.0
    assert all(row["exact_zero"] for row in vac["rows"])


def test_commutativity_excited_residuals_shrink():
    rep = commutativity_report(space(9), HALF, m_range=2, samples=1, low_cutoff=6)
    exc = rep["excited"]
    assert exc["cutoffs"] == [6, 9]
    assert exc["nonincreasing"]
    assert exc["strictly_shrank"]
    nonzero = [r for r in exc["rows"] if r["residual_abs"] > 0]
    assert nonzero, "excited probes must exercise a nonzero bilinear residual"


def test_divergence_series_increments_settle():
    rows = divergence_series(512)
    assert [r[0] for r in rows] == [2, 4, 8, 16, 32, 64, 128, 256, 512]
    increments = [inc for n, _, inc in rows if n >= 64]
    assert max(increments) / min(increments) < 1.1
    assert increments[-1] == pytest.approx(math.log(2) / math.pi, rel=0.02)
    # partial sums keep growing: no convergence at the critical charge
    sums = [total for _, total, _ in rows]
    assert all(b > a for a, b in zip(sums, sums[1:]))
