import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwrca.coin_and_state import AmplitudeRow, InitialTriple, UnitaryCoin, make_theta_coin
from qwrca.rca_engine import (
    RcaCoefficients,
    closed_moments,
    first_moment,
    iter_rca_rows,
    rca_evolve,
    rca_initial,
    rca_step_back,
    rca_step_general,
    rca_step_theta,
    small_n_norms,
    squared_norm,
)

from conftest import SQ2, complexes, thetas_open, triples

LEFT_H = InitialTriple(1, 1 / SQ2, 0)
ZERO = InitialTriple(0, 0, 0)


def _assert_rows_close(rows_a, rows_b, tol):
    for ra, rb in zip(rows_a, rows_b, strict=True):
        assert ra.max_abs_diff(rb) <= tol


class TestInitial:
    def test_left_hadamard_triple(self):
        s = rca_initial(LEFT_H)
        assert s.row_n.as_dict() == {0: 1}
        assert s.row_np1[-1] == 1 / SQ2 and s.row_np1[0] == 0 and s.row_np1[1] == 0

    def test_zero(self):
        s = rca_initial(ZERO)
        assert not np.any(s.row_n.values) and not np.any(s.row_np1.values)

    def test_evolve_one_step_exact(self):
        x0, x1 = rca_evolve(InitialTriple(2j, 3, -1 + 1j), 0.5, 1)
        assert x0.as_dict() == {0: 2j}
        assert (x1[-1], x1[0], x1[1]) == (3, 0, -1 + 1j)


class TestForward:
    def test_hadamard_row_two(self):
        row = rca_evolve(LEFT_H, math.pi / 4, 2)[2]
        assert row[-2] == pytest.approx(0.5, abs=1e-15)
        assert row[0] == pytest.approx(0.5, abs=1e-15)
        assert row[2] == 0

    def test_half_pi_is_period_two(self):
        rows = rca_evolve(InitialTriple(1j, 2, 3), math.pi / 2, 6)
        for n in range(2, 7):
            # cos(π/2) is 6e-17, not 0, in floating point
            assert rows[n].max_abs_diff(rows[n - 2]) < 1e-15

    def test_zero_stays_zero(self):
        state = rca_initial(ZERO)
        for _ in range(5):
            state = rca_step_general(state, RcaCoefficients(0.3, 0.7, 2.0))
        assert not np.any(state.row_np1.values)

    def test_wave_equation_coefficients(self):
        coeffs = RcaCoefficients.from_coin(UnitaryCoin(1, 0, 0, 1))
        assert (coeffs.a, coeffs.d, coeffs.delta) == (1, 1, 1)
        state = rca_initial(InitialTriple(1, 0.5, -0.25j))
        nxt = rca_step_general(state, coeffs)
        for k in range(-3, 4):
            expected = state.row_np1[k + 1] + state.row_np1[k - 1] - state.row_n[k]
            assert nxt.row_np1[k] == expected

    @given(triples(), st.floats(0, math.pi / 2))
    @settings(max_examples=30)
    def test_general_matches_theta_form(self, triple, theta):
        c = math.cos(theta)
        state_a = state_b = rca_initial(triple)
        for _ in range(10):
            state_a = rca_step_theta(state_a, theta)
            state_b = rca_step_general(state_b, RcaCoefficients(c, -c, -1.0))
        assert state_a.row_np1.max_abs_diff(state_b.row_np1) == 0

    def test_from_coin_matches_theta(self):
        assert RcaCoefficients.from_coin(make_theta_coin(0.4)) == RcaCoefficients.from_theta(0.4)


class TestBackward:
    def test_one_step_round_trip(self):
        s0 = rca_initial(LEFT_H)
        back = rca_step_back(rca_step_theta(s0, math.pi / 4), math.pi / 4)
        assert back.row_n.max_abs_diff(s0.row_n) < 1e-15
        assert back.row_np1.max_abs_diff(s0.row_np1) < 1e-15

    def test_zero_state(self):
        s = rca_step_back(rca_step_theta(rca_initial(ZERO), 0.3), 0.3)
        assert not np.any(s.row_n.values) and not np.any(s.row_np1.values)

    def test_cannot_step_before_start(self):
        with pytest.raises(ValueError):
            rca_step_back(rca_initial(LEFT_H), 0.3)

    @given(triples(), thetas_open)
    @settings(max_examples=20, deadline=None)
    def test_hundred_step_round_trip(self, triple, theta):
        s0 = s = rca_initial(triple)
        for _ in range(100):
            s = rca_step_theta(s, theta)
        for _ in range(100):
            s = rca_step_back(s, theta)
        assert s.time == s0.time
        assert s.row_n.max_abs_diff(s0.row_n) < 1e-9
        assert s.row_np1.max_abs_diff(s0.row_np1) < 1e-9


class TestStructure:
    @given(complexes(), complexes(), thetas_open)
    @settings(max_examples=30, deadline=None)
    def test_antisymmetric_family(self, alpha, beta, theta):
        # X_k(n) = (-1)^n X_{-k}(n)
        for n, row in enumerate(rca_evolve(InitialTriple(alpha, beta, -beta), theta, 100)):
            m, vals = row.symmetric_window()
            assert np.max(np.abs(vals - (-1) ** n * vals[::-1]), initial=0) < 1e-13

    @given(st.floats(-1, 1), st.floats(0, 2 * math.pi), thetas_open)
    @settings(max_examples=30, deadline=None)
    def test_conjugate_family(self, beta, xi, theta):
        # X_k(n) = (-1)^{n+1} e^{iξ} conj(X_{-k}(n))
        phase = cmath.exp(1j * xi)
        for n, row in enumerate(rca_evolve(InitialTriple(0, beta, phase * beta), theta, 100)):
            _, vals = row.symmetric_window()
            mirror = (-1) ** (n + 1) * phase * np.conj(vals[::-1])
            assert np.max(np.abs(vals - mirror), initial=0) < 1e-13

    @given(triples(), triples(), complexes(2.0), thetas_open)
    @settings(max_examples=20, deadline=None)
    def test_linearity(self, t1, t2, s, theta):
        combo = InitialTriple(*(s * a + b for a, b in zip(t1, t2)))
        for r, r1, r2 in zip(
            rca_evolve(combo, theta, 60), rca_evolve(t1, theta, 60), rca_evolve(t2, theta, 60)
        ):
            assert r.max_abs_diff(r1 * s + r2) < 1e-13

    @given(st.tuples(*[st.floats(-1, 1)] * 3), thetas_open)
    @settings(max_examples=20, deadline=None)
    def test_real_closure(self, reals, theta):
        for row in rca_evolve(InitialTriple(*reals), theta, 80):
            assert np.all(row.values.imag == 0)


class TestSums:
    def test_norm_examples(self):
        alpha, beta, gamma = 0.3 + 0.4j, 1j, -2
        assert squared_norm(AmplitudeRow.from_sites({0: alpha})) == pytest.approx(0.25)
        assert squared_norm(AmplitudeRow.from_sites({-1: beta, 1: gamma})) == pytest.approx(5)
        assert squared_norm(AmplitudeRow.zeros(-3, 3)) == 0

    def test_first_moment_examples(self):
        assert first_moment(AmplitudeRow.from_sites({-1: 1 / SQ2, 1: 0})) == pytest.approx(-0.5)
        assert first_moment(AmplitudeRow.from_sites({-2: 1j, 2: -1, 0: 3})) == 0
        row1 = rca_evolve(InitialTriple(1, 0.6, 0.8j), 0.7, 1)[1]
        assert first_moment(row1) == pytest.approx(0.64 - 0.36, abs=1e-15)

    @given(triples(), thetas_open)
    @settings(max_examples=10, deadline=None)
    def test_sums_match_compensated_oracle(self, triple, theta):
        for row in rca_evolve(triple, theta, 200):
            p = np.abs(row.values) ** 2
            k = np.arange(row.lo, row.hi + 1)
            assert abs(squared_norm(row) - math.fsum(p)) < 1e-13
            assert abs(first_moment(row) - math.fsum(k * p)) < 1e-11


class TestClosedForms:
    def test_left_hadamard_moments(self):
        m1, m2, m3 = closed_moments(LEFT_H, math.pi / 4)
        rows = rca_evolve(LEFT_H, math.pi / 4, 3)
        assert m1 == pytest.approx(-0.5, abs=1e-15)
        assert m2 == pytest.approx(-0.5, abs=1e-15)
        assert m3 == pytest.approx(first_moment(rows[3]), abs=1e-15)

    def test_balanced_triple_has_zero_moments(self):
        # |β| = |γ| and α(β̄+γ̄) + c.c. = 0
        t = InitialTriple(1, 1j, -1j)
        assert closed_moments(t, 0.8) == pytest.approx((0, 0, 0), abs=1e-15)
        t = InitialTriple(0.5, 0.3 + 0.4j, -0.3 - 0.4j)
        assert closed_moments(t, 1.1) == pytest.approx((0, 0, 0), abs=1e-15)

    def test_small_norm_example(self):
        assert small_n_norms(InitialTriple(1, 0, 0), math.pi / 4) == pytest.approx(
            (1, 0, 1, 1), abs=1e-15
        )

    @given(triples(), st.floats(0, math.pi / 2))
    @settings(max_examples=50, deadline=None)
    def test_closed_forms_match_simulation(self, triple, theta):
        rows = rca_evolve(triple, theta, 3)
        m = closed_moments(triple, theta)
        norms = small_n_norms(triple, theta)
        assert norms[0] == abs(triple.alpha) ** 2
        assert norms[1] == abs(triple.beta) ** 2 + abs(triple.gamma) ** 2
        for n in range(1, 4):
            assert abs(m[n - 1] - first_moment(rows[n])) < 1e-12
        for n in range(4):
            assert abs(norms[n] - squared_norm(rows[n])) < 1e-12


def test_iter_rows_is_lazy_and_matches_list():
    gen = iter_rca_rows(LEFT_H, 0.5, 10**9)
    first = [next(gen) for _ in range(5)]
    _assert_rows_close(first, rca_evolve(LEFT_H, 0.5, 4), 0)
