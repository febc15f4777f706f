import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwrca.coin_and_state import InitialTriple
from qwrca.rca_engine import iter_rca_rows, rca_evolve, squared_norm
from qwrca.spectral import (
    closed_form_norm,
    coefficient_norms,
    fourier_coefficients,
    fourier_initial,
    h_n_value,
    norm_limit,
    parseval_grid_size,
    parseval_norm,
    spectral_point,
    xt_closed,
    xt_recurrence,
)
from qwrca.state_classes import sample_phi_star
from qwrca.verification import windowed_mean

from conftest import SQ2, thetas_open, triples

LEFT_H = InitialTriple(1, 1 / SQ2, 0)
xis = st.floats(0, 2 * math.pi)


class TestSpectralPoint:
    def test_origin(self):
        pt = spectral_point(0.0, 0.7)
        assert pt.phi == 0 and pt.lambda_plus == 1 and pt.lambda_minus == -1

    def test_quarter_turn_hadamard(self):
        pt = spectral_point(math.pi / 2, math.pi / 4)
        assert pt.lambda_plus == pytest.approx((1 - 1j) / SQ2, abs=1e-15)
        assert pt.lambda_minus == pytest.approx((-1 - 1j) / SQ2, abs=1e-15)

    @given(xis, thetas_open)
    def test_unit_modulus_and_characteristic_equation(self, xi, theta):
        pt = spectral_point(xi, theta)
        mult = math.cos(theta) * (cmath.exp(-1j * xi) - cmath.exp(1j * xi))
        for lam in (pt.lambda_plus, pt.lambda_minus):
            assert abs(abs(lam) - 1) < 1e-14
            assert abs(lam * lam - mult * lam - 1) < 1e-13


class TestFourierSide:
    @given(triples())
    def test_initial_at_origin(self, t):
        assert fourier_initial(t, 0.0) == (t.alpha, t.beta + t.gamma)

    def test_initial_at_pi(self):
        x0, x1 = fourier_initial(LEFT_H, math.pi)
        assert x0 == 1
        assert x1 == pytest.approx(-1 / SQ2, abs=1e-15)
        assert fourier_initial(InitialTriple(0, 0, 0), 1.0) == (0, 0)

    @given(triples(), xis, thetas_open)
    def test_coefficients_reproduce_seeds(self, t, xi, theta):
        coef = fourier_coefficients(t, theta, xi)
        assert abs(coef.A + coef.B - t.alpha) < 1e-12
        assert xt_closed(t, theta, xi, 0) == t.alpha
        x1 = cmath.exp(-1j * xi) * t.beta + cmath.exp(1j * xi) * t.gamma
        assert abs(xt_closed(t, theta, xi, 1) - x1) < 1e-12

    @given(triples(), xis, thetas_open, st.integers(0, 200))
    @settings(max_examples=200, deadline=None)
    def test_closed_form_matches_recurrence(self, t, xi, theta, n):
        assert abs(xt_closed(t, theta, xi, n) - xt_recurrence(t, theta, xi, n)) < 1e-11

    @given(triples(), xis, thetas_open)
    def test_closed_form_at_fifty(self, t, xi, theta):
        assert abs(xt_closed(t, theta, xi, 50) - xt_recurrence(t, theta, xi, 50)) < 1e-12


class TestParseval:
    def test_grid_size(self):
        assert [parseval_grid_size(n) for n in (0, 1, 2, 6, 100)] == [4, 8, 8, 16, 256]

    def test_time_zero(self):
        assert parseval_norm(InitialTriple(0.6j, 1, 2), 0.5, 0) == pytest.approx(0.36, abs=1e-15)

    def test_hadamard_grid_64(self):
        direct = squared_norm(rca_evolve(LEFT_H, math.pi / 4, 10)[10])
        assert abs(parseval_norm(LEFT_H, math.pi / 4, 10, grid_size=64) - direct) < 1e-12

    def test_undersized_grid_rejected(self):
        with pytest.raises(ValueError):
            parseval_norm(LEFT_H, 0.5, 10, grid_size=16)

    def test_conserving_member(self):
        t = sample_phi_star(0.5, math.pi / 4, 5)
        assert abs(parseval_norm(t, math.pi / 4, 20) - 0.5) < 1e-11

    @given(triples(), thetas_open)
    @settings(max_examples=10, deadline=None)
    def test_matches_spatial_sum(self, t, theta):
        for n, row in enumerate(iter_rca_rows(t, theta, 100)):
            assert abs(parseval_norm(t, theta, n) - squared_norm(row)) < 1e-11


class TestClosedFormNorm:
    def test_hadamard_triple_first_fifty(self):
        for n, row in enumerate(rca_evolve(LEFT_H, math.pi / 4, 50)):
            dec = closed_form_norm(LEFT_H, math.pi / 4, n)
            assert abs(dec.total - squared_norm(row)) < 1e-8
            assert dec.n == n

    @given(triples(), thetas_open)
    @settings(max_examples=10, deadline=None)
    def test_time_zero(self, t, theta):
        assert abs(closed_form_norm(t, theta, 0).total - abs(t.alpha) ** 2) < 1e-8

    @pytest.mark.parametrize("theta", [math.pi / 12, math.pi / 4, 5 * math.pi / 12])
    def test_conserving_member_has_no_oscillation(self, theta):
        t = sample_phi_star(0.75, theta, 9)
        for n in range(0, 40, 3):
            dec = closed_form_norm(t, theta, n)
            assert abs(dec.steady - 0.75) < 1e-8
            assert abs(dec.oscillatory) < 1e-8

    def test_steady_is_limit(self):
        t = InitialTriple(0.2 + 0.1j, -0.5, 0.3j)
        assert closed_form_norm(t, 0.9, 7).steady == norm_limit(t, 0.9)


class TestHn:
    def test_first_step_and_origin(self):
        x = np.linspace(-math.pi / 2, 0, 50)
        assert np.max(np.abs(h_n_value(x, 1))) < 1e-15
        assert all(h_n_value(0.0, n) == 0 for n in range(1, 50))

    def test_vanishes_on_grid(self):
        x = np.linspace(-math.pi / 2, 0, 10_000)
        worst = max(float(np.max(np.abs(h_n_value(x, n)))) for n in range(1, 201))
        assert worst < 1e-13


class TestLimit:
    def test_examples(self):
        assert norm_limit(LEFT_H, math.pi / 4) == pytest.approx(1 - SQ2 / 4, abs=1e-15)
        assert norm_limit(InitialTriple(0, 0, 0), 0.5) == 0
        t = sample_phi_star(0.3, 1.0, 4)
        assert norm_limit(t, 1.0) == pytest.approx(0.3, abs=1e-12)

    @given(triples(), thetas_open)
    @settings(max_examples=30, deadline=None)
    def test_coefficient_norms_split_steady_part(self, t, theta):
        a_sq, b_sq = coefficient_norms(t, theta)
        assert abs(a_sq - b_sq) < 1e-10
        assert abs(a_sq + b_sq - norm_limit(t, theta)) < 1e-10

    @pytest.mark.parametrize("theta", [math.pi / 6, math.pi / 4, math.pi / 3])
    def test_window_mean_converges(self, theta):
        t = InitialTriple(0.4, 0.5 - 0.2j, 0.1j)
        limit = norm_limit(t, theta)
        norms = [squared_norm(r) for r in iter_rca_rows(t, theta, 2099)]
        assert abs(windowed_mean(norms, 2000) - limit) < abs(windowed_mean(norms, 500) - limit)
