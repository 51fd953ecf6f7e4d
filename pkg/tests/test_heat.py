"""
Tests for the time factor of the nonlinear fractional heat solutions
"""
import math

import numpy as np
import pytest
from scipy import integrate

from prabhakar_engine.exceptions import DomainError, UnsupportedError
from prabhakar_engine.heat import (
    HeatParams,
    eigenfunction_f,
    eigenfunction_laplace,
    eigenfunction_samples,
    eigenfunction_singular_terms,
    f_asymptotic,
    f_tilde,
    heat_solution_exp,
    heat_solution_power,
    limit_value,
    phi_coeffs,
    spatial_profile_exp,
    spatial_profile_power,
)
from prabhakar_engine.operators import SampledFunction, prabhakar_deriv_caputo

from .oracles import heat_eigenfunction

SLOPE_SETS = [
    (0.5, 0.9, 1.5, 1.0), (0.7, 0.9, 1.5, 1.0), (0.9, 0.9, 1.5, 1.0),
    (0.7, 0.6, 1.5, 1.0), (0.7, 0.8, 1.5, 1.0), (0.7, 1.0, 1.5, 1.0),
    (0.7, 0.8, 0.5, 0.2), (0.7, 0.8, 1.0, 0.2), (0.7, 0.8, 2.0, 0.2),
    (0.5, 0.8, 1.5, 0.2), (0.5, 0.8, 1.5, 0.5), (0.5, 0.8, 1.5, 1.0),
]


def random_heat_params(rng, count):
    for _ in range(count):
        alpha = rng.uniform(0.3, 0.9)
        gamma = rng.uniform(0.5, min(1.1, 0.99 / alpha))
        lam = rng.uniform(1.0, 3.0)
        beta_loss = rng.uniform(0.05, 0.9) * lam ** gamma
        yield HeatParams(alpha, gamma, lam, beta_loss)


class TestHeatParams:
    @pytest.mark.parametrize('alpha, gamma, lam, beta_loss', [
        (0.0, 0.9, 1.0, 1.0), (0.7, 1.5, 1.0, 1.0), (0.7, 0.9, 0.0, 1.0), (0.7, 0.9, 1.0, -0.1),
    ])
    def test_validation(self, alpha, gamma, lam, beta_loss):
        with pytest.raises(DomainError):
            HeatParams(alpha, gamma, lam, beta_loss)

    def test_ratio_and_inner_params(self):
        hp = HeatParams(0.7, 0.8, 2.0, 1.0)
        assert hp.ratio == pytest.approx(2.0 ** -0.8)
        inner = hp.inner_params(3)
        assert inner.beta == pytest.approx(1 + 0.7 * 0.8 * 3)
        assert inner.gamma == pytest.approx(2.4)


class TestPhiCoefficients:
    def test_closed_forms(self, rng):
        for hp in random_heat_params(rng, 20):
            r = hp.ratio
            q = -r
            phi = phi_coeffs(hp, 2)
            assert phi[0] == pytest.approx(1 / (1 + r), rel=1e-10)
            assert phi[1] == pytest.approx(hp.gamma * r / (1 + r) ** 2, rel=1e-10)
            # sum_k (gamma k)(gamma k + 1) q^k / 2
            second = 0.5 * (hp.gamma ** 2 * q * (1 + q) / (1 - q) ** 3 + hp.gamma * q / (1 - q) ** 2)
            assert phi[2] == pytest.approx(second, rel=1e-9, abs=1e-13)

    def test_sample_value(self):
        assert phi_coeffs(HeatParams(0.7, 0.8, 1.5, 0.2), 0)[0] == pytest.approx(0.87367, abs=1e-5)

    def test_no_loss(self):
        assert phi_coeffs(HeatParams(0.7, 0.8, 1.5, 0.0), 3) == [1.0, 0.0, 0.0, 0.0]

    def test_direct_sum_needs_ratio_below_one(self):
        with pytest.raises(UnsupportedError, match="not summable"):
            phi_coeffs(HeatParams(0.7, 0.8, 1.0, 1.0), 1, method='direct')

    def test_closed_forms_beyond_unit_ratio(self, rng):
        for _ in range(20):
            alpha = rng.uniform(0.3, 0.9)
            gamma = rng.uniform(0.5, min(1.1, 0.99 / alpha))
            lam = rng.uniform(0.5, 2.0)
            r = rng.uniform(1.0, 5.0)
            hp = HeatParams(alpha, gamma, lam, r * lam ** gamma)
            phi = phi_coeffs(hp, 2)
            assert phi[0] == pytest.approx(limit_value(hp), rel=1e-12)
            assert phi[1] == pytest.approx(gamma * r / (1 + r) ** 2, rel=1e-12)
            second = 0.5 * (-gamma ** 2 * r * (1 - r) / (1 + r) ** 3 - gamma * r / (1 + r) ** 2)
            assert phi[2] == pytest.approx(second, rel=1e-10, abs=1e-14)

    def test_generating_function_matches_direct_sum(self, rng):
        for hp in random_heat_params(rng, 10):
            direct = phi_coeffs(hp, 3, method='direct')
            generating = phi_coeffs(hp, 3, method='generating')
            assert generating == pytest.approx(direct, rel=1e-10, abs=1e-12)

    def test_unknown_method(self):
        with pytest.raises(DomainError):
            phi_coeffs(HeatParams(0.7, 0.8, 1.5, 0.2), 2, method='pade')

    def test_limit_value(self):
        assert limit_value(HeatParams(0.7, 0.8, 1.5, 0.2)) == pytest.approx(0.87367, abs=1e-5)
        assert limit_value(HeatParams(0.7, 0.8, 1.5, 0.0)) == 1.0

    def test_negative_order(self):
        with pytest.raises(DomainError):
            phi_coeffs(HeatParams(0.7, 0.8, 1.5, 0.2), -1)


class TestEigenfunction:
    def test_initial_value(self):
        assert eigenfunction_f(HeatParams(0.7, 0.9, 1.5, 1.0), 0.0) == 1.0

    def test_no_loss_is_constant(self):
        hp = HeatParams(0.7, 0.9, 1.5, 0.0)
        assert eigenfunction_f(hp, 3.0) == 1.0
        assert np.all(eigenfunction_samples(hp, np.linspace(0.0, 3.0, 7)) == 1.0)

    def test_rejects_negative_time(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        with pytest.raises(DomainError):
            eigenfunction_f(hp, -1.0)
        with pytest.raises(DomainError):
            eigenfunction_samples(hp, np.array([0.0, -1.0]))

    @pytest.mark.parametrize('t', [0.1, 0.5, 1.0, 2.0])
    def test_matches_oracle(self, t):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        assert eigenfunction_f(hp, t) == pytest.approx(heat_eigenfunction(0.7, 0.9, 1.5, 1.0, t), rel=1e-10)

    def test_samples_match_scalar(self):
        hp = HeatParams(0.6, 1.2, 1.5, 0.8)
        t = np.linspace(0.0, 6.0, 13)
        expected = [eigenfunction_f(hp, float(v)) for v in t]
        assert eigenfunction_samples(hp, t) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize('gamma', [0.5, 0.6, 0.9, 1.2])
    def test_relaxation_equation(self, gamma):
        # the Caputo-type operator maps f to -beta_loss f, from the first step on
        hp = HeatParams(0.7, gamma, 1.5, 1.0)
        f = SampledFunction.from_callable(lambda t: eigenfunction_samples(hp, t), 1e-3, 5.0)
        result = prabhakar_deriv_caputo(f, hp.operator_spec(), singular_terms=eigenfunction_singular_terms(hp))
        residual = result.values + hp.beta_loss * f.values
        assert result.low_accuracy_nodes == 0
        assert np.max(np.abs(residual[f.grid >= f.h])) <= 1e-3
        assert abs(residual[0]) <= 1e-12

    def test_relaxation_equation_plain_scheme(self):
        # without the start terms the scheme settles only away from t = 0
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        f = SampledFunction.from_callable(lambda t: eigenfunction_samples(hp, t), 1e-3, 5.0)
        residual = prabhakar_deriv_caputo(f, hp.operator_spec()).values + hp.beta_loss * f.values
        assert np.max(np.abs(residual[f.grid >= 0.1])) <= 1e-3
        assert np.max(np.abs(residual[1:10])) > 1e-2

    def test_singular_terms(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        terms = eigenfunction_singular_terms(hp)
        alpha_gamma = 0.7 * 0.9
        assert terms[0] == pytest.approx((-1.0 / math.gamma(1 + alpha_gamma), alpha_gamma), rel=1e-14)
        assert all(0 < exponent < 2.0 for _, exponent in terms)
        assert eigenfunction_singular_terms(HeatParams(0.7, 0.9, 1.5, 0.0)) == []

    @pytest.mark.parametrize('t', [1e-3, 1e-2])
    def test_singular_terms_describe_the_start(self, t):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        start = 1.0 + math.fsum(c * t ** s for c, s in eigenfunction_singular_terms(hp))
        assert abs(eigenfunction_f(hp, t) - start) <= 10 * t ** 2

    def test_singular_terms_validation(self):
        with pytest.raises(DomainError):
            eigenfunction_singular_terms(HeatParams(0.7, 0.9, 1.5, 1.0), max_exponent=0.0)

    def test_monotone_without_overshoot(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        f = eigenfunction_samples(hp, np.linspace(0.0, 5.0, 1000))
        assert np.all(np.diff(f) <= 1e-14)
        assert np.all(f > phi_coeffs(hp, 0)[0])

    def test_large_time_switch(self, settings):
        settings.PRABHAKAR = {'HEAT_T_SWITCH': 1e3}
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        assert eigenfunction_f(hp, 2e3) == f_asymptotic(hp, 2e3, J=4)


class TestLargeTime:
    def test_tends_to_phi0(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        assert abs(eigenfunction_f(hp, 1e4) - phi_coeffs(hp, 0)[0]) <= 1e-2

    def test_asymptotic_expansion(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        assert f_asymptotic(hp, 1e4, J=2) == pytest.approx(eigenfunction_f(hp, 1e4), rel=1e-4)

    def test_asymptotic_gap_decay(self):
        # the remainder after J = 2 decays like t^(-3 alpha)
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        gaps = [abs(eigenfunction_f(hp, t) - f_asymptotic(hp, t, J=2)) for t in (1e3, 1e4)]
        ratio = gaps[1] / gaps[0]
        expected = 10 ** (-3 * hp.alpha)
        assert expected / 2 <= ratio <= 2 * expected

    def test_leading_order_is_phi0(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        assert f_asymptotic(hp, 50.0, J=0) == phi_coeffs(hp, 0)[0]

    def test_two_term_form(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        phi = phi_coeffs(hp, 1)
        t = 300.0
        expected = phi[0] + t ** -0.7 * phi[1] / (1.5 * math.gamma(0.3))
        assert f_asymptotic(hp, t, J=1) == pytest.approx(expected, rel=1e-14)

    def test_tilde_beyond_unit_ratio(self):
        hp = HeatParams(0.7, 0.9, 1.0, 2.0)
        assert f_tilde(hp, 0.5) == pytest.approx(eigenfunction_f(hp, 0.5) - 1.0 / 3.0, rel=1e-14)
        assert f_tilde(hp, 0.0) == pytest.approx(2.0 / 3.0, rel=1e-14)

    def test_asymptotic_beyond_unit_ratio(self):
        hp = HeatParams(0.7, 0.9, 1.0, 2.0)
        t = 1e4
        x = t ** 0.7
        expected = 1 / 3 + 0.9 * 2 / 9 / (x * math.gamma(0.3)) + phi_coeffs(hp, 2)[2] / (x ** 2 * math.gamma(1 - 1.4))
        assert f_asymptotic(hp, t, J=2) == pytest.approx(expected, rel=1e-13)

    def test_tilde_at_origin(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        lam_gamma = 1.5 ** 0.9
        assert f_tilde(hp, 0.0) == pytest.approx(1.0 / (lam_gamma + 1.0), rel=1e-12)

    def test_asymptotic_needs_positive_time(self):
        with pytest.raises(DomainError):
            f_asymptotic(HeatParams(0.7, 0.9, 1.5, 1.0), 0.0)

    @pytest.mark.slow
    @pytest.mark.parametrize('alpha, gamma, lam, beta_loss', SLOPE_SETS)
    def test_power_law_decay(self, alpha, gamma, lam, beta_loss):
        # f - phi_0 ~ phi_1 / (Gamma(1-alpha) lam t^alpha)
        hp = HeatParams(alpha, gamma, lam, beta_loss)
        t = np.geomspace(1e3, 1e4, 6)
        tilde = np.array([f_tilde(hp, float(v)) for v in t])
        assert np.all(tilde > 0)
        slope = np.polyfit(np.log(t), np.log(tilde), 1)[0]
        assert slope == pytest.approx(-alpha, rel=0.02)

    def test_decade_ratio(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        ratio = f_tilde(hp, 1e4) / f_tilde(hp, 1e3)
        assert ratio == pytest.approx(10 ** -0.7, rel=0.05)


class TestLaplaceTransform:
    def test_matches_quadrature(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        s = 4.0
        value, _ = integrate.quad(lambda t: math.exp(-s * t) * eigenfunction_f(hp, t), 0.0, 5.0, limit=200)
        assert value == pytest.approx(eigenfunction_laplace(hp, s).real, rel=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            eigenfunction_laplace(HeatParams(0.7, 0.9, 1.5, 1.0), -1.0)


class TestSpatialProfiles:
    @pytest.mark.parametrize('x', [0.0, 0.5, 3.0])
    def test_power_profile_has_constant_flux(self, x):
        # T^(1+xi) is linear in x, so T^xi dT/dx is constant
        C, xi = 0.4, 1.5
        assert spatial_profile_power(x, C, xi) ** (1 + xi) == pytest.approx(x + C, rel=1e-14)

    def test_power_profile_flux_difference(self):
        C, xi, h = 0.4, 1.5, 1e-3
        x = np.array([0.5, 1.0, 2.0])

        def flux(u):
            T = np.array([spatial_profile_power(v, C, xi) for v in u])
            dT = np.array([(spatial_profile_power(v + h, C, xi) - spatial_profile_power(v - h, C, xi)) / (2 * h) for v in u])
            return T ** xi * dT

        values = flux(x)
        assert values == pytest.approx(np.full(3, 1 / (1 + xi)), rel=1e-6)

    def test_exp_profile(self):
        C, nu = 0.3, 2.0
        assert spatial_profile_exp(0.7, C, nu) == pytest.approx(0.0, abs=1e-15)
        assert math.exp(nu * spatial_profile_exp(2.5, C, nu)) == pytest.approx(2.8, rel=1e-14)

    def test_exp_profile_domain(self):
        with pytest.raises(DomainError, match="x > C"):
            spatial_profile_exp(0.2, 0.3, 2.0)
        with pytest.raises(DomainError):
            spatial_profile_power(-1.0, 0.4, 1.5)
        with pytest.raises(DomainError):
            spatial_profile_power(1.0, 0.4, 0.0)

    def test_separable_solutions(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        f = eigenfunction_f(hp, 2.0)
        assert heat_solution_power(1.0, 2.0, 0.4, 1.5, hp) == pytest.approx(1.4 ** 0.4 * f, rel=1e-14)
        assert heat_solution_exp(1.0, 2.0, 0.3, 2.0, hp) == pytest.approx(math.log(1.3) / 2.0 * f, rel=1e-14)

    def test_initial_profiles(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        assert heat_solution_power(0.0, 0.0, 0.4, 1.5, hp) == pytest.approx(0.4 ** 0.4, rel=1e-15)
        assert heat_solution_exp(2.0, 0.0, 0.5, 3.0, hp) == pytest.approx(math.log(2.5) / 3.0, rel=1e-15)

    def test_unit_spatial_factor(self):
        hp = HeatParams(0.7, 0.9, 1.5, 1.0)
        C = 0.5
        assert heat_solution_exp(math.e - C, 1.0, C, 1.0, hp) == pytest.approx(eigenfunction_f(hp, 1.0), rel=1e-14)
