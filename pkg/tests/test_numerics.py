import math

import numpy as np
import pytest

from entrobound.numerics import (
    ConvergenceError,
    DomainError,
    QuadratureSpec,
    SeriesSpec,
    bilateral_sum,
    integrate_gaussian_weighted,
    integrate_periodic,
    integrate_periodic_full,
    log_gamma,
    std_normal_cdf,
)

TWO_PI = 2.0 * math.pi


class TestStdNormalCdf:
    def test_symmetry_point(self):
        assert std_normal_cdf(0.0) == 0.5

    def test_saturation(self):
        assert abs(std_normal_cdf(40.0) - 1.0) <= 1e-15
        assert std_normal_cdf(-40.0) <= 1e-15

    def test_against_trapezoid_oracle(self):
        # oracle: 1e7-node trapezoid of the standard normal density on [-12, 1]
        x = np.linspace(-12.0, 1.0, 10**7)
        oracle = np.trapezoid(np.exp(-0.5 * x * x) / math.sqrt(TWO_PI), x)
        assert abs(oracle - 0.8413447460685088) < 1e-12  # frozen oracle output
        assert abs(std_normal_cdf(1.0) - 0.8413447460685429) < 1e-14
        assert abs(std_normal_cdf(1.0) - oracle) < 1e-12

    def test_reflection_identity(self):
        for t in np.linspace(-9, 9, 61):
            assert abs(std_normal_cdf(t) + std_normal_cdf(-t) - 1.0) <= 1e-14

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            std_normal_cdf(math.nan)


class TestLogGamma:
    @pytest.mark.parametrize(
        "x,expected", [(1.0, 0.0), (2.0, 0.0), (0.5, 0.5 * math.log(math.pi))]
    )
    def test_known_values(self, x, expected):
        assert abs(log_gamma(x) - expected) <= 1e-12 * max(1.0, abs(expected))

    def test_domain(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)
        with pytest.raises(DomainError):
            log_gamma(-1.5)

    def test_stirling_bracket(self):
        # 0 < log Gamma(x) - [(x - 1/2) log x - x + log(2 pi)/2] < 1/x on (1, 100]
        for x in np.linspace(1.0009765625, 100.0, 400):
            gap = log_gamma(x) - ((x - 0.5) * math.log(x) - x + 0.5 * math.log(TWO_PI))
            assert 0.0 < gap < 1.0 / x


class TestIntegratePeriodic:
    def test_constant(self):
        assert abs(integrate_periodic(lambda lam: np.ones_like(lam)) - TWO_PI) < 1e-12

    def test_full_period_cosine(self):
        assert abs(integrate_periodic(np.cos)) < 1e-12

    def test_log_cosine_against_closed_form(self):
        from entrobound.spectrum import closed_form_log_cos_integral

        val = integrate_periodic(lambda lam: np.log(1.0 + 0.5 * np.cos(lam)))
        assert abs(val - TWO_PI * closed_form_log_cos_integral(0.5)) < 1e-10

    def test_trig_polynomial_exact(self):
        # degree-11 polynomial: exact once the node count clears 2*11 + 2
        def f(lam):
            return 3.0 + np.cos(5 * lam) - 2.0 * np.cos(11 * lam) + np.sin(7 * lam)

        res = integrate_periodic_full(f)
        assert abs(res.value - 6.0 * math.pi) <= 1e-13 * 6 * math.pi
        assert res.points <= 128

    def test_non_convergence_diagnostics(self):
        spec = QuadratureSpec(max_points=32, abs_tol=1e-15)
        with pytest.raises(ConvergenceError) as err:
            integrate_periodic(lambda lam: np.log(2.0 + 1.99 * np.cos(lam)), spec)
        assert len(err.value.estimates) == 2

    def test_non_finite_integrand(self):
        with np.errstate(invalid="ignore"):
            with pytest.raises(DomainError):
                integrate_periodic(lambda lam: np.log(np.cos(lam)))


class TestIntegrateGaussianWeighted:
    def test_density_normalization(self):
        one = integrate_gaussian_weighted(lambda s: np.ones_like(s), 1.0)
        assert abs(one - 1.0) < 1e-12

    def test_second_moment(self):
        m2 = integrate_gaussian_weighted(lambda s: s * s, 2.0)
        assert abs(m2 - 4.0) < 1e-9

    def test_odd_integrand(self):
        assert abs(integrate_gaussian_weighted(lambda s: s, 1.0)) < 1e-12

    def test_gauss_legendre_variant(self):
        from entrobound.numerics import QuadratureMethod

        spec = QuadratureSpec(method=QuadratureMethod.GAUSS_LEGENDRE)
        m2 = integrate_gaussian_weighted(lambda s: s * s, 1.5, spec)
        assert abs(m2 - 2.25) < 1e-8

    def test_sigma_domain(self):
        with pytest.raises(DomainError):
            integrate_gaussian_weighted(lambda s: s, 0.0)


class TestBilateralSum:
    def test_delta(self):
        assert bilateral_sum(lambda k: 1.0 if k == 0 else 0.0) == 1.0

    def test_geometric(self):
        assert abs(bilateral_sum(lambda k: 0.5 ** abs(k)) - 3.0) < 1e-11

    def test_odd_summand(self):
        assert abs(bilateral_sum(lambda k: k * math.exp(-k * k))) < 1e-12

    def test_matches_direct_window(self):
        term = lambda k: 0.9 ** abs(k) * math.cos(0.3 * k)
        direct = sum(term(k) for k in range(-10**4, 10**4 + 1))
        adaptive = bilateral_sum(term)
        assert abs(adaptive - direct) <= 1e-12 * abs(direct)

    def test_max_terms_exceeded(self):
        spec = SeriesSpec(max_terms=1000)
        with pytest.raises(ConvergenceError):
            bilateral_sum(lambda k: 1.0 / (1.0 + k * k), spec)


class TestSpecs:
    def test_quadrature_spec_invariants(self):
        with pytest.raises(DomainError):
            QuadratureSpec(max_points=4)
        with pytest.raises(DomainError):
            QuadratureSpec(abs_tol=0.0)

    def test_series_spec_invariants(self):
        with pytest.raises(DomainError):
            SeriesSpec(rel_tail_tol=0.0)
        with pytest.raises(DomainError):
            SeriesSpec(rel_tail_tol=1.5)
        with pytest.raises(DomainError):
            SeriesSpec(max_terms=0)
