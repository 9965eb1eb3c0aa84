"""Tests for the adaptive quadrature engine."""

import math

import numpy as np
import pytest

from halfspace_casimir.energy import li4
from halfspace_casimir.errors import NonFiniteEvaluation
from halfspace_casimir.quadrature import (
    EndpointTransform,
    QuadratureSpec,
    integrate_1d,
    integrate_2d,
    integrate_semi_infinite,
)

SPEC = QuadratureSpec()
SQRT = QuadratureSpec(endpoint_transform=EndpointTransform.SQRT_BOTH_ENDS)


class TestIntegrate1D:
    def test_constant(self):
        r = integrate_1d(lambda x: np.ones_like(x), 0.0, 1.0, SPEC)
        assert r.converged
        assert r.value == pytest.approx(1.0, rel=1e-12)

    def test_inverse_sqrt_endpoints_is_pi(self):
        # beta integral B(1/2, 1/2)
        r = integrate_1d(lambda x: 1.0 / np.sqrt(x * (1.0 - x)), 0.0, 1.0, SQRT)
        assert r.converged
        assert r.value == pytest.approx(math.pi, rel=1e-10)

    def test_sqrt_arc_is_pi_over_8(self):
        r = integrate_1d(lambda x: np.sqrt(x * (1.0 - x)), 0.0, 1.0, SQRT)
        assert r.converged
        assert r.value == pytest.approx(math.pi / 8.0, rel=1e-10)

    def test_transform_on_regular_integrand_matches_plain(self):
        f = lambda x: np.exp(-x) * np.cos(3.0 * x)
        plain = integrate_1d(f, 0.0, 1.0, SPEC)
        transformed = integrate_1d(f, 0.0, 1.0, SQRT)
        assert abs(plain.value - transformed.value) <= (
            plain.error_estimate + transformed.error_estimate + 1e-13
        )

    def test_halving_rel_tol_stays_within_error_budget(self):
        f = lambda x: np.log(1.0 + x) / (1.0 + x * x)
        loose = integrate_1d(f, 0.0, 4.0, SPEC.but(rel_tol=2e-7))
        tight = integrate_1d(f, 0.0, 4.0, SPEC.but(rel_tol=1e-7))
        assert loose.converged and tight.converged
        assert abs(loose.value - tight.value) <= (
            loose.error_estimate + tight.error_estimate
        )

    def test_non_finite_integrand_raises(self):
        with np.errstate(divide="ignore"), pytest.raises(NonFiniteEvaluation):
            integrate_1d(lambda x: 1.0 / (x - 0.5), 0.0, 1.0, SPEC)

    def test_bad_interval_rejected(self):
        with pytest.raises(ValueError):
            integrate_1d(lambda x: x, 1.0, 0.0, SPEC)


class TestIntegrate2D:
    def test_unit_rectangle_area(self):
        r = integrate_2d(
            lambda x, y: np.ones_like(y), (0.0, 1.0), (-1.0, 1.0), SPEC,
            transform_x=EndpointTransform.NONE, transform_y=EndpointTransform.NONE,
        )
        assert r.converged
        assert r.value == pytest.approx(2.0, rel=1e-10)

    def test_separable_singular_factor(self):
        r = integrate_2d(
            lambda x, y: 1.0 / np.sqrt(x * (1.0 - x)) * np.ones_like(y),
            (0.0, 1.0), (-1.0, 1.0), SPEC,
            transform_x=EndpointTransform.SQRT_BOTH_ENDS,
            transform_y=EndpointTransform.NONE,
        )
        assert r.converged
        assert r.value == pytest.approx(2.0 * math.pi, rel=1e-9)

    def test_nesting_order_swap(self):
        f = lambda x, y: np.exp(x * y) / np.sqrt(y * (1.0 - y))
        a = integrate_2d(
            f, (0.0, 1.0), (0.0, 1.0), SPEC,
            transform_x=EndpointTransform.NONE,
            transform_y=EndpointTransform.SQRT_BOTH_ENDS,
        )
        b = integrate_2d(
            lambda y, x: f(x, y), (0.0, 1.0), (0.0, 1.0), SPEC,
            transform_x=EndpointTransform.SQRT_BOTH_ENDS,
            transform_y=EndpointTransform.NONE,
        )
        assert a.converged and b.converged
        assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-12


class TestSemiInfinite:
    def test_plain_exponential(self):
        r = integrate_semi_infinite(lambda x: np.exp(-2.0 * x), 0.0, 2.0, SPEC)
        assert r.converged
        assert r.value == pytest.approx(0.5, rel=1e-10)

    def test_gamma_squared_exponential(self):
        r = integrate_semi_infinite(lambda x: x**2 * np.exp(-2.0 * x), 0.0, 2.0, SPEC)
        assert r.converged
        assert r.value == pytest.approx(0.25, rel=1e-9)

    def test_energy_kernel_matches_polylog_series(self):
        # integral_0^inf x^2 ln(1 - z e^{-2x}) dx = -Li4(z)/4 at z = 1/2;
        # the series oracle gives Li4(0.5) = 0.51747906167389938...
        r = integrate_semi_infinite(
            lambda x: x**2 * np.log(1.0 - 0.5 * np.exp(-2.0 * x)), 0.0, 2.0, SPEC
        )
        assert r.converged
        assert r.value == pytest.approx(-li4(0.5) / 4.0, rel=1e-9)
        assert r.value == pytest.approx(-0.12936976541847484, rel=1e-9)


class TestSpecValidation:
    def test_rejects_nonpositive_tolerances(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)

    def test_converged_flag_consistent_with_estimate(self):
        r = integrate_1d(lambda x: np.sin(x), 0.0, 1.0, SPEC)
        assert r.converged
        assert r.error_estimate <= max(SPEC.abs_tol, SPEC.rel_tol * abs(r.value))
