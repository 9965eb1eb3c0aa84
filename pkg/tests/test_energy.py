"""Tests for the Casimir energy integral and polylogarithm helpers."""

import math

import numpy as np
import pytest

from halfspace_casimir.energy import (
    casimir_energy,
    dirichlet_reference,
    energy_integrand,
    eta_curve,
    large_separation_limit,
    li4,
)
from halfspace_casimir.errors import DomainError
from halfspace_casimir.quadrature import QuadratureSpec
from halfspace_casimir.reflection import CouplingMode, ModelParams

SPEC = QuadratureSpec()
FAST = QuadratureSpec(rel_tol=1e-7, abs_tol=1e-12)


class TestLi4:
    def test_zero(self):
        assert li4(0.0) == 0.0

    def test_one_is_zeta4(self):
        assert li4(1.0) == pytest.approx(math.pi**4 / 90.0, abs=1e-13)

    def test_half(self):
        assert li4(0.5) == pytest.approx(0.5174790616738982, abs=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            li4(1.5)

    @pytest.mark.parametrize("z", [0.1, 0.4, 0.9, 1.0])
    def test_bounded_below_by_first_term(self, z):
        assert li4(z) >= z

    def test_monotone_in_z(self):
        zs = np.linspace(0.0, 1.0, 11)
        vals = [li4(z) for z in zs]
        assert all(b > a for a, b in zip(vals, vals[1:]))


class TestDirichletReference:
    def test_unit_separation(self):
        assert dirichlet_reference(1.0) == pytest.approx(-math.pi**2 / 1440.0)

    def test_cubic_scaling(self):
        assert dirichlet_reference(2.0) == pytest.approx(dirichlet_reference(1.0) / 8.0)
        assert dirichlet_reference(10.0) == pytest.approx(-math.pi**2 / 1.44e6)

    def test_positive_separation_required(self):
        with pytest.raises(ValueError):
            dirichlet_reference(0.0)


class TestEnergyIntegrand:
    def test_zero_reflection(self):
        r, i = energy_integrand(1.0, 1.0, None, n_provider=lambda g: np.zeros_like(g))
        assert r == 0.0 and i == 0.0

    def test_half_argument(self):
        # N = 1 and gamma L = ln(2)/2 make N^2 e^{-2 gamma L} = 1/2
        g = 0.5 * math.log(2.0)
        r, i = energy_integrand(g, 1.0, None, n_provider=lambda x: np.ones_like(x))
        assert i == 0.0
        assert r == pytest.approx(g**2 * math.log(0.5), rel=1e-14)

    def test_negative_argument_branch(self):
        # N = 2 at small gamma L: argument 1 - 4 e^{-2 gamma L} < 0
        g = 0.1
        r, i = energy_integrand(g, 0.1, None, n_provider=lambda x: 2.0 * np.ones_like(x))
        assert i == pytest.approx(g**2 * math.pi)
        assert r == pytest.approx(g**2 * math.log(4.0 * math.exp(-2 * g * 0.1) - 1.0))


class TestCasimirEnergy:
    def test_lambda_zero(self):
        p = ModelParams(0.0, 1.0, CouplingMode.SQRT_MOMENTUM)
        e = casimir_energy(1.0, p, SPEC)
        assert e.real_part == 0.0 and e.imag_part == 0.0 and e.stable

    def test_frozen_kernel_closed_form(self):
        p = ModelParams(1.0, 1.0, CouplingMode.CONSTANT)
        for r0, L in [(0.5, 1.0), (0.3, 2.0)]:
            e = casimir_energy(
                L, p, SPEC, n_provider=lambda g, r0=r0: np.full_like(g, r0)
            )
            target = -li4(r0**2) / (16.0 * math.pi * L**3)
            assert e.stable
            assert e.real_part == pytest.approx(target, rel=1e-9)

    def test_constant_mode_unstable(self):
        p = ModelParams(1.0, 1.0, CouplingMode.CONSTANT)
        e = casimir_energy(1.0, p, FAST)
        assert not e.stable
        assert e.imag_part > 0.0

    def test_imag_part_nonnegative_and_stability_consistent(self):
        p = ModelParams(1.0, 0.5, CouplingMode.SQRT_MOMENTUM)
        e = casimir_energy(2.0, p, FAST)
        assert e.imag_part >= 0.0
        assert e.stable == (e.imag_part < FAST.abs_tol)

    @pytest.mark.parametrize("s", [0.5, 2.0])
    def test_dimensional_scaling(self, s):
        # E(L; m, lam0) = s^3 E(sL; m/s, lam0/sqrt(s)): the coupling
        # amplitude of the sqrt-momentum mode carries dimension sqrt(mass)
        p = ModelParams(1.0, 0.5, CouplingMode.SQRT_MOMENTUM)
        ps = ModelParams(1.0 / math.sqrt(s), 0.5 / s, CouplingMode.SQRT_MOMENTUM)
        e = casimir_energy(3.0, p, FAST)
        es = casimir_energy(3.0 * s, ps, FAST)
        assert e.real_part == pytest.approx(s**3 * es.real_part, rel=1e-5)


class TestLargeSeparation:
    def test_lambda_zero(self):
        p = ModelParams(0.0, 1.0, CouplingMode.SQRT_MOMENTUM)
        assert large_separation_limit(p, SPEC) == 0.0

    def test_requires_sqrt_mode(self):
        with pytest.raises(DomainError):
            large_separation_limit(ModelParams(1.0, 1.0, CouplingMode.CONSTANT), SPEC)

    def test_hypothetical_unit_argument(self):
        # if the squared zero-momentum factor were 1 the limit would be
        # -zeta(4)/(16 pi) = -pi^3/1440
        assert -li4(1.0) / (16.0 * math.pi) == pytest.approx(-math.pi**3 / 1440.0)


class TestEtaCurve:
    def test_rows_ordered_and_positive(self):
        curve = eta_curve(0.5, [1.0, 3.0, 10.0], FAST)
        lls = [pt.lambda_l for pt in curve.rows]
        assert lls == sorted(lls)
        for pt in curve.rows:
            assert pt.eta > 0.0
            assert pt.energy.real_part < 0.0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            eta_curve(-1.0, [1.0, 2.0], FAST)
        with pytest.raises(ValueError):
            eta_curve(0.5, [2.0, 1.0], FAST)
