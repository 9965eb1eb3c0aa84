"""Tests for the asymptotic expansions and fitting helpers."""

import math

import pytest

from halfspace_casimir.asymptotics import (
    AsymptoticRegime,
    Component,
    FitModel,
    Regime,
    asymptotic_value,
    fit_asymptotic_constant,
)
from halfspace_casimir.errors import DomainError, FitUnstable
from halfspace_casimir.quadrature import QuadratureSpec
from halfspace_casimir.reflection import CouplingMode, ModelParams, n_total

P = ModelParams(1.0, 1.0, CouplingMode.CONSTANT)
SPEC = QuadratureSpec()


class TestAsymptoticValue:
    def test_nt_large_gamma(self):
        v = asymptotic_value(
            AsymptoticRegime(Regime.LARGE_GAMMA, Component.NT), 1e3, P
        )
        assert v == pytest.approx(-1.28987 / (128.0 * math.pi**2 * 1e6))

    def test_total_small_gamma_leading(self):
        v = asymptotic_value(
            AsymptoticRegime(Regime.SMALL_GAMMA, Component.TOTAL), 1e-3, P
        )
        lead = 128.0 * math.pi**2 * 1e-3 * v
        assert lead == pytest.approx(-math.pi, rel=2e-3)

    def test_additivity_exact(self):
        for regime, gamma in [(Regime.SMALL_GAMMA, 1e-3), (Regime.LARGE_GAMMA, 1e3)]:
            total = asymptotic_value(AsymptoticRegime(regime, Component.TOTAL), gamma, P)
            nt = asymptotic_value(AsymptoticRegime(regime, Component.NT), gamma, P)
            t = asymptotic_value(AsymptoticRegime(regime, Component.T), gamma, P)
            assert total == nt + t

    def test_matches_numerics_in_both_regimes(self):
        for regime, gamma, tol in [
            (Regime.SMALL_GAMMA, 1e-3, 2e-3),
            (Regime.LARGE_GAMMA, 1e3, 2e-2),
        ]:
            numeric = n_total(gamma, P, SPEC).total
            analytic = asymptotic_value(
                AsymptoticRegime(regime, Component.TOTAL), gamma, P
            )
            assert numeric == pytest.approx(analytic, rel=tol)

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            asymptotic_value(AsymptoticRegime(Regime.SMALL_GAMMA, Component.NT), 1.0, P)
        with pytest.raises(DomainError):
            asymptotic_value(AsymptoticRegime(Regime.LARGE_GAMMA, Component.NT), 1.0, P)
        sqrt_p = ModelParams(1.0, 1.0, CouplingMode.SQRT_MOMENTUM)
        with pytest.raises(DomainError):
            asymptotic_value(
                AsymptoticRegime(Regime.SMALL_GAMMA, Component.NT), 1e-3, sqrt_p
            )

    def test_subleading_m_power_switch(self):
        r = AsymptoticRegime(Regime.SMALL_GAMMA, Component.NT)
        p2 = ModelParams(1.0, 2.0, CouplingMode.CONSTANT)
        v_default = asymptotic_value(r, 1e-3, p2)
        v_linear = asymptotic_value(r, 1e-3, p2, subleading_m_power=1)
        assert v_default != v_linear


class TestFit:
    def test_recovers_synthetic_constant(self):
        a, b = -1.28987, 0.3
        samples = [(g, a + b / g) for g in (1e2, 1e3, 1e4)]
        fit = fit_asymptotic_constant(samples, FitModel.CONST_OVER_GAMMA)
        assert fit.constant == pytest.approx(a, abs=1e-6)
        assert fit.companion == pytest.approx(b, rel=1e-6)

    def test_recovers_synthetic_log_model(self):
        slope, intercept = -2.0, 0.6137
        samples = [(g, slope * math.log(g) + intercept) for g in (1e2, 1e3, 1e4)]
        fit = fit_asymptotic_constant(samples, FitModel.LOG_PLUS_CONST)
        assert fit.constant == pytest.approx(intercept, abs=1e-9)
        assert fit.companion == pytest.approx(slope, abs=1e-9)

    def test_unstable_fit_raises(self):
        samples = [(1e2, 1.0), (1e3, -5.0), (1e4, 17.0)]
        with pytest.raises(FitUnstable):
            fit_asymptotic_constant(samples, FitModel.CONST_OVER_GAMMA)

    def test_needs_three_samples(self):
        with pytest.raises(DomainError):
            fit_asymptotic_constant([(1.0, 1.0), (2.0, 2.0)], FitModel.LOG_PLUS_CONST)
