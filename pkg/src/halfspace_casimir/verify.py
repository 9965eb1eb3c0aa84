"""Verification suite: the acceptance checks behind ``halfspace verify``.

Each check returns a CheckResult with the measured value, its target and
tolerance, and a short explanation.  The same functions back the
acceptance tests, so the CLI report and the test suite cannot drift
apart.  Expensive intermediate results are memoized per process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List

import numpy as np

from . import asymptotics, energy, reflection
from .asymptotics import FitModel, fit_asymptotic_constant
from .quadrature import EndpointTransform, QuadratureSpec, integrate_2d
from .reflection import CouplingMode, ModelParams, n_total

__all__ = ["CheckResult", "run_all", "format_report", "CHECKS"]

#: Default quadrature settings for the reflection-side checks.
_SPEC = QuadratureSpec()
#: Relaxed settings for the energy sweeps (they integrate many reflection
#: evaluations; 1e-7 keeps the suite well inside the runtime budget while
#: staying far below every tolerance tested here).
_ENERGY_SPEC = QuadratureSpec(rel_tol=1e-7, abs_tol=1e-12)

_FIT_GRID = (1e2, 1e3, 1e4)
#: The combined large-momentum intercept carries O(1/gamma) contamination
#: at gamma = 1e2, so its fit uses a higher grid (see the verification
#: notes in the README).
_TOTAL_FIT_GRID = (1e3, 3e3, 1e4, 3e4, 1e5)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    target: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = (
            f"[{status}] {self.name}: measured {self.measured:.9g}, "
            f"target {self.target:.9g}, tolerance {self.tolerance:.3g}"
        )
        if self.detail:
            out += f" — {self.detail}"
        return out


def _params(lam: float = 1.0, m: float = 1.0) -> ModelParams:
    return ModelParams(lam, m, CouplingMode.CONSTANT)


@lru_cache(maxsize=None)
def _scaled_components(gamma: float, m: float):
    """(128 pi^2 g^2 n_nt, 64 pi^2 g^2 n_t, 128 pi^2 g^2 total) at lambda=1."""
    b = n_total(gamma, _params(m=m), _SPEC)
    c = math.pi**2 * gamma**2
    return 128.0 * c * b.n_nt, 64.0 * c * b.n_t, 128.0 * c * b.total


def check_nt_large_gamma_constant() -> CheckResult:
    samples = [(g, _scaled_components(g, 1.0)[0]) for g in _FIT_GRID]
    fit = fit_asymptotic_constant(samples, FitModel.CONST_OVER_GAMMA)
    target = asymptotics.NT_LARGE_CONSTANT
    err = abs(fit.constant / target - 1.0)
    return CheckResult(
        "boundary part, large-momentum constant",
        err < 5e-3,
        fit.constant,
        target,
        5e-3,
        f"fit a + b/gamma over gamma = {_FIT_GRID}",
    )


def check_nt_small_gamma() -> CheckResult:
    gamma, m = 1e-3, 1.0
    b = n_total(gamma, _params(m=m), _SPEC)
    measured = 128.0 * math.pi**2 * gamma * b.n_nt
    target = -math.pi / (2.0 * m)
    err = abs(measured / target - 1.0)
    return CheckResult(
        "boundary part, small-momentum limit",
        err < 5e-3,
        measured,
        target,
        5e-3,
        "128 pi^2 gamma N_nt at gamma = 1e-3, m = 1",
    )


def check_t_small_gamma() -> CheckResult:
    gamma, m = 1e-3, 1.0
    b = n_total(gamma, _params(m=m), _SPEC)
    measured = 64.0 * math.pi**2 * gamma * b.n_t
    target = asymptotics.T_SMALL_CONSTANT / m
    err = abs(measured / target - 1.0)
    dev_pi4 = abs(measured / (-math.pi / 4.0) - 1.0)
    return CheckResult(
        "bulk part, small-momentum constant",
        err < 1e-2,
        measured,
        target,
        1e-2,
        f"deviation from -pi/4: {dev_pi4:.3e} (consistent with exactly -pi/4)",
    )


def check_t_large_gamma_log_fit() -> CheckResult:
    samples = [(g, _scaled_components(g, 1.0)[1]) for g in _FIT_GRID]
    fit = fit_asymptotic_constant(samples, FitModel.LOG_PLUS_CONST)
    target = asymptotics.T_LARGE_INTERCEPT
    slope_ok = abs(fit.companion - (-2.0)) < 0.02
    intercept_ok = abs(fit.constant / target - 1.0) < 2e-2
    return CheckResult(
        "bulk part, large-momentum log fit",
        slope_ok and intercept_ok,
        fit.constant,
        target,
        2e-2,
        f"slope {fit.companion:.5f} (target -2 +/- 0.02), intercept tolerance 2%",
    )


def check_total_large_gamma_log_fit() -> CheckResult:
    samples = [(g, _scaled_components(g, 1.0)[2]) for g in _TOTAL_FIT_GRID]
    fit = fit_asymptotic_constant(samples, FitModel.LOG_PLUS_CONST)
    target = asymptotics.TOTAL_LARGE_INTERCEPT
    slope_ok = abs(fit.companion - (-4.0)) < 0.02
    intercept_ok = abs(fit.constant / target - 1.0) < 2e-2

    # Cross identity: 2 * (bulk intercept) + (boundary constant) must match
    # the combined intercept.  All three fits use the same grid so that the
    # common O(1/gamma) contamination cancels in the comparison.
    nt_fit = fit_asymptotic_constant(
        [(g, _scaled_components(g, 1.0)[0]) for g in _FIT_GRID],
        FitModel.CONST_OVER_GAMMA,
    )
    t_fit = fit_asymptotic_constant(
        [(g, _scaled_components(g, 1.0)[1]) for g in _FIT_GRID],
        FitModel.LOG_PLUS_CONST,
    )
    tot_fit_common = fit_asymptotic_constant(
        [(g, _scaled_components(g, 1.0)[2]) for g in _FIT_GRID],
        FitModel.LOG_PLUS_CONST,
    )
    cross = abs(2.0 * t_fit.constant + nt_fit.constant - tot_fit_common.constant)
    return CheckResult(
        "combined large-momentum log fit",
        slope_ok and intercept_ok and cross < 0.002,
        fit.constant,
        target,
        2e-2,
        f"slope {fit.companion:.5f} (target -4), cross-identity residual "
        f"{cross:.2e} (< 0.002)",
    )


def check_total_small_gamma() -> CheckResult:
    gamma = 1e-3
    b = n_total(gamma, _params(), _SPEC)
    measured = 128.0 * math.pi**2 * gamma * b.total
    target = -math.pi
    err = abs(measured / target - 1.0)

    # Resolve the mass power p in the small-momentum subleading term
    # 4*gamma/(3*m**p) of the boundary part: measure the linear-in-gamma
    # coefficient at m = 1 and m = 2; its ratio is 2**p.
    def sublead(m: float) -> float:
        g = 1e-4 * m
        bb = n_total(g, _params(m=m), _SPEC)
        return (128.0 * math.pi**2 * g * bb.n_nt + math.pi / (2.0 * m)) / g

    p_meas = math.log(sublead(1.0) / sublead(2.0)) / math.log(2.0)
    return CheckResult(
        "combined small-momentum limit",
        err < 1e-2 and abs(p_meas - 2.0) < 0.1,
        measured,
        target,
        1e-2,
        f"subleading term scales as 4*gamma/(3*m^p) with measured p = "
        f"{p_meas:.4f}; p = 2 (the dimensionally consistent variant) is confirmed",
    )


def _sector1_unsubtracted(gamma: float, m: float, cutoff: float) -> float:
    """First-sector double integral without the counterterm, lower t2
    cutoff in place of the (logarithmically divergent) t2 -> 0 endpoint."""

    def f(t1: float, t2: np.ndarray) -> np.ndarray:
        d1 = t1 * t2 + t1 + 1.0
        return (
            1.0
            / (t1 + 1.0)
            / (t2 * np.sqrt(d1))
            / np.sqrt(d1 * gamma**2 + t2 * (t1 + 1.0) ** 2 * m**2)
        )

    r = integrate_2d(
        f,
        (0.0, 1.0),
        (cutoff, 1.0),
        _SPEC,
        transform_x=EndpointTransform.NONE,
        transform_y=EndpointTransform.NONE,
    )
    return r.require_converged("unsubtracted sector 1").value


def check_renormalization_cutoff() -> CheckResult:
    gamma, m = 1e3, 1.0
    eps = np.array([1e-3, 1e-4, 1e-5, 1e-6])
    unsub = np.array([_sector1_unsubtracted(gamma, m, e) for e in eps])
    design = np.column_stack([np.log(1.0 / eps), np.ones_like(eps)])
    coeffs, *_ = np.linalg.lstsq(design, unsub, rcond=None)
    fitted = design @ coeffs
    ss_res = float(np.sum((unsub - fitted) ** 2))
    ss_tot = float(np.sum((unsub - unsub.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot

    sub = {
        e: reflection._sector_integral(1, gamma, m, _SPEC, t2_cutoff=e)
        .require_converged("subtracted sector 1")
        .value
        for e in (1e-6, 1e-8)
    }
    rel_change = abs(sub[1e-8] - sub[1e-6]) / abs(sub[1e-8])
    passed = r2 > 0.999 and rel_change < 1e-8
    return CheckResult(
        "renormalization: cutoff (in)sensitivity",
        passed,
        rel_change,
        0.0,
        1e-8,
        f"unsubtracted log-divergence fit R^2 = {r2:.10f} (> 0.999 ok); "
        f"subtracted integral changes by {rel_change:.3e} relative between "
        f"cutoffs 1e-6 and 1e-8 — the subtracted integrand tends to the "
        f"finite nonzero value -t1/((t1+1)^3 gamma) at t2 = 0, so its "
        f"cutoff sensitivity is linear in the cutoff and the relative "
        f"change is ~1.1e-6 independent of gamma and m; a 1e-8 bound is "
        f"unattainable for this (pointwise-subtracted) scheme. Absolute "
        f"change: {abs(sub[1e-8] - sub[1e-6]):.3e}.",
    )


def check_constant_mode_instability() -> CheckResult:
    p = _params()
    worst_imag = math.inf
    ok = True
    for L in (0.5, 1.0, 5.0):
        e = energy.casimir_energy(L, p, _ENERGY_SPEC)
        ok = ok and (not e.stable) and e.imag_part > 0.0
        worst_imag = min(worst_imag, e.imag_part)
    return CheckResult(
        "constant coupling: complex energy at every separation",
        ok,
        worst_imag,
        0.0,
        0.0,
        "stable=false with imag_part > 0 required at lambda*L in {0.5, 1, 5}; "
        "measured value is the smallest imaginary part seen",
    )


def check_frozen_kernel() -> CheckResult:
    r = 0.5
    p = _params()
    e = energy.casimir_energy(
        1.0, p, _SPEC, n_provider=lambda g: np.full_like(np.asarray(g, float), r)
    )
    target = -energy.li4(r**2) / (16.0 * math.pi)
    err = abs(e.real_part / target - 1.0)
    return CheckResult(
        "closed-form kernel with frozen reflection factor",
        err < 1e-9,
        e.real_part,
        target,
        1e-9,
        "reflection factor frozen to 0.5, L = 1, against the order-4 "
        "polylogarithm series",
    )


@lru_cache(maxsize=None)
def _plateau_gaps() -> tuple:
    p = ModelParams(1.0, 0.01, CouplingMode.SQRT_MOMENTUM)
    limit = energy.large_separation_limit(p, _ENERGY_SPEC)
    gaps = []
    for L in (8000.0, 16000.0, 32000.0):
        e = energy.casimir_energy(L, p, _ENERGY_SPEC)
        gaps.append(abs(e.real_part * L**3 / limit - 1.0))
    return tuple(gaps)


def check_large_separation_plateau() -> CheckResult:
    gaps = _plateau_gaps()
    ok = gaps[-1] < 2e-2 and gaps[0] > gaps[1] > gaps[2]
    return CheckResult(
        "large-separation plateau (sqrt mode, mu = 0.01)",
        ok,
        gaps[-1],
        0.0,
        2e-2,
        f"|E*L^3/limit - 1| over lambda*L in (8000, 16000, 32000): "
        f"{gaps[0]:.4f}, {gaps[1]:.4f}, {gaps[2]:.4f} (monotone decrease required)",
    )


def check_eta_ordering() -> CheckResult:
    mus = (0.001, 0.01, 0.5, 1.0)
    grid = tuple(np.geomspace(0.1, 100.0, 7))
    curves = [energy.eta_curve(mu, grid, _ENERGY_SPEC) for mu in mus]
    etas = np.array([[pt.eta for pt in c.rows] for c in curves])
    ordered = bool(np.all(np.diff(etas, axis=0) < 0.0))
    min_sep = float(np.min(etas[:-1] - etas[1:]))
    return CheckResult(
        "eta curves ordered by mass-to-coupling ratio",
        ordered,
        min_sep,
        0.0,
        0.0,
        "eta(mu) strictly decreasing in mu at 7 log-spaced separations in "
        "[0.1, 100]; measured value is the smallest pointwise gap",
    )


def _mc_oracle_mp(gamma: float, m: float, seed: int = 20260826):
    """Monte-Carlo estimate (mean, standard error) of the mixed-orientation
    double integral over [0,1]^2 (x and the non-negative angular half)."""
    rng = np.random.default_rng(seed)
    n, chunk = 10_000_000, 1_000_000
    total = 0.0
    total_sq = 0.0
    for _ in range(n // chunk):
        x = rng.random(chunk)
        mu = rng.random(chunk)
        v = reflection._n_mp_integrand(gamma, m, mu, x)
        total += float(np.sum(v))
        total_sq += float(np.sum(v * v))
    mean = total / n
    var = total_sq / n - mean**2
    return mean, math.sqrt(var / n)


def check_property_suite() -> CheckResult:
    details: List[str] = []
    ok = True

    # lambda^2 linearity (exact by construction, still asserted)
    b1 = n_total(1.3, _params(lam=1.0), _SPEC)
    b2 = n_total(1.3, _params(lam=2.0), _SPEC)
    lin = abs(b2.total - 4.0 * b1.total)
    ok &= lin <= 1e-15 * abs(b2.total)
    details.append(f"lambda^2 linearity residual {lin:.1e}")

    # scale invariance of the dimensionless factor
    worst = 0.0
    base = n_total(1.0, _params(), _SPEC)
    for s in (0.5, 2.0, 10.0):
        scaled = n_total(s, ModelParams(s, s, CouplingMode.CONSTANT), _SPEC)
        diff = abs(scaled.total - base.total)
        budget = base.error_estimate + scaled.error_estimate
        ok &= diff <= max(budget, 1e-12)
        worst = max(worst, diff)
    details.append(f"scale invariance worst |diff| {worst:.1e}")

    # polylogarithm normalization
    li_err = abs(energy.li4(1.0) - math.pi**4 / 90.0)
    ok &= li_err < 1e-12
    details.append(f"Li4(1) error {li_err:.1e}")

    # Monte-Carlo oracle for the mixed-orientation integral (fixed seed)
    worst_sigma = 0.0
    for gamma in (0.1, 1.0, 10.0):
        quad = reflection._n_mp_integral(gamma, 1.0, _SPEC).require_converged(
            "mixed-orientation integral"
        )
        mc_mean, mc_se = _mc_oracle_mp(gamma, 1.0)
        sigmas = abs(quad.value - mc_mean) / mc_se
        ok &= sigmas < 3.0
        worst_sigma = max(worst_sigma, sigmas)
    details.append(f"Monte-Carlo oracle worst deviation {worst_sigma:.2f} sigma (< 3)")

    return CheckResult(
        "property suite (linearity, scaling, Li4, Monte-Carlo oracle)",
        bool(ok),
        worst_sigma,
        0.0,
        3.0,
        "; ".join(details),
    )


CHECKS: List[Callable[[], CheckResult]] = [
    check_nt_large_gamma_constant,
    check_nt_small_gamma,
    check_t_small_gamma,
    check_t_large_gamma_log_fit,
    check_total_large_gamma_log_fit,
    check_total_small_gamma,
    check_renormalization_cutoff,
    check_constant_mode_instability,
    check_frozen_kernel,
    check_large_separation_plateau,
    check_eta_ordering,
    check_property_suite,
]


def run_all() -> List[CheckResult]:
    return [check() for check in CHECKS]


def format_report(results: List[CheckResult]) -> str:
    lines = [r.line() for r in results]
    n_pass = sum(r.passed for r in results)
    lines.append(f"{n_pass}/{len(results)} checks passed")
    return "\n".join(lines)
