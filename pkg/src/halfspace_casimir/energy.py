"""Casimir energy between two half spaces from the reflection factor.

The energy per unit area is (1/4 pi) * Int_0^inf dgamma gamma^2 *
ln(1 - N(gamma)^2 exp(-2 gamma L)).  Where the argument of the logarithm
turns negative the principal branch contributes i*pi; the imaginary part is
physics (an instability of the constant-coupling model), not an error, and
is reported alongside the real part.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import brentq

from .errors import DomainError
from .quadrature import (
    IntegralResult,
    QuadratureSpec,
    integrate_1d,
    integrate_semi_infinite,
)
from .reflection import CouplingMode, ModelParams, n_total, n_zero_limit

__all__ = [
    "EnergyResult",
    "EnergyCurve",
    "CurvePoint",
    "energy_integrand",
    "casimir_energy",
    "li4",
    "large_separation_limit",
    "dirichlet_reference",
    "eta_curve",
]


def _check_separation(L: float) -> float:
    if not (L > 0 and math.isfinite(L)):
        raise ValueError(f"separation L must be strictly positive, got {L}")
    return float(L)


@dataclass(frozen=True)
class EnergyResult:
    """Casimir energy per unit area at one separation (units hbar = c = 1)."""

    real_part: float
    imag_part: float
    stable: bool
    gamma_max_used: float
    error_estimate: float


@dataclass(frozen=True)
class CurvePoint:
    lambda_l: float
    eta: float
    energy: EnergyResult


@dataclass(frozen=True)
class EnergyCurve:
    mu: float
    rows: tuple[CurvePoint, ...]


def li4(z: float, tol: float = 1e-14) -> float:
    """Polylogarithm of order 4 by direct series summation, |z| <= 1."""
    if abs(z) > 1.0:
        raise DomainError(f"li4 requires |z| <= 1, got {z}")
    if z == 1.0:
        return math.pi**4 / 90.0
    total = 0.0
    n = 1
    zn = z
    while abs(zn) / n**4 >= tol:
        total += zn / n**4
        zn *= z
        n += 1
        if n > 2_000_000:  # unreachable for |z| < 1 at sane tol
            break
    return total


def dirichlet_reference(L: float) -> float:
    """Energy per unit area of ideal Dirichlet plates, -pi^2/(1440 L^3)."""
    L = _check_separation(L)
    return -math.pi**2 / (1440.0 * L**3)


# ---------------------------------------------------------------------------
# reflection-factor cache


class _ReflectionCurve:
    """Cubic-spline cache of gamma * N(gamma) on a log-spaced momentum grid.

    gamma * N is interpolated against ln(gamma): it is bounded for gamma -> 0
    in both coupling modes and slowly varying on the log axis.  Below the grid
    the factor is extended by its known limiting behavior (gamma * N constant
    for constant coupling, N constant for sqrt coupling); above the grid N is
    negligible by construction of the grid upper end.
    """

    POINTS_PER_DECADE = 8

    def __init__(self, p: ModelParams, spec: QuadratureSpec):
        self.p = p
        self.spec = spec
        self._nodes: dict[float, float] = {}  # ln gamma -> gamma * N
        self._lo = math.inf
        self._hi = -math.inf
        self._spline: CubicSpline | None = None
        self.interp_error = 0.0
        self._lock = threading.Lock()

    def ensure_range(self, gamma_lo: float, gamma_hi: float) -> None:
        with self._lock:
            if gamma_lo >= self._lo and gamma_hi <= self._hi:
                return
            lo = min(gamma_lo, self._lo if math.isfinite(self._lo) else gamma_lo)
            hi = max(gamma_hi, self._hi if math.isfinite(self._hi) else gamma_hi)
            n = max(8, int(math.ceil(math.log10(hi / lo) * self.POINTS_PER_DECADE)) + 1)
            for t in np.linspace(math.log(lo), math.log(hi), n):
                if t not in self._nodes:
                    g = math.exp(t)
                    self._nodes[t] = g * n_total(g, self.p, self.spec).total
            ts = np.array(sorted(self._nodes))
            ys = np.array([self._nodes[t] for t in ts])
            self._spline = CubicSpline(ts, ys)
            self._lo, self._hi = math.exp(ts[0]), math.exp(ts[-1])
            self._validate(ts)

    def _validate(self, ts: np.ndarray) -> None:
        # direct evaluation at ~5% of interval midpoints, worst deviation kept
        step = max(1, len(ts) // 20)
        dev = 0.0
        scale = 0.0
        for i in range(0, len(ts) - 1, step):
            tm = 0.5 * (ts[i] + ts[i + 1])
            g = math.exp(tm)
            direct = g * n_total(g, self.p, self.spec).total
            dev = max(dev, abs(float(self._spline(tm)) - direct))
            scale = max(scale, abs(direct))
        self.interp_error = dev / scale if scale > 0 else 0.0

    def __call__(self, gamma: np.ndarray) -> np.ndarray:
        gamma = np.asarray(gamma, dtype=float)
        out = np.empty_like(gamma)
        t = np.log(np.maximum(gamma, 1e-300))
        lo_t, hi_t = math.log(self._lo), math.log(self._hi)
        inside = (t >= lo_t) & (t <= hi_t)
        out[inside] = self._spline(t[inside]) / gamma[inside]
        below = t < lo_t
        if np.any(below):
            y_lo = float(self._spline(lo_t))
            if self.p.coupling_mode == CouplingMode.SQRT_MOMENTUM:
                out[below] = y_lo / self._lo  # N -> constant
            else:
                out[below] = y_lo / gamma[below]  # gamma * N -> constant
        above = t > hi_t
        out[above] = 0.0
        return out


_curve_cache: dict[tuple[ModelParams, QuadratureSpec], _ReflectionCurve] = {}
_curve_lock = threading.Lock()


def _cached_curve(p: ModelParams, spec: QuadratureSpec) -> _ReflectionCurve:
    key = (p, spec)
    with _curve_lock:
        curve = _curve_cache.get(key)
        if curve is None:
            curve = _curve_cache[key] = _ReflectionCurve(p, spec)
    return curve


# ---------------------------------------------------------------------------
# energy integral


def energy_integrand(
    gamma: float,
    L: float,
    p: ModelParams,
    n_provider: Callable[[np.ndarray], np.ndarray] | None = None,
    spec: QuadratureSpec | None = None,
) -> tuple[float, float]:
    """(real, imag) of gamma^2 * ln(1 - N^2 exp(-2 gamma L)) at one momentum."""
    L = _check_separation(L)
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if n_provider is None:
        if spec is None:
            spec = QuadratureSpec()
        n = n_total(gamma, p, spec).total
    else:
        n = float(np.asarray(n_provider(np.array([gamma])))[0])
    arg = 1.0 - n * n * math.exp(-2.0 * gamma * L)
    if arg > 0.0:
        return gamma**2 * math.log(arg), 0.0
    return gamma**2 * math.log(max(abs(arg), 5e-324)), gamma**2 * math.pi


def _log_abs_argument(
    gamma: np.ndarray, L: float, provider: Callable[[np.ndarray], np.ndarray]
) -> np.ndarray:
    n = provider(gamma)
    arg = 1.0 - n * n * np.exp(-2.0 * gamma * L)
    return gamma**2 * np.log(np.maximum(np.abs(arg), 5e-324))


def _find_crossings(
    L: float, provider: Callable[[np.ndarray], np.ndarray], gamma_hi: float
) -> list[float]:
    """Zeros of 1 - N^2 exp(-2 gamma L) located by scan plus root polishing."""

    def arg_of(g: float) -> float:
        n = float(np.asarray(provider(np.array([g])))[0])
        return 1.0 - n * n * math.exp(-2.0 * g * L)

    grid = np.geomspace(1e-9 / L, gamma_hi, 400)
    signs = np.array([arg_of(g) for g in grid])
    crossings = []
    for i in range(len(grid) - 1):
        if signs[i] == 0.0:
            crossings.append(grid[i])
        elif signs[i] * signs[i + 1] < 0.0:
            crossings.append(brentq(arg_of, grid[i], grid[i + 1], xtol=1e-300, rtol=1e-14))
    return crossings


def casimir_energy(
    L: float,
    p: ModelParams,
    spec: QuadratureSpec,
    n_provider: Callable[[np.ndarray], np.ndarray] | None = None,
) -> EnergyResult:
    """Casimir energy per unit area at separation L.

    Uses a cubic-interpolated cache of the reflection factor unless an
    explicit ``n_provider`` (vectorized gamma -> N) is given.  The momentum
    integral is split at the zeros of the logarithm's argument; on unstable
    stretches the imaginary part gamma^2 * pi integrates exactly to
    (b^3 - a^3) * pi / 3.
    """
    L = _check_separation(L)
    if p.lam == 0.0 and n_provider is None:
        return EnergyResult(0.0, 0.0, True, 0.0, 0.0)

    interp_error = 0.0
    if n_provider is None:
        curve = _cached_curve(p, spec)
        gamma_lo = 1e-3 * min(p.m, 1.0 / L)
        gamma_hi = 30.0 / L
        curve.ensure_range(gamma_lo, gamma_hi)
        provider: Callable[[np.ndarray], np.ndarray] = curve
        interp_error = curve.interp_error
    else:
        provider = n_provider
        gamma_hi = 30.0 / L

    tracker = {"gamma_max": 0.0}

    def f(gamma: np.ndarray) -> np.ndarray:
        tracker["gamma_max"] = max(tracker["gamma_max"], float(np.max(gamma)))
        return _log_abs_argument(gamma, L, provider)

    crossings = _find_crossings(L, provider, gamma_hi)
    edges = [0.0] + crossings
    real_sum = 0.0
    err_sum = 0.0
    evals = 0
    for a, b in zip(edges[:-1], edges[1:]):
        r = integrate_1d(f, a, b, spec).require_converged(
            f"energy integrand on ({a:.4g}, {b:.4g})"
        )
        real_sum += r.value
        err_sum += r.error_estimate
        evals += r.evaluations
    tail = integrate_semi_infinite(f, edges[-1], 2.0 * L, spec).require_converged(
        "energy integrand tail"
    )
    real_sum += tail.value
    err_sum += tail.error_estimate

    imag_sum = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        mid = 0.5 * (a + b)
        n = float(np.asarray(provider(np.array([max(mid, 1e-300)])))[0])
        if 1.0 - n * n * math.exp(-2.0 * mid * L) < 0.0:
            imag_sum += (b**3 - a**3) * math.pi / 3.0

    pref = 1.0 / (4.0 * math.pi)
    real_part = pref * real_sum
    imag_part = pref * imag_sum
    error = pref * err_sum + 2.0 * interp_error * abs(real_part)
    stable = imag_part < spec.abs_tol
    return EnergyResult(real_part, imag_part, stable, tracker["gamma_max"], error)


def large_separation_limit(p: ModelParams, spec: QuadratureSpec) -> float:
    """Coefficient of 1/L^3 in the large-separation energy, -Li4(C^2)/(16 pi).

    C is the zero-momentum limit of the reflection factor (sqrt-coupling
    mode); the polylogarithm argument is its square since the energy
    logarithm contains N^2.
    """
    if p.coupling_mode != CouplingMode.SQRT_MOMENTUM:
        raise DomainError("large_separation_limit requires sqrt_momentum mode")
    if p.lam == 0.0:
        return 0.0
    c = n_zero_limit(p, spec)
    return -li4(c * c) / (16.0 * math.pi)


def eta_curve(
    mu: float, abscissae: Sequence[float], spec: QuadratureSpec
) -> EnergyCurve:
    """Ratio of the model energy to the Dirichlet reference along a grid.

    Works in units of the coupling amplitude (lambda_0 = 1), so the mass is
    mu = m/lambda and the abscissa is the dimensionless separation lambda*L.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    xs = list(abscissae)
    if any(b <= a for a, b in zip(xs[:-1], xs[1:])):
        raise ValueError("abscissae must be strictly increasing")
    p = ModelParams(1.0, mu, CouplingMode.SQRT_MOMENTUM)
    rows = []
    for ll in xs:
        e = casimir_energy(ll, p, spec)
        rows.append(CurvePoint(ll, e.real_part / dirichlet_reference(ll), e))
    return EnergyCurve(mu, tuple(rows))
