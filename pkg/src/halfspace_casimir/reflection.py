"""Reflection factor of a single half space on the Euclidean momentum axis.

The factor splits into a boundary-induced part (two one- and two-dimensional
integrals over a Feynman parameter and an angular variable) and a bulk part
that requires subtractive renormalization.  The bulk part is organized into
three parameter-space sectors; the subtraction that enforces a vanishing
self-energy at zero momentum is performed pointwise under the integral, with
the two square roots combined analytically so the near-cancellation at small
t2 never hits floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import DomainError, ExtrapolationUnstable
from .quadrature import (
    EndpointTransform,
    QuadratureSpec,
    integrate_1d,
    integrate_2d,
)

__all__ = [
    "CouplingMode",
    "ModelParams",
    "ReflectionBreakdown",
    "n_minus_minus",
    "n_minus_plus",
    "n_nt",
    "sector_integrand",
    "n_t_renormalized",
    "n_total",
    "n_zero_limit",
]

_SQRT = EndpointTransform.SQRT_BOTH_ENDS


class CouplingMode(str, Enum):
    CONSTANT = "constant"
    SQRT_MOMENTUM = "sqrt_momentum"


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs: coupling amplitude, mass, and coupling mode.

    In ``sqrt_momentum`` mode ``lam`` is the amplitude lambda_0 of the
    momentum-dependent coupling lambda_0 * sqrt(gamma).
    """

    lam: float
    m: float
    coupling_mode: CouplingMode = CouplingMode.CONSTANT

    def __post_init__(self) -> None:
        if not (self.m > 0 and math.isfinite(self.m)):
            raise ValueError("mass m must be positive (massless limit is singular)")
        if not math.isfinite(self.lam):
            raise ValueError("coupling must be finite")

    def coupling_sq(self, gamma: float) -> float:
        """Effective lambda^2 at momentum gamma."""
        if self.coupling_mode == CouplingMode.SQRT_MOMENTUM:
            return self.lam**2 * gamma
        return self.lam**2


@dataclass(frozen=True)
class ReflectionBreakdown:
    """Per-component reflection factor values at one Euclidean momentum."""

    n_mm: float
    n_mp: float
    n_nt: float
    n_t_sectors: tuple[float, float, float]
    n_t: float
    total: float
    error_estimate: float

    @classmethod
    def assemble(
        cls,
        n_mm: float,
        n_mp: float,
        sectors: tuple[float, float, float],
        error_estimate: float,
    ) -> "ReflectionBreakdown":
        nt = n_mm + 2.0 * n_mp
        t = 2.0 * (sectors[0] + sectors[1] + sectors[2])
        return cls(n_mm, n_mp, nt, sectors, t, nt + t, error_estimate)


def _check_gamma(gamma: float) -> float:
    if not (gamma > 0 and math.isfinite(gamma)):
        raise DomainError(f"gamma must be strictly positive and finite, got {gamma}")
    return float(gamma)


# ---------------------------------------------------------------------------
# boundary-induced part


def _n_mm_integral(gamma: float, m: float, spec: QuadratureSpec):
    # Rewritten bracket: gamma/6 - Int sqrt(x(1-x)) sqrt(x(1-x) g^2 + m^2) dx
    # equals -m^2 * Int sqrt(x(1-x)) / (sqrt(x(1-x) g^2 + m^2)
    #                                   + gamma sqrt(x(1-x))) dx,
    # which is free of the large-gamma cancellation of the original form.
    def f(x: np.ndarray) -> np.ndarray:
        r = np.sqrt(x * (1.0 - x))
        return r / (np.sqrt(r * r * gamma * gamma + m * m) + gamma * r)

    return integrate_1d(f, 0.0, 1.0, spec.but(endpoint_transform=_SQRT))


def n_minus_minus(gamma: float, p: ModelParams, spec: QuadratureSpec) -> float:
    """Same-orientation image contribution (coupling taken at face value)."""
    gamma = _check_gamma(gamma)
    if p.lam == 0.0:
        return 0.0
    r = _n_mm_integral(gamma, p.m, spec).require_converged("n_minus_minus")
    return p.lam**2 / (32.0 * math.pi**2 * gamma) * r.value


def _n_mp_integrand(gamma: float, m: float, mu: float, x: np.ndarray) -> np.ndarray:
    w = mu * mu * x + (1.0 - x)
    with np.errstate(divide="ignore", over="ignore"):
        q = (gamma * gamma + m * m / (x * (1.0 - x))) * w
        return 1.0 / (np.sqrt(w) * (gamma + np.sqrt(q)))


def _n_mp_integral(gamma: float, m: float, spec: QuadratureSpec):
    # even in mu: integrate over [0, 1] and double
    def f(mu: float, x: np.ndarray) -> np.ndarray:
        return _n_mp_integrand(gamma, m, mu, x)

    return integrate_2d(
        f,
        (0.0, 1.0),
        (0.0, 1.0),
        spec,
        transform_x=EndpointTransform.NONE,
        transform_y=_SQRT,
    )


def n_minus_plus(gamma: float, p: ModelParams, spec: QuadratureSpec) -> float:
    """Mixed-orientation image contribution (coupling taken at face value).

    Normalized as a single cross term, -lambda^2/(128 pi^2 gamma) times the
    double integral over the full angular range; entering twice in ``n_nt``
    this reproduces the known small- and large-momentum constants
    (-pi/(2m) and -1.28987).
    """
    gamma = _check_gamma(gamma)
    if p.lam == 0.0:
        return 0.0
    r = _n_mp_integral(gamma, p.m, spec).require_converged("n_minus_plus")
    # 2 * r.value is the integral over mu in [-1, 1]
    return -p.lam**2 / (128.0 * math.pi**2 * gamma) * (2.0 * r.value)


def n_nt(gamma: float, p: ModelParams, spec: QuadratureSpec) -> float:
    """Boundary-induced part: n_mm + 2 n_mp."""
    return n_minus_minus(gamma, p, spec) + 2.0 * n_minus_plus(gamma, p, spec)


# ---------------------------------------------------------------------------
# bulk part: three parameter-space sectors, renormalized by subtraction


def _sector_d(i: int, t1, t2, delta: float):
    if i == 1:
        return t1 * t2 * delta + t1 + 1.0
    if i == 2:
        return t1 * t2 + t1 * delta + 1.0
    if i == 3:
        return t1 * t2 + t1 + delta
    raise DomainError(f"sector index must be 1, 2 or 3, got {i}")


def sector_integrand(
    i: int,
    t1: float,
    t2: float,
    gamma: float,
    p: ModelParams,
    delta: float,
) -> float:
    """Bulk-sector integrand without the lambda^2/(64 pi^2 gamma) prefactor."""
    gamma = _check_gamma(gamma)
    if not (0.0 < t1 < 1.0 and 0.0 < t2 < 1.0):
        raise DomainError(f"(t1, t2) must lie in the open unit square, got ({t1}, {t2})")
    m2 = p.m**2
    d = _sector_d(i, t1, t2, delta)
    if i == 1:
        return 1.0 / (
            (t1 + 1.0)
            * t2
            * math.sqrt(d)
            * math.sqrt(d * gamma**2 + t2 * (t1 + 1.0) ** 2 * m2)
        )
    if i == 2:
        return math.sqrt(t2) / (
            (1.0 + t1 * t2)
            * math.sqrt(d)
            * math.sqrt(t2 * d * gamma**2 + (t1 * t2 + 1.0) ** 2 * m2)
        )
    # 1/(1+t2) follows from the sector-3 parametrization; the alternative
    # 1/(1+t1) variant fails both asymptotic limits (see README numerical
    # notes).
    return math.sqrt(t2) / (
        (1.0 + t2)
        * math.sqrt(d)
        * math.sqrt(t2 * d * gamma**2 + (t2 + 1.0) ** 2 * m2)
    )


def _sector_diff(
    i: int, t1: float, t2: np.ndarray, gamma: float, m: float
) -> np.ndarray:
    """Pointwise delta=1 minus delta=0 sector integrand, cancellation-safe.

    Writing both terms as 1/sqrt(u) and 1/sqrt(v), the difference is
    (v - u)/(sqrt(u) sqrt(v) (sqrt(u) + sqrt(v))) with v - u reduced
    analytically; for sector 1 this also cancels the explicit 1/t2.
    """
    g2 = gamma * gamma
    m2 = m * m
    if i == 1:
        d1 = t1 * t2 + t1 + 1.0
        d0 = t1 + 1.0
        s = t2 * (t1 + 1.0) ** 2 * m2
        u = d1 * (d1 * g2 + s)
        v = d0 * (d0 * g2 + s)
        num = (d0 + d1) * g2 + s
        su, sv = np.sqrt(u), np.sqrt(v)
        return -(t1 / (t1 + 1.0)) * num / (su * sv * (su + sv))
    if i == 2:
        d1 = t1 * t2 + t1 + 1.0
        d0 = t1 * t2 + 1.0
        s = (t1 * t2 + 1.0) ** 2 * m2
        u = d1 * (t2 * d1 * g2 + s)
        v = d0 * (t2 * d0 * g2 + s)
        num = t2 * (d0 + d1) * g2 + s
        su, sv = np.sqrt(u), np.sqrt(v)
        return -t1 * np.sqrt(t2) * num / ((1.0 + t1 * t2) * su * sv * (su + sv))
    if i == 3:
        d1 = t1 * t2 + t1 + 1.0
        d0 = t1 * t2 + t1
        s = (t2 + 1.0) ** 2 * m2
        u = d1 * (t2 * d1 * g2 + s)
        v = d0 * (t2 * d0 * g2 + s)
        num = t2 * (d0 + d1) * g2 + s
        su, sv = np.sqrt(u), np.sqrt(v)
        return -np.sqrt(t2) * num / ((1.0 + t2) * su * sv * (su + sv))
    raise DomainError(f"sector index must be 1, 2 or 3, got {i}")


def _sector_integral(
    i: int, gamma: float, m: float, spec: QuadratureSpec, t2_cutoff: float = 0.0
):
    # Sectors 1 and 2 are smooth in t1, so t1 runs outside and t2 (which
    # develops a 1/sqrt(t2) layer at small gamma) inside.  Sector 3 carries a
    # 1/sqrt(t1) singularity from the subtraction term; putting t1 inside
    # keeps the outer integrand bounded.
    if i == 3:

        def f(t2: float, t1: np.ndarray) -> np.ndarray:
            return _sector_diff(i, t1, t2, gamma, m)

        return integrate_2d(
            f,
            (t2_cutoff, 1.0),
            (0.0, 1.0),
            spec,
            transform_x=_SQRT,
            transform_y=_SQRT,
        )

    def g(t1: float, t2: np.ndarray) -> np.ndarray:
        return _sector_diff(i, t1, t2, gamma, m)

    return integrate_2d(
        g,
        (0.0, 1.0),
        (t2_cutoff, 1.0),
        spec,
        transform_x=EndpointTransform.NONE,
        transform_y=_SQRT,
    )


def n_t_renormalized(gamma: float, p: ModelParams, spec: QuadratureSpec) -> float:
    """Renormalized bulk part, 2 * sum of the subtracted sector integrals."""
    gamma = _check_gamma(gamma)
    if p.lam == 0.0:
        return 0.0
    total = 0.0
    for i in (1, 2, 3):
        r = _sector_integral(i, gamma, p.m, spec).require_converged(f"sector {i}")
        total += r.value
    return 2.0 * p.lam**2 / (64.0 * math.pi**2 * gamma) * total


# ---------------------------------------------------------------------------
# assembly


@lru_cache(maxsize=8192)
def _base_components(gamma: float, m: float, spec: QuadratureSpec):
    """All integrals at lambda = 1, constant coupling; everything else scales."""
    r_mm = _n_mm_integral(gamma, m, spec).require_converged("n_minus_minus")
    r_mp = _n_mp_integral(gamma, m, spec).require_converged("n_minus_plus")
    pref_mm = 1.0 / (32.0 * math.pi**2 * gamma)
    pref_mp = 1.0 / (128.0 * math.pi**2 * gamma)
    pref_t = 1.0 / (64.0 * math.pi**2 * gamma)
    n_mm_b = pref_mm * r_mm.value
    n_mp_b = -pref_mp * 2.0 * r_mp.value
    err = pref_mm * r_mm.error_estimate + 2.0 * pref_mp * 2.0 * r_mp.error_estimate
    sectors = []
    for i in (1, 2, 3):
        r = _sector_integral(i, gamma, m, spec).require_converged(f"sector {i}")
        sectors.append(pref_t * r.value)
        err += 2.0 * pref_t * r.error_estimate
    return n_mm_b, n_mp_b, tuple(sectors), err


def n_total(gamma: float, p: ModelParams, spec: QuadratureSpec) -> ReflectionBreakdown:
    """Full reflection factor with its component breakdown.

    In ``sqrt_momentum`` mode every lambda^2 prefactor becomes lambda_0^2 *
    gamma; since all components are exactly proportional to lambda^2, this is
    applied as a common scale on the constant-coupling unit-lambda values.
    """
    gamma = _check_gamma(gamma)
    scale = p.coupling_sq(gamma)
    if scale == 0.0:
        return ReflectionBreakdown.assemble(0.0, 0.0, (0.0, 0.0, 0.0), 0.0)
    n_mm_b, n_mp_b, sectors_b, err = _base_components(gamma, p.m, spec)
    return ReflectionBreakdown.assemble(
        scale * n_mm_b,
        scale * n_mp_b,
        tuple(scale * s for s in sectors_b),
        abs(scale) * err,
    )


def n_zero_limit(p: ModelParams, spec: QuadratureSpec) -> float:
    """Zero-momentum limit of the reflection factor, sqrt-coupling mode.

    Richardson extrapolation over gamma/m in {1e-2, 1e-3, 1e-4}: the factor
    approaches its limit linearly in gamma, so two elimination stages with
    scale ratio 10 remove the linear and quadratic corrections.
    """
    if p.coupling_mode != CouplingMode.SQRT_MOMENTUM:
        raise DomainError("n_zero_limit requires sqrt_momentum coupling mode")
    if p.lam == 0.0:
        return 0.0
    f = [n_total(p.m * g, p, spec).total for g in (1e-2, 1e-3, 1e-4)]
    r1a = (10.0 * f[1] - f[0]) / 9.0
    r1b = (10.0 * f[2] - f[1]) / 9.0
    r2 = (100.0 * r1b - r1a) / 99.0
    if abs(r2 - r1b) > max(1e-4 * abs(r2), 100.0 * spec.abs_tol):
        raise ExtrapolationUnstable(
            f"zero-momentum extrapolation unstable: {r1a:.9g}, {r1b:.9g}, {r2:.9g}"
        )
    return r2
