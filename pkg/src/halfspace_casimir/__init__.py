"""Reflection factor and Casimir energy of scalar-field half spaces.

Numerical engine for the one-loop reflection factor of a half space
filled with a quantum scalar field, and for the resulting vacuum
(Casimir) energy between two such half spaces: adaptive quadrature with
endpoint-singularity transforms, the renormalized reflection-factor
breakdown, the energy integral with instability (complex energy)
detection, closed-form asymptotic oracles, and a CLI.
"""

from .asymptotics import (
    AsymptoticRegime,
    Component,
    FitModel,
    FitResult,
    Regime,
    asymptotic_value,
    fit_asymptotic_constant,
)
from .energy import (
    CurvePoint,
    EnergyCurve,
    EnergyResult,
    casimir_energy,
    dirichlet_reference,
    energy_integrand,
    eta_curve,
    large_separation_limit,
    li4,
)
from .errors import (
    DomainError,
    ExtrapolationUnstable,
    FitUnstable,
    NonConverged,
    NonFiniteEvaluation,
    NumericsError,
)
from .quadrature import (
    EndpointTransform,
    IntegralResult,
    QuadratureSpec,
    integrate_1d,
    integrate_2d,
    integrate_semi_infinite,
)
from .reflection import (
    CouplingMode,
    ModelParams,
    ReflectionBreakdown,
    n_minus_minus,
    n_minus_plus,
    n_nt,
    n_t_renormalized,
    n_total,
    n_zero_limit,
    sector_integrand,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # quadrature
    "QuadratureSpec", "IntegralResult", "EndpointTransform",
    "integrate_1d", "integrate_2d", "integrate_semi_infinite",
    # reflection
    "ModelParams", "CouplingMode", "ReflectionBreakdown",
    "n_minus_minus", "n_minus_plus", "n_nt", "n_t_renormalized",
    "n_total", "n_zero_limit", "sector_integrand",
    # energy
    "EnergyResult", "EnergyCurve", "CurvePoint", "casimir_energy",
    "energy_integrand", "li4", "dirichlet_reference",
    "large_separation_limit", "eta_curve",
    # asymptotics
    "AsymptoticRegime", "Regime", "Component", "asymptotic_value",
    "FitModel", "FitResult", "fit_asymptotic_constant",
    # errors
    "NumericsError", "NonConverged", "NonFiniteEvaluation",
    "DomainError", "ExtrapolationUnstable", "FitUnstable",
]
