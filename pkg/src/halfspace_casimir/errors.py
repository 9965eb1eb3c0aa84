"""Exception types shared across the package."""


class NumericsError(Exception):
    """Base class for numerical failures."""


class NonConverged(NumericsError):
    """Subdivision budget exhausted before reaching the requested tolerance."""


class NonFiniteEvaluation(NumericsError):
    """An integrand returned NaN or infinity at an interior node."""


class DomainError(NumericsError):
    """Argument outside the mathematically valid domain."""


class ExtrapolationUnstable(NumericsError):
    """Successive extrapolation estimates disagree beyond tolerance."""


class FitUnstable(NumericsError):
    """Least-squares residuals exceed tolerance for the assumed model."""
