"""
Module: errors
--------------
Exception hierarchy for SBW-Sim.

Configuration and analysis failures derive from ValueError, runtime failures of a
scenario run derive from RuntimeError. The command handler maps them to exit codes.
"""

from typing import Any, Optional, Sequence


class SbwSimError(Exception):
    """Base class for all SBW-Sim errors."""


class ConfigError(SbwSimError, ValueError):
    """A scenario configuration failed validation."""

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ModelAssumptionError(ConfigError):
    """The nominal model violates |g_bar| < 1."""


class CausalityError(SbwSimError, RuntimeError):
    """A delayed torque was requested from the future or from evicted history."""


class InstabilityError(SbwSimError, RuntimeError):
    """State or adaptive gains of a run became non-finite."""

    def __init__(self, message: str, t: float = float("nan"), step: int = -1, trace: Optional[Any] = None):
        self.t = t
        self.step = step
        # Samples recorded before the failure, when a run was in progress
        self.trace = trace
        super().__init__(message)


class AnalysisError(SbwSimError, ValueError):
    """Base class for failures of the stability/delay analysis."""


class NotHurwitzError(AnalysisError):
    """The state matrix has an eigenvalue with non-negative real part."""

    def __init__(self, message: str, eigenvalues: Sequence[complex] = ()):
        self.eigenvalues = list(eigenvalues)
        super().__init__(message)


class NotPositiveDefiniteError(AnalysisError):
    """A matrix expected to be symmetric positive-definite is not (or is singular)."""


class LyapunovConditionError(AnalysisError):
    """The Lyapunov solution violates P1, P2, P3 > 0 or P3^-1 P2 = Omega."""


class BoundEstimateError(AnalysisError):
    """Ultimate-bound estimates violate 0 < kappa < varrho."""


class EmptySeriesError(SbwSimError, ValueError):
    """A metric was requested over an empty series."""
