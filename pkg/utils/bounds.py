"""
Module: bounds
--------------
Delay margins and ultimate-bound diagnostics.

* Razumikhin maximum allowable input delay of ARTDC, and the same bound for the
  constant-bound (AROLC) design it is compared against.
* The gain condition under which the ARTDC margin is the larger one.
* The ultimate bound of the adaptive controller and the Lyapunov-function monitor
  evaluated on a simulated trace.

Matrix norms are spectral norms.
"""

import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Protocol, Tuple

import numpy as np

from core.config import PlantParams, Reference
from core.errors import AnalysisError, BoundEstimateError, NotPositiveDefiniteError
from utils.lyapunov import LyapunovPair, check_spd
from utils.sbw_plant import property_bounds
from utils.signals import reference_peaks

# Configure logging
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DelayBoundInputs:
    pair: LyapunovPair
    r_z: float = 1.01
    eta: float = 0.7

    def __post_init__(self) -> None:
        if not self.r_z > 1:
            raise AnalysisError(f"Razumikhin constant must exceed 1, got {self.r_z}")
        if not self.eta > 0:
            raise AnalysisError(f"eta must be positive, got {self.eta}")


def error_dynamics_matrices(K: float, omega: float) -> Tuple[np.ndarray, np.ndarray]:
    """(A1, B1) of the delayed ARTDC error dynamics."""
    A1 = np.array([[0.0, 1.0], [-K, -omega]])
    B1 = np.array([[0.0, 0.0], [0.0, -omega]])
    return A1, B1


def arolc_matrices(K1: float, K2: float) -> Tuple[np.ndarray, np.ndarray]:
    """(A1, B1) of the constant-bound design whose feedback acts entirely through the delay."""
    A1 = np.array([[0.0, 1.0], [0.0, 0.0]])
    B1 = np.array([[0.0, 0.0], [-K1, -K2]])
    return A1, B1


def _inverse(P: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.inv(P)
    except np.linalg.LinAlgError as e:
        raise NotPositiveDefiniteError(f"P is singular: {P.tolist()}") from e


def _inner(P_inv: np.ndarray, A1: np.ndarray, B1: np.ndarray) -> np.ndarray:
    inner = A1 @ P_inv @ A1.T + B1 @ P_inv @ B1.T + P_inv
    return B1 @ inner @ B1.T


def g_matrix(P: np.ndarray, A1: np.ndarray, B1: np.ndarray, r_z: float, eta: float) -> np.ndarray:
    """G = eta P B1 (A1 P^-1 A1^T + B1 P^-1 B1^T + P^-1) B1^T P + 2 (r / eta) P."""
    P_inv = _inverse(P)
    return eta * P @ _inner(P_inv, A1, B1) @ P + 2.0 * (r_z / eta) * P


def _bound(Q: np.ndarray, G: np.ndarray) -> float:
    lam_min = float(np.linalg.eigvalsh(Q)[0])
    norm = float(np.linalg.norm(G, ord=2))
    if norm <= 0:
        raise AnalysisError("G vanished; the delay bound is undefined")
    return lam_min / norm


def delay_bound(inputs: DelayBoundInputs) -> float:
    """Maximum allowable input delay lambda_min(Q) / ||G|| for ARTDC."""
    pair = inputs.pair
    check_spd(pair.Q, "Q")
    A1, B1 = error_dynamics_matrices(pair.K, pair.omega)
    return _bound(pair.Q, g_matrix(pair.P, A1, B1, inputs.r_z, inputs.eta))


def arolc_bound(inputs: DelayBoundInputs, K1: float, K2: float) -> float:
    """Maximum allowable input delay lambda_min(Q) / ||G1|| of the constant-bound design."""
    pair = inputs.pair
    check_spd(pair.Q, "Q")
    A1, B1 = arolc_matrices(K1, K2)
    return _bound(pair.Q, g_matrix(pair.P, A1, B1, inputs.r_z, inputs.eta))


@dataclass(frozen=True)
class GainConditionResult:
    """Both gain conditions evaluated on the entries of P^-1."""

    condition_1: bool
    condition_2: bool
    P_bar_1: float
    P_bar_2: float
    P_bar_3: float
    lhs_1: float
    rhs_1: float
    lhs_2: float
    rhs_2: float

    @property
    def passed(self) -> bool:
        return self.condition_1 and self.condition_2


def gain_condition_check(P: np.ndarray, K: float, omega: float) -> GainConditionResult:
    """
    Evaluate P3_bar > |P2_bar K / Omega| and P1_bar + P3_bar > |P2_bar| on P^-1.

    Raises:
        NotPositiveDefiniteError: If P is singular
        AnalysisError: If Omega is zero
    """
    if omega == 0:
        raise AnalysisError("Omega must be non-zero")
    P_inv = _inverse(np.asarray(P, dtype=float))
    p1, p2, p3 = float(P_inv[0, 0]), float(P_inv[0, 1]), float(P_inv[1, 1])
    rhs_1 = abs(p2 * K / omega)
    lhs_2 = p1 + p3
    rhs_2 = abs(p2)
    return GainConditionResult(
        condition_1=p3 > rhs_1,
        condition_2=lhs_2 > rhs_2,
        P_bar_1=p1,
        P_bar_2=p2,
        P_bar_3=p3,
        lhs_1=p3,
        rhs_1=rhs_1,
        lhs_2=lhs_2,
        rhs_2=rhs_2,
    )


def gain_condition_scalars(P: np.ndarray, K: float, omega: float) -> Tuple[float, float]:
    """
    Scalars J and J1 multiplying P e2 e2^T P inside G and G1.

    Uses the correspondence K1 = K, K2 = 2 Omega. Both are computed from the dense
    matrices; J1 > J under the gain condition is what makes the ARTDC margin larger.
    """
    P_inv = _inverse(np.asarray(P, dtype=float))
    A1, B1 = error_dynamics_matrices(K, omega)
    A1_bar, B1_bar = arolc_matrices(K, 2.0 * omega)
    return float(_inner(P_inv, A1, B1)[1, 1]), float(_inner(P_inv, A1_bar, B1_bar)[1, 1])


@dataclass
class DelayBoundReport:
    """Everything the ``delay-bound`` command prints."""

    K: float
    omega: float
    r_z: float
    eta: float
    Q: np.ndarray
    P: np.ndarray
    P_inv: np.ndarray
    G: np.ndarray
    G1: np.ndarray
    h_bar_in: float
    h_hat_in: float
    J: float
    J1: float
    gain_condition: GainConditionResult

    def to_dict(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "inputs": {"K": self.K, "omega": self.omega, "Q": self.Q.tolist(), "r": self.r_z, "eta": self.eta},
            "P": self.P.tolist(),
            "P_inv": self.P_inv.tolist(),
            "G": self.G.tolist(),
            "G1": self.G1.tolist(),
            "h_bar_in": self.h_bar_in,
            "h_hat_in": self.h_hat_in,
            "artdc_margin_larger": self.h_bar_in > self.h_hat_in,
            "J": self.J,
            "J1": self.J1,
            "gain_condition": asdict(self.gain_condition) | {"passed": self.gain_condition.passed},
        }
        return out


def delay_bound_report(inputs: DelayBoundInputs) -> DelayBoundReport:
    """Compute both margins, G, G1 and the gain condition for one design."""
    pair = inputs.pair
    K1, K2 = pair.K, 2.0 * pair.omega
    A1, B1 = error_dynamics_matrices(pair.K, pair.omega)
    A1_bar, B1_bar = arolc_matrices(K1, K2)
    G = g_matrix(pair.P, A1, B1, inputs.r_z, inputs.eta)
    G1 = g_matrix(pair.P, A1_bar, B1_bar, inputs.r_z, inputs.eta)
    J, J1 = gain_condition_scalars(pair.P, pair.K, pair.omega)
    report = DelayBoundReport(
        K=pair.K,
        omega=pair.omega,
        r_z=inputs.r_z,
        eta=inputs.eta,
        Q=pair.Q,
        P=pair.P,
        P_inv=_inverse(pair.P),
        G=G,
        G1=G1,
        h_bar_in=delay_bound(inputs),
        h_hat_in=arolc_bound(inputs, K1, K2),
        J=J,
        J1=J1,
        gain_condition=gain_condition_check(pair.P, pair.K, pair.omega),
    )
    if report.gain_condition.passed and not report.h_bar_in > report.h_hat_in:
        logger.warning(
            f"Gain condition holds but h_bar_in={report.h_bar_in:.6g} <= h_hat_in={report.h_hat_in:.6g} "
            f"for K={pair.K}, Omega={pair.omega}, Q={pair.Q.tolist()}"
        )
    return report


# ------------------------------
# Ultimate bound of the adaptive controller
# ------------------------------

@dataclass(frozen=True)
class BoundEstimates:
    """Estimates entering the ultimate bound; kappa must lie in (0, varrho)."""

    k0_star: float
    k1_star: float
    varsigma: float
    kappa: float
    alpha_0: float
    alpha_1: float
    gamma: float
    lam: float
    J: float


@dataclass(frozen=True)
class UltimateBound:
    omega: float
    omega_doubled: float
    radius: float
    varrho: float
    metadata: Dict[str, Any] = field(default_factory=dict)


def decay_rate(est: BoundEstimates) -> float:
    """varrho = min(gamma, lam, alpha_i / 2) / max(J / 2, 1 / 2)."""
    return min(est.gamma, est.lam, est.alpha_0 / 2, est.alpha_1 / 2) / max(est.J / 2, 0.5)


def _check_estimates(est: BoundEstimates) -> float:
    varrho = decay_rate(est)
    if not 0 < est.kappa < varrho:
        raise BoundEstimateError(f"kappa={est.kappa:.6g} must lie in (0, varrho={varrho:.6g})")
    if est.varsigma < 0:
        raise BoundEstimateError(f"varsigma must be non-negative, got {est.varsigma}")
    return varrho


def _gain_term(est: BoundEstimates) -> float:
    return est.alpha_0 * est.k0_star**2 + est.alpha_1 * est.k1_star**2


def ultimate_set_radius(est: BoundEstimates) -> float:
    """Level (2 varsigma + sum alpha_i K*_i^2) / (2 (varrho - kappa)) that V eventually stays below."""
    varrho = _check_estimates(est)
    return (2 * est.varsigma + _gain_term(est)) / (2 * (varrho - est.kappa))


def ultimate_bound(est: BoundEstimates) -> UltimateBound:
    """
    Ultimate bound on the tracking error.

    The primary value uses varsigma; the form with 2 varsigma is carried alongside.

    Raises:
        BoundEstimateError: If kappa is not in (0, varrho)
    """
    varrho = _check_estimates(est)
    gap = varrho - est.kappa
    primary = math.sqrt((est.varsigma + _gain_term(est)) / gap)
    doubled = math.sqrt((2 * est.varsigma + _gain_term(est)) / gap)
    return UltimateBound(
        omega=primary,
        omega_doubled=doubled,
        radius=ultimate_set_radius(est),
        varrho=varrho,
        metadata={"primary": "varsigma", "alternate": "2 varsigma"},
    )


def uncertainty_bound_estimates(p: PlantParams, ref: Reference, lam: float) -> Tuple[float, float]:
    """
    Structural estimates (K*_0, K*_1) of the lumped uncertainty bound.

    K*_0 = B max|th_d'| + f1 + i_rc f2 + f3 + J max|th_d''| and K*_1 = B + J lam.
    """
    f1, f2, f3 = property_bounds(p)
    v_peak, a_peak = reference_peaks(ref)
    return p.B * v_peak + f1 + p.i_rc * f2 + f3 + p.J * a_peak, p.B + p.J * lam


class _Columns(Protocol):
    def column(self, name: str) -> np.ndarray: ...


@dataclass(frozen=True)
class MonitorResult:
    V: np.ndarray
    ceiling: float
    radius: float
    held: bool
    max_excess: float


def lyapunov_values(trace: _Columns, est: BoundEstimates) -> np.ndarray:
    """V = J r^2 / 2 + e^2 / 2 + sum (K_i - K*_i)^2 / 2 along a proposed-controller trace."""
    e = trace.column("e")
    r = trace.column("e_dot") + est.lam * e
    k0 = trace.column("gain_0")
    k1 = trace.column("gain_1")
    return 0.5 * est.J * r**2 + 0.5 * e**2 + 0.5 * (k0 - est.k0_star) ** 2 + 0.5 * (k1 - est.k1_star) ** 2


def lyapunov_monitor(trace: _Columns, est: BoundEstimates, rtol: float = 1e-9) -> MonitorResult:
    """
    Evaluate V along a trace and check V(t) <= max(V(0), radius) throughout.

    Args:
        trace: Trace of the proposed controller (columns e, e_dot, gain_0, gain_1)
        est: Bound estimates
        rtol: Relative slack on the comparison

    Returns:
        MonitorResult with the V series and the verdict
    """
    V = lyapunov_values(trace, est)
    if V.size == 0:
        raise AnalysisError("trace is empty")
    radius = ultimate_set_radius(est)
    ceiling = max(float(V[0]), radius)
    excess = float(np.max(V) - ceiling)
    held = bool(excess <= rtol * max(1.0, ceiling))
    if not held:
        logger.warning(f"Lyapunov function exceeded max(V(0), B)={ceiling:.6g} by {excess:.6g}")
    return MonitorResult(V=V, ceiling=ceiling, radius=radius, held=held, max_excess=excess)


def estimates_from_trace(
    trace: _Columns, lam: float, alpha_0: float, alpha_1: float, gamma: float, J: float, kappa: Optional[float] = None
) -> BoundEstimates:
    """
    Bound estimates taken from an observed run.

    K*_i are the gain plateaus (largest observed gains), varsigma bounds
    sum K_i ||xi||^i |r| over the run, and kappa defaults to varrho / 2.
    """
    e = trace.column("e")
    e_dot = trace.column("e_dot")
    k0 = trace.column("gain_0")
    k1 = trace.column("gain_1")
    r = np.abs(e_dot + lam * e)
    xi = np.hypot(e, e_dot)
    varsigma = float(np.max((k0 + k1 * xi) * r))
    est = BoundEstimates(
        k0_star=float(np.max(k0)),
        k1_star=float(np.max(k1)),
        varsigma=varsigma,
        kappa=1.0,
        alpha_0=alpha_0,
        alpha_1=alpha_1,
        gamma=gamma,
        lam=lam,
        J=J,
    )
    varrho = decay_rate(est)
    return BoundEstimates(**(asdict(est) | {"kappa": varrho / 2 if kappa is None else kappa}))
