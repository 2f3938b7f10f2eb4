"""
Module: control_laws
--------------------
Pure step functions of the three tracking controllers and their gain adaptation laws.

Every function takes scalars and small gain records and returns scalars, so the simulation
loop owns all mutable state. Gain records are updated by forward Euler in the controller
plugins, followed by ``clamp_gain``.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from core.config import ArtdcParams, ProposedParams

# Finite ceiling applied to every adaptive gain
GAIN_CEILING = 1e9


@dataclass(frozen=True)
class ProposedGains:
    K_hat_0: float
    K_hat_1: float


@dataclass(frozen=True)
class AsmcGains:
    K: float


@dataclass(frozen=True)
class ArtdcGains:
    gamma_hat_0: float
    gamma_hat_1: float
    gamma_hat_2: float
    beta: float
    rho: float
    s_prev: Optional[float] = None

    @property
    def gammas(self) -> Tuple[float, float, float]:
        return self.gamma_hat_0, self.gamma_hat_1, self.gamma_hat_2


# ------------------------------
# Shared pieces
# ------------------------------

def sgn(x: float) -> float:
    """Signum with sgn(0) = 0."""
    if x > 0:
        return 1.0
    if x < 0:
        return -1.0
    return 0.0


def filtered_error(e: float, e_dot: float, lam: float) -> float:
    """r = e_dot + lam e."""
    return e_dot + lam * e


def sat(r: float, eps: float) -> float:
    """Boundary-layer signum: r/|r| outside the layer, r/eps inside it."""
    if abs(r) >= eps:
        return 1.0 if r > 0 else -1.0
    return r / eps


def clamp_gain(value: float, floor: float, ceiling: float = GAIN_CEILING) -> Tuple[float, bool]:
    """
    Clamp an adaptive gain into [floor, ceiling].

    Returns:
        (clamped value, True if the ceiling was hit)
    """
    if value > ceiling:
        return ceiling, True
    if value < floor:
        return floor, False
    return value, False


# ------------------------------
# Adaptive controller with state-dependent switching gain
# ------------------------------

def proposed_control(e: float, e_dot: float, xi_norm: float, g: ProposedGains, p: ProposedParams) -> float:
    """tau = -gamma r - e - (K0 + K1 ||xi||) sat(r)."""
    r = filtered_error(e, e_dot, p.lam)
    rho = g.K_hat_0 + g.K_hat_1 * xi_norm
    return -p.gamma * r - e - rho * sat(r, p.epsilon)


def proposed_gain_rates(r: float, xi_norm: float, g: ProposedGains, p: ProposedParams) -> Tuple[float, float]:
    """Leaky integrators dK0 = |r| - a0 K0, dK1 = |r| ||xi|| - a1 K1."""
    ar = abs(r)
    return ar - p.alpha_0 * g.K_hat_0, ar * xi_norm - p.alpha_1 * g.K_hat_1


# ------------------------------
# Adaptive sliding mode baseline
# ------------------------------

def asmc_control(r: float, K: float, eps: float) -> float:
    return -K * sat(r, eps)


def asmc_gain_rate(r: float, K: float, k_bar: float, mu: float, eps: float) -> float:
    """K_bar |r| sgn(|r| - eps) while K >= mu, otherwise mu."""
    if K < mu:
        return mu
    return k_bar * abs(r) * sgn(abs(r) - eps)


# ------------------------------
# Adaptive-robust time delay controller
# ------------------------------

def switching_variable(e: float, e_dot: float, P2: float, P3: float) -> float:
    """s = P3 e_dot + P2 e."""
    return P3 * e_dot + P2 * e


def artdc_zeta(xi_norm: float, g: ArtdcGains, p: ArtdcParams) -> float:
    """Switching gain zeta = (c + beta + rho) / (1 - |g_bar|)."""
    if p.variant == "constant_bound":
        c, robust = g.gamma_hat_0, 0.0
    else:
        c = g.gamma_hat_0 + g.gamma_hat_2 + g.gamma_hat_1 * xi_norm
        robust = g.beta + g.rho
    return (c + robust) / (1.0 - abs(p.g_bar))


def artdc_control(
    e: float,
    e_dot: float,
    theta_d_ddot: float,
    g: ArtdcGains,
    p: ArtdcParams,
    f_hat: float,
    g_hat: float,
    P2: float,
    P3: float,
) -> float:
    """
    ARTDC torque tau = g_hat^-1 (u_hat + du - f_hat).

    Args:
        e: Tracking error
        e_dot: Tracking error rate
        theta_d_ddot: Desired acceleration
        g: Current gains
        p: Controller parameters
        f_hat: Nominal drift
        g_hat: Nominal input gain
        P2: Off-diagonal entry of the Lyapunov matrix
        P3: Lower-right entry of the Lyapunov matrix

    Returns:
        Commanded torque before the input delay
    """
    s = switching_variable(e, e_dot, P2, P3)
    u_hat = theta_d_ddot - p.omega * e_dot
    zeta = artdc_zeta(math.hypot(e, e_dot), g, p)
    if abs(s) >= p.epsilon:
        du = -zeta * (1.0 if s > 0 else -1.0)
    else:
        du = -zeta * s / p.epsilon
    return (u_hat + du - f_hat) / g_hat


def sdot_sign(s: float, s_prev: Optional[float]) -> float:
    """Sign of s * s_dot from a backward difference; the first step counts as non-positive."""
    if s_prev is None:
        return -1.0
    return sgn(s * (s - s_prev))


def _increasing(sds: float, gain: float, floor: float) -> bool:
    # The increasing predicate takes every step where both predicates hold, so the
    # beta/rho floor clauses of the decreasing predicate never select a branch.
    return gain <= floor or sds > 0


def artdc_gain_rates(
    s: float, s_prev: Optional[float], xi_norm: float, g: ArtdcGains, p: ArtdcParams
) -> Tuple[float, float, float, float, float]:
    """
    Rates of (gamma_0, gamma_1, gamma_2, beta, rho).

    A gamma takes the increasing branch when it sits at or below its floor or when
    s * s_dot > 0, and the decreasing branch otherwise. beta and rho follow their own
    floor rules. The constant_bound variant adapts gamma_0 only.

    Args:
        s: Switching variable now
        s_prev: Switching variable one step earlier, None on the first step
        xi_norm: Euclidean norm of (e, e_dot)
        g: Current gains
        p: Controller parameters

    Returns:
        Tuple of the five gain rates
    """
    sds = sdot_sign(s, s_prev)
    abs_s = abs(s)
    floors = p.gamma_floor

    def direction(i: int) -> float:
        return 1.0 if _increasing(sds, g.gammas[i], floors[i]) else -1.0

    d0 = p.alpha_0 * abs_s * direction(0)
    if p.variant == "constant_bound":
        return d0, 0.0, 0.0, 0.0, 0.0

    d1 = p.alpha_1 * xi_norm * abs_s * direction(1)
    if direction(2) > 0:
        d2 = p.alpha_2 * xi_norm * abs_s
    else:
        d2 = -p.varsigma * p.alpha_2 * xi_norm * xi_norm * xi_norm
    d_beta = -1.0 / g.beta if g.beta > p.beta_floor else p.delta
    d_rho = -abs_s / g.rho if g.rho > p.rho_floor else p.delta * abs_s
    return d0, d1, d2, d_beta, d_rho


def classify_artdc_case(s: float, s_prev: Optional[float], g: ArtdcGains, p: ArtdcParams) -> str:
    """
    Stability case of the current step.

    Returns:
        "i" or "iii" when the gains are in their increasing regime, "ii" or "iv" otherwise;
        "iii" and "iv" are the cases inside the boundary layer |s| < epsilon
    """
    sds = sdot_sign(s, s_prev)
    adapted = 1 if p.variant == "constant_bound" else 3
    increasing = any(_increasing(sds, gi, fi) for gi, fi in zip(g.gammas[:adapted], p.gamma_floor))
    if abs(s) >= p.epsilon:
        return "i" if increasing else "ii"
    return "iii" if increasing else "iv"
