"""
Module: sbw_plant
-----------------
Steering column dynamics of the steer-by-wire actuator side.

J th'' + B th' + F(th') + i_rc F_rack(t) + tau_a(t) = tau

All functions are pure and operate on scalar floats; they are called once per RK4 stage
in the simulation loop, so they use ``math`` rather than numpy.
"""

import logging
import math
from typing import NamedTuple, Tuple

from core.config import NominalModel, PlantParams
from core.errors import ModelAssumptionError

# Configure logging
logger = logging.getLogger(__name__)


class SimState(NamedTuple):
    """Instantaneous plant sample."""

    t: float
    theta: float
    theta_dot: float

    def is_finite(self) -> bool:
        return math.isfinite(self.t) and math.isfinite(self.theta) and math.isfinite(self.theta_dot)


def friction(theta_dot: float, p: PlantParams) -> float:
    """Coulomb plus Stribeck friction, bounded by c_f + s_f."""
    x = theta_dot / p.v_s
    return p.c_f * math.tanh(theta_dot) + p.s_f * math.exp(-(x * x))


def disturbances(t: float, p: PlantParams) -> Tuple[float, float]:
    """
    Exogenous forcing at time t.

    Returns:
        (F_rack, tau_a): rack force (N) and self-aligning torque (N m)
    """
    return p.F_r * math.sin(p.omega_r * t), p.tau_A * math.sin(p.omega_a * t)


def accel(s: SimState, tau_applied: float, p: PlantParams) -> float:
    """Angular acceleration of the column under the applied (delayed) torque."""
    f_rack, tau_a = disturbances(s.t, p)
    resisting = p.B * s.theta_dot + friction(s.theta_dot, p) + p.i_rc * f_rack + tau_a
    return (tau_applied - resisting) / p.J


def decompose(p: PlantParams, n: NominalModel, s: SimState) -> Tuple[float, float, float]:
    """
    Split the dynamics into the nominal part known to the controller.

    Args:
        p: True plant parameters
        n: Nominal inertia and damping
        s: Current state

    Returns:
        (f_hat, g_hat, g_bar) with f_hat = -B_hat th' / J_hat, g_hat = 1 / J_hat
        and g_bar = J_hat / J - 1

    Raises:
        ModelAssumptionError: If |g_bar| >= 1
    """
    g_bar = n.J_hat / p.J - 1.0
    if abs(g_bar) >= 1.0:
        raise ModelAssumptionError(
            f"|g_bar| = {abs(g_bar):.6g} >= 1 violates the nominal model condition (need 0 < J_hat < 2 J = {2 * p.J:.6g})",
            field="nominal.J_hat",
        )
    return -(n.B_hat * s.theta_dot) / n.J_hat, 1.0 / n.J_hat, g_bar


def column_to_motor_torque(tau_c: float, i_mc: float) -> float:
    """Motor torque that produces column torque tau_c through the motor-to-column ratio."""
    if i_mc <= 0:
        raise ValueError("motor-to-column ratio must be positive")
    return tau_c / i_mc


def property_bounds(p: PlantParams) -> Tuple[float, float, float]:
    """Bounds (f1, f2, f3) on |F|, |F_rack| and |tau_a|."""
    return p.c_f + p.s_f, p.F_r, p.tau_A
