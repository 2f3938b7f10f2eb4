"""
Module: integrators
-------------------
Fixed-step classical Runge-Kutta integration of the steering plant.

The torque is held constant over the step (zero-order hold), so the stages only re-evaluate
the state-dependent friction and the time-dependent disturbances.
"""

import logging
import math
from typing import Optional

from core.config import PlantParams
from core.errors import InstabilityError
from utils.sbw_plant import SimState, accel

# Configure logging
logger = logging.getLogger(__name__)


def rk4_step(s: SimState, tau_held: float, dt: float, p: PlantParams, t_next: Optional[float] = None) -> SimState:
    """
    Advance the plant one classical RK4 step under a held torque.

    Args:
        s: State at the start of the step
        tau_held: Applied torque, constant across the step
        dt: Step size (s)
        p: Plant parameters
        t_next: Timestamp of the result; defaults to s.t + dt

    Returns:
        The state one step later

    Raises:
        InstabilityError: If the new state is not finite
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    t, th, w = s
    half = dt / 2

    k1_th = w
    k1_w = accel(s, tau_held, p)
    k2_th = w + half * k1_w
    k2_w = accel(SimState(t + half, th + half * k1_th, k2_th), tau_held, p)
    k3_th = w + half * k2_w
    k3_w = accel(SimState(t + half, th + half * k2_th, k3_th), tau_held, p)
    k4_th = w + dt * k3_w
    k4_w = accel(SimState(t + dt, th + dt * k3_th, k4_th), tau_held, p)

    th_new = th + dt / 6 * (k1_th + 2 * k2_th + 2 * k3_th + k4_th)
    w_new = w + dt / 6 * (k1_w + 2 * k2_w + 2 * k3_w + k4_w)
    t_new = t + dt if t_next is None else t_next
    if not (math.isfinite(th_new) and math.isfinite(w_new)):
        raise InstabilityError(f"non-finite plant state at t={t_new:.6g}", t=t_new)
    return SimState(t_new, th_new, w_new)
