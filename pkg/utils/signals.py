"""
Module: signals
---------------
Reference trajectory and input-delay profile evaluation.
"""

import math
from typing import Tuple

from core.config import DelayProfile, Reference


def reference_eval(r: Reference, t: float) -> Tuple[float, float, float]:
    """
    Desired angle and its first two derivatives at time t.

    Returns:
        (theta_d, theta_d_dot, theta_d_ddot)
    """
    phase = r.omega * t + r.phase
    s, c = math.sin(phase), math.cos(phase)
    return r.amplitude * s, r.amplitude * r.omega * c, -r.amplitude * r.omega**2 * s


def reference_peaks(r: Reference) -> Tuple[float, float]:
    """Peak magnitudes of the desired velocity and acceleration."""
    a = abs(r.amplitude)
    w = abs(r.omega)
    return a * w, a * w * w


def delay_at(d: DelayProfile, t: float) -> float:
    """Input delay h(t) = d_A |sin(d_w t)|, always within [0, d_A]."""
    if d.amplitude == 0.0:
        return 0.0
    return d.amplitude * abs(math.sin(d.omega * t))


def max_delay(d: DelayProfile) -> float:
    """Largest delay the profile can produce."""
    return d.amplitude if d.omega != 0.0 else 0.0
