"""
Module: delay_line
------------------
Time-stamped torque history for input-delay simulation.

Samples are pushed once per step; the k-th sample carries the timestamp k * dt.
Lookups at t - h(t) interpolate linearly between the bracketing samples.
"""

import logging
import math

import numpy as np

from core.errors import CausalityError

# Configure logging
logger = logging.getLogger(__name__)

# Index positions this close to an integer read the stored sample exactly
_SNAP = 1e-7


class DelayLine:
    """
    Circular buffer of commanded torques on a uniform time grid.

    Usage:
        line = DelayLine(dt=1e-4, max_delay=0.02)
        line.push(tau_k)
        tau_applied = line.sample(t_k - h)
    """

    def __init__(self, dt: float, max_delay: float = 0.0, tau_pre: float = 0.0):
        """
        Args:
            dt: Spacing of the stored samples (s)
            max_delay: Longest delay that will be queried (s)
            tau_pre: Torque returned for queries before t = 0
        """
        if dt <= 0:
            raise ValueError("dt must be positive")
        if max_delay < 0:
            raise ValueError("max_delay must be non-negative")
        self.dt = dt
        self.tau_pre = tau_pre
        self.capacity = int(math.ceil(max_delay / dt)) + 2
        self.buffer = np.zeros(self.capacity, dtype=np.float64)
        self.count = 0

    @property
    def newest_time(self) -> float:
        """Timestamp of the last pushed sample, or -inf when empty."""
        return (self.count - 1) * self.dt if self.count else -math.inf

    def push(self, tau: float) -> None:
        """Append the torque commanded at the next grid time."""
        self.buffer[self.count % self.capacity] = tau
        self.count += 1

    def _at(self, k: int) -> float:
        oldest = max(0, self.count - self.capacity)
        if k < oldest:
            raise CausalityError(
                f"sample {k} (t={k * self.dt:.6g}) was evicted; history starts at t={oldest * self.dt:.6g}"
            )
        return float(self.buffer[k % self.capacity])

    def sample(self, t_query: float) -> float:
        """
        Torque at time t_query.

        Args:
            t_query: Lookup time (s), at most the newest timestamp

        Returns:
            The stored sample when t_query falls on the grid, the linear interpolation
            between the bracketing samples otherwise, and tau_pre for t_query < 0

        Raises:
            CausalityError: If t_query lies after the newest sample or before the retained history
        """
        if t_query < 0:
            return self.tau_pre
        newest = self.count - 1
        pos = t_query / self.dt
        k = int(round(pos))
        if abs(pos - k) <= _SNAP:
            if k > newest:
                raise CausalityError(f"query t={t_query:.9g} is after the newest sample t={self.newest_time:.9g}")
            return self._at(k)
        k0 = int(math.floor(pos))
        if k0 + 1 > newest:
            raise CausalityError(f"query t={t_query:.9g} is after the newest sample t={self.newest_time:.9g}")
        frac = pos - k0
        s0 = self._at(k0)
        s1 = self._at(k0 + 1)
        return s0 + frac * (s1 - s0)

    def reset(self) -> None:
        """Clear the history."""
        self.buffer[:] = 0.0
        self.count = 0
