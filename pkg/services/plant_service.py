"""
Module: plant_service
---------------------
Provides an implementation of the PlantService interface using the sbw_plant module.

This module wraps the sbw_plant and integrators functions in a class that implements
the PlantService interface, making it injectable into controller plugins.
"""

import logging
from typing import Optional, Tuple

from core.config import NominalModel, PlantParams
from core.services import PlantService
import utils.integrators as integrators
import utils.sbw_plant as sbw_plant

# Configure logging
logger = logging.getLogger(__name__)


class PlantServiceImpl(PlantService):
    """Implementation of the PlantService interface using sbw_plant."""

    def step(
        self,
        state: sbw_plant.SimState,
        tau_held: float,
        dt: float,
        params: PlantParams,
        t_next: Optional[float] = None,
    ) -> sbw_plant.SimState:
        """
        Advance the plant one RK4 step under a held torque.

        Args:
            state: Current state
            tau_held: Applied torque over the step
            dt: Step size (s)
            params: Plant parameters
            t_next: Timestamp of the new state

        Returns:
            The new state
        """
        return integrators.rk4_step(state, tau_held, dt, params, t_next=t_next)

    def decompose(
        self, params: PlantParams, nominal: NominalModel, state: sbw_plant.SimState
    ) -> Tuple[float, float, float]:
        return sbw_plant.decompose(params, nominal, state)

