"""
Module: asmc
------------
Adaptive sliding mode baseline with a gain that adapts to a constant uncertainty bound.

The sliding surface is the same filtered error r = e_dot + lam e used by the adaptive
controller; signum is replaced by the boundary-layer saturation.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from core.config import AsmcParams, NominalModel, PlantParams
from core.controller import Controller, StepContext
from core.errors import ConfigError
from utils.control_laws import AsmcGains, asmc_control, asmc_gain_rate, clamp_gain, filtered_error

# Configure logging
logger = logging.getLogger(__name__)


class AsmcController(Controller):
    """Adaptive sliding mode control baseline."""

    params_model = AsmcParams

    def __init__(self):
        self._params = AsmcParams()

    @property
    def id(self) -> str:
        return self.get_controller_id()

    @classmethod
    def get_controller_id(cls) -> str:
        return "asmc"

    @property
    def name(self) -> str:
        return "Adaptive sliding mode"

    @property
    def description(self) -> str:
        return "tau = -K sat(r) with K growing while |r| exceeds the boundary layer."

    @property
    def gain_labels(self) -> List[str]:
        return ["K"]

    def configure(self, params: BaseModel, plant: PlantParams, nominal: NominalModel) -> None:
        if not isinstance(params, AsmcParams):
            raise ConfigError(f"expected asmc parameters, got {type(params).__name__}", field="controller")
        self._params = params

    def initial_gains(self) -> AsmcGains:
        return AsmcGains(self._params.k_init)

    def torque(self, ctx: StepContext, gains: AsmcGains) -> float:
        r = filtered_error(ctx.e, ctx.e_dot, self._params.lam)
        return asmc_control(r, gains.K, self._params.epsilon)

    def advance_gains(self, ctx: StepContext, gains: AsmcGains, dt: float) -> Tuple[AsmcGains, bool]:
        p = self._params
        r = filtered_error(ctx.e, ctx.e_dot, p.lam)
        rate = asmc_gain_rate(r, gains.K, p.k_bar, p.mu, p.epsilon)
        K, hit = clamp_gain(gains.K + dt * rate, 0.0)
        return AsmcGains(K), hit

    def gain_values(self, gains: AsmcGains) -> Sequence[float]:
        return (gains.K,)

    def check_invariants(self, trace) -> List[str]:
        col = trace.column("gain_0")
        bad = np.flatnonzero(col < 0)
        if bad.size:
            return [f"K < 0 at {bad.size} samples"]
        return []
