"""
Module: proposed
----------------
Adaptive tracking controller whose switching gain grows with the error-state norm.

tau = -gamma r - e - (K0 + K1 ||xi||) sat(r), with leaky-integrator laws for K0 and K1,
so no a priori bound on the state-dependent uncertainty is needed.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from core.config import NominalModel, PlantParams, ProposedParams
from core.controller import Controller, StepContext
from core.errors import ConfigError
from utils.control_laws import ProposedGains, clamp_gain, filtered_error, proposed_control, proposed_gain_rates

# Configure logging
logger = logging.getLogger(__name__)


class ProposedController(Controller):
    """Adaptive controller with state-dependent switching gain."""

    params_model = ProposedParams

    def __init__(self):
        self._params = ProposedParams()

    @property
    def id(self) -> str:
        return self.get_controller_id()

    @classmethod
    def get_controller_id(cls) -> str:
        return "proposed"

    @property
    def name(self) -> str:
        return "Adaptive (state-dependent switching gain)"

    @property
    def description(self) -> str:
        return "Filtered-error feedback plus a switching term whose gain K0 + K1 ||xi|| adapts online."

    @property
    def gain_labels(self) -> List[str]:
        return ["K_hat_0", "K_hat_1"]

    @property
    def params(self) -> ProposedParams:
        return self._params

    def configure(self, params: BaseModel, plant: PlantParams, nominal: NominalModel) -> None:
        if not isinstance(params, ProposedParams):
            raise ConfigError(f"expected proposed parameters, got {type(params).__name__}", field="controller")
        self._params = params

    def initial_gains(self) -> ProposedGains:
        return ProposedGains(self._params.k0_init, self._params.k1_init)

    def torque(self, ctx: StepContext, gains: ProposedGains) -> float:
        return proposed_control(ctx.e, ctx.e_dot, ctx.xi_norm, gains, self._params)

    def advance_gains(self, ctx: StepContext, gains: ProposedGains, dt: float) -> Tuple[ProposedGains, bool]:
        r = filtered_error(ctx.e, ctx.e_dot, self._params.lam)
        d0, d1 = proposed_gain_rates(r, ctx.xi_norm, gains, self._params)
        k0, hit0 = clamp_gain(gains.K_hat_0 + dt * d0, 0.0)
        k1, hit1 = clamp_gain(gains.K_hat_1 + dt * d1, 0.0)
        return ProposedGains(k0, k1), hit0 or hit1

    def gain_values(self, gains: ProposedGains) -> Sequence[float]:
        return gains.K_hat_0, gains.K_hat_1

    def check_invariants(self, trace) -> List[str]:
        violations = []
        for i, label in enumerate(self.gain_labels):
            col = trace.column(f"gain_{i}")
            bad = np.flatnonzero(col < 0)
            if bad.size:
                violations.append(f"{label} < 0 at {bad.size} samples (first t={trace.column('t')[bad[0]]:.6g})")
        return violations
