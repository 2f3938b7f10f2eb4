"""
Module: artdc
-------------
Adaptive-robust time delay controller (ARTDC).

The nominal model supplies f_hat and g_hat; the switching variable s = P3 e_dot + P2 e comes
from the Lyapunov solution of the companion matrix built from K and Omega. Switching gains
gamma_0..2, beta and rho adapt with floor-bounded laws. The ``constant_bound`` variant keeps
gamma_1 = gamma_2 = beta = rho = 0 and adapts gamma_0 only.
"""

import logging
from dataclasses import replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from core.config import ArtdcParams, NominalModel, PlantParams
from core.controller import Controller, StepContext
from core.errors import ConfigError, ModelAssumptionError
from core.services import PlantService
from utils.control_laws import (
    ArtdcGains,
    artdc_control,
    artdc_gain_rates,
    clamp_gain,
    classify_artdc_case,
    switching_variable,
)
from utils.lyapunov import LyapunovPair, lyapunov_pair

# Configure logging
logger = logging.getLogger(__name__)

# Slack on the empirical upper box bounds of beta and rho
_BOX_TOL = 1e-9


class ArtdcController(Controller):
    """Adaptive-robust time delay controller."""

    params_model = ArtdcParams

    def __init__(self, plant_service: PlantService):
        """
        Initialize the ArtdcController.

        Args:
            plant_service: Service evaluating the nominal model split
        """
        self._plant_service = plant_service
        self._params = ArtdcParams()
        self._plant = PlantParams()
        self._nominal = NominalModel.default_for(self._plant)
        self._pair: Optional[LyapunovPair] = None

    @property
    def id(self) -> str:
        return self.get_controller_id()

    @classmethod
    def get_controller_id(cls) -> str:
        return "artdc"

    @property
    def name(self) -> str:
        return "Adaptive-robust time delay control"

    @property
    def description(self) -> str:
        return "Nominal-model feedback with floor-bounded adaptive switching gains, tolerant to input delay."

    @property
    def gain_labels(self) -> List[str]:
        return ["gamma_hat_0", "gamma_hat_1", "gamma_hat_2", "beta", "rho"]

    @property
    def pair(self) -> LyapunovPair:
        if self._pair is None:
            raise RuntimeError("controller is not configured")
        return self._pair

    def configure(self, params: BaseModel, plant: PlantParams, nominal: NominalModel) -> None:
        """
        Bind parameters, plant and nominal model; solve for P.

        Raises:
            ConfigError: If params are not ARTDC parameters
            ModelAssumptionError: If the nominal model violates |g_bar| < 1
            AnalysisError: If the Lyapunov design fails
        """
        if not isinstance(params, ArtdcParams):
            raise ConfigError(f"expected artdc parameters, got {type(params).__name__}", field="controller")
        g_bar = nominal.J_hat / plant.J - 1.0
        if abs(g_bar) >= 1.0:
            raise ModelAssumptionError(f"|g_bar| = {abs(g_bar):.6g} >= 1", field="nominal.J_hat")
        self._params = params
        self._plant = plant
        self._nominal = nominal
        self._pair = lyapunov_pair(params.K, params.omega, params.Q)
        logger.debug(f"ARTDC design P2={self._pair.P2:.6g}, P3={self._pair.P3:.6g}, model g_bar={g_bar:.6g}")

    def initial_gains(self) -> ArtdcGains:
        p = self._params
        g0, g1, g2 = p.gamma_init
        if p.variant == "constant_bound":
            return ArtdcGains(g0, 0.0, 0.0, 0.0, 0.0)
        return ArtdcGains(g0, g1, g2, p.beta_init, p.rho_init)

    def _s(self, ctx: StepContext) -> float:
        return switching_variable(ctx.e, ctx.e_dot, self.pair.P2, self.pair.P3)

    def torque(self, ctx: StepContext, gains: ArtdcGains) -> float:
        f_hat, g_hat, _ = self._plant_service.decompose(self._plant, self._nominal, ctx.state)
        return artdc_control(
            ctx.e, ctx.e_dot, ctx.theta_d_ddot, gains, self._params, f_hat, g_hat, self.pair.P2, self.pair.P3
        )

    def advance_gains(self, ctx: StepContext, gains: ArtdcGains, dt: float) -> Tuple[ArtdcGains, bool]:
        p = self._params
        s = self._s(ctx)
        rates = artdc_gain_rates(s, gains.s_prev, ctx.xi_norm, gains, p)
        if p.variant == "constant_bound":
            g0, hit = clamp_gain(gains.gamma_hat_0 + dt * rates[0], p.gamma_floor[0])
            return replace(gains, gamma_hat_0=g0, s_prev=s), hit

        floors = (*p.gamma_floor, p.beta_floor, p.rho_floor)
        values = (gains.gamma_hat_0, gains.gamma_hat_1, gains.gamma_hat_2, gains.beta, gains.rho)
        updated = []
        any_hit = False
        for value, rate, floor in zip(values, rates, floors):
            new, hit = clamp_gain(value + dt * rate, floor)
            updated.append(new)
            any_hit = any_hit or hit
        return ArtdcGains(*updated, s_prev=s), any_hit

    def gain_values(self, gains: ArtdcGains) -> Sequence[float]:
        return gains.gamma_hat_0, gains.gamma_hat_1, gains.gamma_hat_2, gains.beta, gains.rho

    def diagnose(self, ctx: StepContext, gains: ArtdcGains) -> Optional[str]:
        return classify_artdc_case(self._s(ctx), gains.s_prev, gains, self._params)

    def check_invariants(self, trace) -> List[str]:
        p = self._params
        t = trace.column("t")
        violations = []

        def report(label: str, mask: np.ndarray, what: str) -> None:
            bad = np.flatnonzero(mask)
            if bad.size:
                violations.append(f"{label} {what} at {bad.size} samples (first t={t[bad[0]]:.6g})")

        adapted = 1 if p.variant == "constant_bound" else 3
        for i in range(adapted):
            report(self.gain_labels[i], trace.column(f"gain_{i}") < p.gamma_floor[i], f"< floor {p.gamma_floor[i]}")
        if p.variant == "full":
            beta = trace.column("gain_3")
            rho = trace.column("gain_4")
            report("beta", beta < p.beta_floor, f"< floor {p.beta_floor}")
            report("beta", beta > p.beta_init + _BOX_TOL, f"> initial {p.beta_init}")
            report("rho", rho < p.rho_floor, f"< floor {p.rho_floor}")
            report("rho", rho > p.rho_init + _BOX_TOL, f"> initial {p.rho_init}")
        return violations
