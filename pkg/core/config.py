"""
Module: config
--------------
Pydantic models for scenario files and the loader that turns them into validated objects.

A scenario file is JSON. It carries the plant, the nominal model used by ARTDC, one
controller (``simulate``) or a list of controller variants (``compare``/``calibrate``),
the reference trajectory, the input-delay profile, integration settings and initial
conditions. A ``delay_bound`` section feeds the ``delay-bound`` report.

Validation failures are re-raised as ConfigError naming the offending field.
"""

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Type, TypeVar, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from core.errors import ConfigError

# Configure logging
logger = logging.getLogger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


# ------------------------------
# Plant
# ------------------------------

class PlantParams(_Frozen):
    """Physical constants of the steering column dynamics J th'' + B th' + F + i_rc F_rack + tau_a = tau."""

    J: float = Field(0.14, gt=0, description="inertia (kg m^2)")
    B: float = Field(0.8, ge=0, description="viscous damping (N m s/rad)")
    i_rc: float = Field(8e-3, gt=0, description="rack-to-column transmission ratio")
    c_f: float = Field(0.5, ge=0, description="Coulomb friction amplitude (N m)")
    s_f: float = Field(1.0, ge=0, description="Stribeck amplitude (N m)")
    v_s: float = Field(0.1, gt=0, description="Stribeck velocity (rad/s)")
    F_r: float = Field(1000.0, ge=0, description="rack force amplitude (N)")
    omega_r: float = Field(0.03, description="rack force frequency (rad/s)")
    tau_A: float = Field(5.0, ge=0, description="self-aligning torque amplitude (N m)")
    omega_a: float = Field(0.05, description="self-aligning torque frequency (rad/s)")


class NominalModel(_Frozen):
    """Nominal inertia and damping known to the ARTDC law."""

    J_hat: float = Field(gt=0)
    B_hat: float = Field(ge=0)

    @classmethod
    def default_for(cls, plant: PlantParams) -> "NominalModel":
        """Nominal model with J_hat = 1.5 J and B_hat = B (g_bar = 0.5)."""
        return cls(J_hat=1.5 * plant.J, B_hat=plant.B)


class ActuatorComponents(_Frozen):
    """Component-level inertias, dampings and gear ratios of the steering actuator."""

    J_c: float = Field(gt=0)
    J_gear: float = Field(0.0, ge=0)
    J_m: float = Field(0.0, ge=0)
    M_rack: float = Field(0.0, ge=0)
    B_c: float = Field(0.0, ge=0)
    B_gear: float = Field(0.0, ge=0)
    B_m: float = Field(0.0, ge=0)
    B_rack: float = Field(0.0, ge=0)
    i_gc: float = Field(1.0, gt=0)
    i_rc: float = Field(8e-3, gt=0)
    i_mc: float = Field(1.0, gt=0, description="motor-to-column ratio")

    def column_params(self, base: PlantParams) -> PlantParams:
        """
        Reflect component inertias and dampings to the steering column.

        Args:
            base: Parameters supplying friction and disturbance coefficients

        Returns:
            PlantParams with the lumped J, B and the component i_rc
        """
        gc2 = self.i_gc * self.i_gc
        rc2 = self.i_rc * self.i_rc
        J = self.J_c + gc2 * self.J_gear + gc2 * self.J_m + rc2 * self.M_rack
        B = self.B_c + gc2 * self.B_gear + gc2 * self.B_m + rc2 * self.B_rack
        return base.model_copy(update={"J": J, "B": B, "i_rc": self.i_rc})


# ------------------------------
# Signals
# ------------------------------

class Reference(_Frozen):
    """Sinusoidal desired steering angle A sin(w t + phi)."""

    amplitude: float = 0.5
    omega: float = 0.5
    phase: float = 0.0


class DelayProfile(_Frozen):
    """Time-varying input delay h(t) = amplitude |sin(omega t)|."""

    amplitude: float = Field(0.0, ge=0, description="d_A (s)")
    omega: float = Field(0.0, description="d_w (rad/s)")
    bound: Optional[float] = Field(None, gt=0, description="known upper bound h_bar_in (s)")

    @model_validator(mode="after")
    def _within_bound(self) -> "DelayProfile":
        if self.bound is not None and self.amplitude > self.bound:
            raise ValueError(f"delay amplitude {self.amplitude} exceeds the known bound {self.bound}")
        return self


# ------------------------------
# Controllers
# ------------------------------

class _ControllerParams(_Frozen):
    label: Optional[str] = None

    @property
    def display_label(self) -> str:
        return self.label or self.type  # type: ignore[attr-defined]


class ProposedParams(_ControllerParams):
    """Adaptive controller with switching gain rho = K0 + K1 ||xi||."""

    type: Literal["proposed"] = "proposed"
    lam: float = Field(100.0, gt=0)
    gamma: float = Field(20.0, gt=0)
    alpha_0: float = Field(0.1, gt=0)
    alpha_1: float = Field(0.1, gt=0)
    epsilon: float = Field(0.1, gt=0)
    k0_init: float = Field(0.001, gt=0)
    k1_init: float = Field(0.001, gt=0)


class AsmcParams(_ControllerParams):
    """Adaptive sliding mode baseline tau = -K sat(r)."""

    type: Literal["asmc"] = "asmc"
    k_bar: float = Field(1.0, gt=0)
    mu: float = Field(0.01, gt=0)
    epsilon: float = Field(0.1, gt=0)
    k_init: float = Field(0.001, gt=0)
    lam: float = Field(100.0, gt=0, description="slope of the sliding surface, same as r")


class ArtdcParams(_ControllerParams):
    """Adaptive-robust time delay controller."""

    type: Literal["artdc"] = "artdc"
    K: float = Field(1.0, gt=0)
    omega: float = Field(0.5, gt=0)
    Q: Tuple[Tuple[float, float], Tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))
    alpha_0: float = Field(0.82, gt=0)
    alpha_1: float = Field(0.82, gt=0)
    alpha_2: float = Field(1.0, gt=0)
    varsigma: float = Field(0.1, gt=0, description="cubic leak coefficient of gamma_2")
    delta: float = Field(10.0, gt=0, description="floor recovery rate of beta and rho")
    gamma_floor: Tuple[float, float, float] = (0.001, 0.001, 0.001)
    beta_floor: float = Field(0.05, gt=0)
    rho_floor: float = Field(0.05, gt=0)
    gamma_init: Tuple[float, float, float] = (3.0, 3.0, 3.0)
    beta_init: float = 2.8
    rho_init: float = 2.8
    epsilon: float = Field(0.1, gt=0)
    g_bar: float = 0.5
    variant: Literal["full", "constant_bound"] = "full"

    @model_validator(mode="after")
    def _initial_above_floors(self) -> "ArtdcParams":
        if any(f <= 0 for f in self.gamma_floor):
            raise ValueError("gamma_floor entries must be positive")
        for i, (g0, floor) in enumerate(zip(self.gamma_init, self.gamma_floor)):
            if g0 <= floor:
                raise ValueError(f"gamma_init[{i}]={g0} must exceed gamma_floor[{i}]={floor}")
        if self.variant == "full":
            if self.beta_init <= self.beta_floor:
                raise ValueError(f"beta_init={self.beta_init} must exceed beta_floor={self.beta_floor}")
            if self.rho_init <= self.rho_floor:
                raise ValueError(f"rho_init={self.rho_init} must exceed rho_floor={self.rho_floor}")
        if abs(self.g_bar) >= 1:
            raise ValueError(f"|g_bar|={abs(self.g_bar)} must be < 1")
        return self


ControllerParams = Annotated[Union[ProposedParams, AsmcParams, ArtdcParams], Field(discriminator="type")]


# ------------------------------
# Scenarios
# ------------------------------

class InitialConditions(_Frozen):
    theta: float = 0.1
    theta_dot: float = 0.0


class OutputConfig(_Frozen):
    dir: Optional[str] = None
    every: int = Field(1, ge=1, description="CSV downsampling factor")
    format: Literal["csv", "json"] = "csv"


class CalibrationConfig(_Frozen):
    """Grid over reference amplitude/frequency used to calibrate the baseline RMS error."""

    amplitudes: List[float] = Field(default_factory=lambda: [0.25, 0.5, 0.75, 1.0])
    frequencies: List[float] = Field(default_factory=lambda: [0.25, 0.5, 1.0])
    target_rms_deg: float = Field(0.785, gt=0)
    tolerance: float = Field(0.3, gt=0)
    duration: Optional[float] = Field(None, gt=0)
    apply: bool = Field(False, description="compare runs on the calibrated reference instead of the configured one")


class SweepConfig(_Frozen):
    """Randomized perturbations of one scenario, drawn from the scenario seed."""

    count: int = Field(20, ge=1)
    spread: float = Field(0.5, ge=0, lt=1, description="relative half-width of the parameter perturbation")


class DelayBoundConfig(_Frozen):
    """Inputs of the maximum-allowable-delay analysis."""

    K: float = 1.0
    omega: float = 0.5
    Q: Tuple[Tuple[float, float], Tuple[float, float]] = ((1.0, 0.0), (0.0, 1.0))
    razumikhin_r: float = Field(1.01, gt=1)
    eta: float = Field(0.7, gt=0)


class _ScenarioBase(_Frozen):
    name: str = "scenario"
    plant: PlantParams = Field(default_factory=PlantParams)
    components: Optional[ActuatorComponents] = Field(
        None, description="actuator components; when present they set J, B and i_rc of the plant"
    )
    nominal: Optional[NominalModel] = None
    reference: Reference = Field(default_factory=Reference)
    delay: DelayProfile = Field(default_factory=DelayProfile)
    dt: float = 1e-4
    duration: float = 100.0
    initial: InitialConditions = Field(default_factory=InitialConditions)
    tau_pre: float = Field(0.0, description="torque applied before t = 0 by delayed lookups")
    output: OutputConfig = Field(default_factory=OutputConfig)
    seed: int = 0
    delay_bound: Optional[DelayBoundConfig] = Field(None, description="inputs of the delay-bound command")

    @model_validator(mode="before")
    @classmethod
    def _lump_components(cls, data: Any) -> Any:
        if not isinstance(data, dict) or data.get("components") is None:
            return data
        try:
            components = ActuatorComponents.model_validate(data["components"])
            base = PlantParams.model_validate(data.get("plant") or {})
        except ValidationError as e:
            raise ValueError(_format_validation_error(e)) from e
        return {**data, "plant": components.column_params(base), "components": components}

    @field_validator("dt")
    @classmethod
    def _dt_positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError("dt must be positive")
        return value

    @model_validator(mode="after")
    def _duration_covers_steps(self) -> "_ScenarioBase":
        if self.duration < 10 * self.dt:
            raise ValueError(f"duration {self.duration} must be at least 10 dt ({10 * self.dt})")
        return self

    @property
    def resolved_nominal(self) -> NominalModel:
        """The configured nominal model, or the default J_hat = 1.5 J, B_hat = B."""
        return self.nominal or NominalModel.default_for(self.plant)

    def _check_nominal(self, controllers: List[Any]) -> None:
        if any(c.type == "artdc" for c in controllers):
            g_bar = self.resolved_nominal.J_hat / self.plant.J - 1.0
            if abs(g_bar) >= 1.0:
                raise ValueError(
                    f"nominal model gives |g_bar|={abs(g_bar):.3g} >= 1 (need 0 < J_hat < 2 J)"
                )


class ScenarioConfig(_ScenarioBase):
    """A single closed-loop run."""

    controller: ControllerParams = Field(default_factory=ProposedParams)
    sweep: Optional[SweepConfig] = None

    @model_validator(mode="after")
    def _nominal_assumption(self) -> "ScenarioConfig":
        self._check_nominal([self.controller])
        return self


class CompareConfig(_ScenarioBase):
    """Several controller variants run on identical plant, reference and delay."""

    variants: List[ControllerParams] = Field(min_length=2)
    baseline: Optional[str] = None
    calibration: Optional[CalibrationConfig] = None

    @model_validator(mode="after")
    def _variants_consistent(self) -> "CompareConfig":
        labels = [v.display_label for v in self.variants]
        if len(set(labels)) != len(labels):
            raise ValueError(f"variant labels must be unique, got {labels}")
        if self.baseline is not None and self.baseline not in labels:
            raise ValueError(f"baseline '{self.baseline}' is not one of {labels}")
        self._check_nominal(self.variants)
        return self

    @property
    def baseline_label(self) -> str:
        return self.baseline or self.variants[0].display_label

    def scenario_for(self, variant: Any, **overrides: Any) -> ScenarioConfig:
        """Build the single-run scenario of one variant."""
        fields = {name: getattr(self, name) for name in _ScenarioBase.model_fields}
        fields["name"] = f"{self.name}/{variant.display_label}"
        fields.update(overrides)
        return ScenarioConfig(controller=variant, **fields)


# ------------------------------
# Loading
# ------------------------------

def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        loc = ".".join(str(p) for p in item.get("loc", ())) or "<root>"
        msg = item.get("msg", "invalid value").removeprefix("Value error, ")
        parts.append(f"{loc}: {msg}")
    return "; ".join(parts)


def read_config_file(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Read a JSON scenario file.

    Args:
        path: Path of the JSON file

    Returns:
        The decoded JSON object

    Raises:
        ConfigError: If the file is missing, unreadable or not a JSON object
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config file: {e}", field=str(path)) from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", field=str(path)) from e
    if not isinstance(data, dict):
        raise ConfigError("top-level JSON value must be an object", field=str(path))
    return data


def parse_config(data: Dict[str, Any], model: Type[ModelT]) -> ModelT:
    """
    Validate decoded JSON against a config model.

    Args:
        data: Decoded JSON object
        model: The pydantic model class to validate against

    Returns:
        The validated model instance

    Raises:
        ConfigError: If validation fails; the message names each failing field
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        message = _format_validation_error(e)
        logger.debug(f"Config validation failed for {model.__name__}: {message}")
        raise ConfigError(message) from e


def load_config(path: Union[str, Path], model: Type[ModelT]) -> ModelT:
    """Read and validate a scenario file in one go."""
    data = read_config_file(path)
    config = parse_config(data, model)
    logger.info(f"Loaded {model.__name__} from {path}")
    return config


def load_delay_bound_config(path: Union[str, Path]) -> DelayBoundConfig:
    """
    Load the ``delay_bound`` section of a scenario file.

    Falls back to the K, Omega and Q of an ARTDC controller entry when the section is absent.
    """
    data = read_config_file(path)
    section = data.get("delay_bound")
    if section is None:
        candidates = [data.get("controller")] + list(data.get("variants") or [])
        artdc = next((c for c in candidates if isinstance(c, dict) and c.get("type") == "artdc"), None)
        if artdc is None:
            raise ConfigError("missing 'delay_bound' section and no ARTDC controller to derive it from", field="delay_bound")
        section = {k: artdc[k] for k in ("K", "omega", "Q") if k in artdc}
    if not isinstance(section, dict):
        raise ConfigError("must be an object", field="delay_bound")
    try:
        return DelayBoundConfig.model_validate(section)
    except ValidationError as e:
        raise ConfigError(_format_validation_error(e), field="delay_bound") from e
