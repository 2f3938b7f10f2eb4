"""
Module: simulation
------------------
Closed-loop scenario execution.

Each step: evaluate the reference, compute the commanded torque from the current state,
push it into the delay line, read the applied torque at t - h(t), integrate the plant one
RK4 step under that held torque, then Euler-update the adaptive gains. Timestamps are
k * dt by index. Runs are deterministic and own all of their state.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from core.config import CompareConfig, Reference, ScenarioConfig
from core.container import Container
from core.controller import Controller, StepContext
from core.controller_registry import ControllerRegistry
from core.errors import ConfigError, InstabilityError
from core.services import PlantService
from services.plant_service import PlantServiceImpl
from utils.delay_line import DelayLine
from utils.metrics import trace_metrics
from utils.sbw_plant import SimState
from utils.signals import delay_at, max_delay, reference_eval

# Configure logging
logger = logging.getLogger(__name__)

BASE_COLUMNS = ["t", "theta", "theta_dot", "theta_d", "e", "e_dot", "tau_cmd", "tau_applied"]


class Trace:
    """Uniformly sampled run record with one row per step."""

    def __init__(self, n_rows: int, gain_labels: List[str], metadata: Optional[Dict[str, Any]] = None):
        self.gain_labels = list(gain_labels)
        self.columns = BASE_COLUMNS + [f"gain_{i}" for i in range(len(self.gain_labels))]
        self._index = {name: i for i, name in enumerate(self.columns)}
        self._data = np.full((n_rows, len(self.columns)), np.nan)
        self.length = 0
        self.metadata: Dict[str, Any] = dict(metadata or {})
        self.instability: Optional[Dict[str, Any]] = None

    def __len__(self) -> int:
        return self.length

    @property
    def data(self) -> np.ndarray:
        """Filled rows."""
        return self._data[: self.length]

    def append(self, row: tuple) -> None:
        self._data[self.length] = row
        self.length += 1

    def column(self, name: str) -> np.ndarray:
        try:
            return self._data[: self.length, self._index[name]]
        except KeyError:
            raise KeyError(f"no column '{name}' in {self.columns}") from None


def step_count(duration: float, dt: float) -> int:
    """Number of integration steps, floor(T / dt)."""
    return int(math.floor(duration / dt + 1e-9))


def default_container() -> Container:
    """Container with the plant service registered."""
    container = Container()
    container.register(PlantService, PlantServiceImpl())
    return container


_registry: Optional[ControllerRegistry] = None


def default_registry() -> ControllerRegistry:
    """Registry populated from the ``controllers`` package, discovered once."""
    global _registry
    if _registry is None:
        _registry = ControllerRegistry()
        _registry.discover_controllers("controllers")
    return _registry


def build_controller(
    cfg: ScenarioConfig, registry: Optional[ControllerRegistry] = None, container: Optional[Container] = None
) -> Controller:
    """Create the controller a scenario selects, configured for its plant."""
    registry = registry if registry is not None else default_registry()
    container = container if container is not None else default_container()
    return registry.create(cfg.controller, cfg.plant, cfg.resolved_nominal, container)


def run_scenario(
    cfg: ScenarioConfig, controller: Optional[Controller] = None, plant_service: Optional[PlantService] = None
) -> Trace:
    """
    Simulate one closed-loop scenario.

    Args:
        cfg: Validated scenario
        controller: Configured controller; built from cfg.controller when None
        plant_service: Service integrating the plant; PlantServiceImpl when None

    Returns:
        Trace with floor(T / dt) + 1 samples

    Raises:
        InstabilityError: If the state or the gains become non-finite; the partial
            trace is attached as ``error.trace``
    """
    controller = controller or build_controller(cfg)
    plant_service = plant_service if plant_service is not None else PlantServiceImpl()
    plant = cfg.plant
    dt = cfg.dt
    n_steps = step_count(cfg.duration, dt)
    line = DelayLine(dt, max_delay(cfg.delay), tau_pre=cfg.tau_pre)

    trace = Trace(
        n_steps + 1,
        controller.gain_labels,
        metadata={
            "scenario": cfg.name,
            "controller": controller.id,
            "label": cfg.controller.display_label,
            "gain_labels": controller.gain_labels,
            "dt": dt,
            "duration": cfg.duration,
            "steps": n_steps,
        },
    )
    cases: Counter = Counter()
    ceiling_hits = 0
    state = SimState(0.0, cfg.initial.theta, cfg.initial.theta_dot)
    gains = controller.initial_gains()

    logger.debug(f"Running {cfg.name} with {controller.id}: {n_steps} steps of {dt:g} s")
    try:
        for k in range(n_steps + 1):
            t = k * dt
            th_d, th_d_dot, th_d_ddot = reference_eval(cfg.reference, t)
            e = state.theta - th_d
            e_dot = state.theta_dot - th_d_dot
            ctx = StepContext(t, state, th_d, th_d_dot, th_d_ddot, e, e_dot, math.hypot(e, e_dot))

            tau = controller.torque(ctx, gains)
            if not math.isfinite(tau):
                raise InstabilityError(f"non-finite torque at t={t:.6g}", t=t, step=k)
            line.push(tau)
            tau_applied = line.sample(t - delay_at(cfg.delay, t))

            case = controller.diagnose(ctx, gains)
            if case is not None:
                cases[case] += 1
            trace.append((t, state.theta, state.theta_dot, th_d, e, e_dot, tau, tau_applied, *controller.gain_values(gains)))

            if k == n_steps:
                break
            state = plant_service.step(state, tau_applied, dt, plant, t_next=(k + 1) * dt)
            gains, hit = controller.advance_gains(ctx, gains, dt)
            if hit:
                ceiling_hits += 1
            if not all(math.isfinite(v) for v in controller.gain_values(gains)):
                raise InstabilityError(f"non-finite adaptive gain at t={(k + 1) * dt:.6g}", t=(k + 1) * dt, step=k + 1)
    except InstabilityError as err:
        if err.step < 0:
            err.step = int(round(err.t / dt)) if math.isfinite(err.t) else len(trace)
        trace.instability = {"t": err.t, "step": err.step, "message": str(err)}
        trace.metadata.update(instability=trace.instability, ceiling_hits=ceiling_hits, cases=dict(sorted(cases.items())))
        err.trace = trace
        logger.error(f"Instability in {cfg.name} at t={err.t:.6g}: {err}")
        raise

    trace.metadata.update(instability=None, ceiling_hits=ceiling_hits, cases=dict(sorted(cases.items())))
    if ceiling_hits:
        logger.warning(f"{cfg.name}: adaptive gains hit the ceiling on {ceiling_hits} steps")
    return trace



def jitter_scenario(cfg: ScenarioConfig, rng: np.random.Generator, spread: float = 0.5) -> ScenarioConfig:
    """
    Copy of a scenario with plant, reference and initial angle scaled by factors in [1 - spread, 1 + spread].

    The nominal model is reset to its default for the perturbed plant, and actuator
    components are dropped so the perturbed plant stands on its own.
    """
    if not 0 <= spread < 1:
        raise ValueError("spread must lie in [0, 1)")

    def scaled(value: float) -> float:
        return float(value * (1.0 + rng.uniform(-spread, spread)))

    data = cfg.model_dump()
    data["plant"] = {k: scaled(v) for k, v in data["plant"].items()}
    data["reference"]["amplitude"] = scaled(data["reference"]["amplitude"])
    data["reference"]["omega"] = scaled(data["reference"]["omega"])
    data["initial"]["theta"] = scaled(data["initial"]["theta"])
    data["nominal"] = None
    data["components"] = None
    return ScenarioConfig.model_validate(data)


@dataclass
class CalibrationResult:
    """Reference chosen so the baseline RMS error lands near the target."""

    baseline: str
    amplitude: float
    omega: float
    rms_error_deg: float
    target_rms_deg: float
    within_tolerance: bool
    grid: List[Dict[str, Any]] = field(default_factory=list)

    def reference_for(self, base: Reference) -> Reference:
        """The base reference with the calibrated amplitude and frequency."""
        return base.model_copy(update={"amplitude": self.amplitude, "omega": self.omega})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "baseline": self.baseline,
            "reference": {"amplitude": self.amplitude, "omega": self.omega},
            "rms_error_deg": self.rms_error_deg,
            "target_rms_deg": self.target_rms_deg,
            "within_tolerance": self.within_tolerance,
            "grid": self.grid,
        }


def calibrate_reference(cfg: CompareConfig) -> CalibrationResult:
    """
    Sweep the reference amplitude and frequency with the baseline controller.

    Picks the grid point whose RMS tracking error (deg) is closest to the calibration
    target; unstable grid points are recorded and skipped.

    Raises:
        ConfigError: If the config has no ``calibration`` section or every grid point fails
    """
    if cfg.calibration is None:
        raise ConfigError("missing section", field="calibration")
    cal = cfg.calibration
    baseline = next(v for v in cfg.variants if v.display_label == cfg.baseline_label)
    overrides: Dict[str, Any] = {}
    if cal.duration is not None:
        overrides["duration"] = cal.duration

    grid: List[Dict[str, Any]] = []
    best: Optional[Dict[str, Any]] = None
    for amplitude in cal.amplitudes:
        for omega in cal.frequencies:
            reference = cfg.reference.model_copy(update={"amplitude": amplitude, "omega": omega})
            scenario = cfg.scenario_for(baseline, reference=reference, **overrides)
            point: Dict[str, Any] = {"amplitude": amplitude, "omega": omega}
            try:
                metrics = trace_metrics(run_scenario(scenario))
            except InstabilityError as e:
                point["error"] = str(e)
                grid.append(point)
                continue
            point["rms_error_deg"] = metrics.rms_error_deg
            grid.append(point)
            if best is None or abs(metrics.rms_error_deg - cal.target_rms_deg) < abs(
                best["rms_error_deg"] - cal.target_rms_deg
            ):
                best = point

    if best is None:
        raise ConfigError("every calibration grid point was unstable", field="calibration")
    within = abs(best["rms_error_deg"] - cal.target_rms_deg) <= cal.tolerance * cal.target_rms_deg
    logger.info(
        f"Calibrated reference A={best['amplitude']}, w={best['omega']}: "
        f"{best['rms_error_deg']:.4g} deg vs target {cal.target_rms_deg} ({'within' if within else 'outside'} tolerance)"
    )
    return CalibrationResult(
        baseline=baseline.display_label,
        amplitude=best["amplitude"],
        omega=best["omega"],
        rms_error_deg=best["rms_error_deg"],
        target_rms_deg=cal.target_rms_deg,
        within_tolerance=within,
        grid=grid,
    )
