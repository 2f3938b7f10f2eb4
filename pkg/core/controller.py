"""
Module: controller
-----------------
Defines the base Controller interface that all control-law plugins must implement.

A controller is configured once per run with its validated parameters and the plant
it drives. The simulation loop then calls ``torque`` and ``advance_gains`` every step;
the gain record itself is owned by the loop.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, ClassVar, List, Optional, Sequence, Tuple, Type

from pydantic import BaseModel

from core.config import NominalModel, PlantParams


@dataclass(frozen=True)
class StepContext:
    """Everything a control law may read at one step."""

    t: float
    state: Any
    theta_d: float
    theta_d_dot: float
    theta_d_ddot: float
    e: float
    e_dot: float
    xi_norm: float


class Controller(ABC):
    """Base interface for all controllers."""

    # Pydantic model of the controller's configuration section
    params_model: ClassVar[Type[BaseModel]]

    @property
    @abstractmethod
    def id(self) -> str:
        """Unique identifier for the controller, equal to its config ``type``."""
        pass

    @classmethod
    @abstractmethod
    def get_controller_id(cls) -> str:
        """
        Get the unique identifier for this controller class.

        This class method is used by the ControllerRegistry to identify controllers
        without having to instantiate them.

        Returns:
            The unique identifier for this controller
        """
        pass

    @property
    @abstractmethod
    def name(self) -> str:
        """Human-readable name for the controller."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """Description of the control law."""
        pass

    @property
    @abstractmethod
    def gain_labels(self) -> List[str]:
        """Names of the adaptive gains, in trace column order."""
        pass

    @abstractmethod
    def configure(self, params: BaseModel, plant: PlantParams, nominal: NominalModel) -> None:
        """
        Bind parameters and plant before a run.

        Raises:
            ConfigError: If params is not an instance of params_model
            AnalysisError: If a design computation fails
        """
        pass

    @abstractmethod
    def initial_gains(self) -> Any:
        """Gain record at t = 0."""
        pass

    @abstractmethod
    def torque(self, ctx: StepContext, gains: Any) -> float:
        """Commanded torque for the current step."""
        pass

    @abstractmethod
    def advance_gains(self, ctx: StepContext, gains: Any, dt: float) -> Tuple[Any, bool]:
        """
        Forward-Euler gain update followed by clamping.

        Returns:
            (new gain record, True if a gain hit the ceiling)
        """
        pass

    @abstractmethod
    def gain_values(self, gains: Any) -> Sequence[float]:
        """Gain record flattened in ``gain_labels`` order."""
        pass

    def diagnose(self, ctx: StepContext, gains: Any) -> Optional[str]:
        """Optional per-step case label counted into the trace metadata."""
        return None

    def check_invariants(self, trace: Any) -> List[str]:
        """
        Check the gain invariants of a finished trace.

        Returns:
            Human-readable descriptions of every violation (empty when all hold)
        """
        return []
