"""
Module: services
---------------
Defines service interfaces for dependency injection.

This module provides abstract base classes for the services used by controllers,
the run manager and the command handler:
1. PlantService - plant integration and the nominal model split
2. ReportService - CSV/JSON emission of traces, metrics and reports
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from core.config import NominalModel, PlantParams


class PlantService(ABC):
    """Interface for evaluating the steer-by-wire plant."""

    @abstractmethod
    def step(self, state: Any, tau_held: float, dt: float, params: PlantParams, t_next: Optional[float] = None) -> Any:
        """
        Advance the plant one RK4 step under a held torque.

        Args:
            state: Current SimState
            tau_held: Applied torque over the step
            dt: Step size
            params: Plant parameters
            t_next: Timestamp of the new state

        Returns:
            The new SimState
        """
        pass

    @abstractmethod
    def decompose(self, params: PlantParams, nominal: NominalModel, state: Any) -> Tuple[float, float, float]:
        """Nominal drift, nominal input gain and the input-gain mismatch g_bar."""
        pass


class ReportService(ABC):
    """Interface for writing run outputs."""

    @abstractmethod
    def write_trace(self, path: Path, columns: List[str], data: np.ndarray, every: int = 1,
                    fmt: str = "csv", metadata: Optional[Dict[str, Any]] = None) -> Path:
        """
        Write a trace table.

        Args:
            path: Destination file; its suffix is replaced to match fmt
            columns: Column names
            data: Samples, one row each
            every: Keep every N-th row
            fmt: "csv" or "json"
            metadata: Scenario metadata (JSON format only)

        Returns:
            The written path
        """
        pass

    @abstractmethod
    def write_json(self, path: Path, payload: Dict[str, Any]) -> Path:
        """Write a JSON document."""
        pass

    @abstractmethod
    def read_trace(self, path: Path) -> Any:
        """Read a trace CSV back into a column-addressable table."""
        pass
