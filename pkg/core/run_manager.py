"""
Module: run_manager
-------------------
Provides functionality for managing scenario runs.

This module implements the RunManager class, which is responsible for:
1. Building configured controllers through the registry and container
2. Executing runs off the event loop with asyncio.to_thread
3. Running comparison variants as concurrent tasks and gathering their results
4. Containing per-run failures so one diverging variant does not abort the others
"""

import asyncio
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from core.config import CompareConfig, ScenarioConfig
from core.container import Container
from core.controller_registry import ControllerRegistry
from core.errors import InstabilityError, SbwSimError
from core.services import PlantService
from core.simulation import Trace, build_controller, run_scenario
from utils.metrics import Metrics, trace_metrics

# Configure logging
logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """Outcome of one run: a trace with metrics, or the failure that stopped it."""

    label: str
    trace: Optional[Trace] = None
    metrics: Optional[Metrics] = None
    error: Optional[str] = None
    error_kind: Optional[str] = None
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.error is None


class RunManager:
    """Manages the lifecycle of scenario runs."""

    def __init__(self, registry: ControllerRegistry, container: Container):
        """
        Initialize the RunManager.

        Args:
            registry: The controller registry containing all discovered controllers
            container: The dependency injection container
        """
        self._registry = registry
        self._container = container
        self._running_tasks: Dict[str, asyncio.Task] = {}

    def _execute(self, cfg: ScenarioConfig) -> RunResult:
        label = cfg.controller.display_label
        controller = build_controller(cfg, self._registry, self._container)
        logger.info(f"Starting run {cfg.name} ({controller.name})")
        try:
            trace = run_scenario(cfg, controller, self._container.resolve(PlantService))
        except InstabilityError as e:
            trace = e.trace
            metrics = trace_metrics(trace) if trace is not None and len(trace) else None
            return RunResult(label, trace=trace, metrics=metrics, error=str(e), error_kind="instability")

        violations = controller.check_invariants(trace)
        for v in violations:
            logger.error(f"Invariant violated in {cfg.name}: {v}")
        metrics = trace_metrics(trace)
        logger.info(
            f"Completed run {cfg.name}: rms error {metrics.rms_error_deg:.4g} deg, rms torque {metrics.rms_torque:.4g}"
        )
        return RunResult(label, trace=trace, metrics=metrics, violations=violations)

    async def run(self, cfg: ScenarioConfig) -> RunResult:
        """
        Execute one scenario in a worker thread.

        Raises:
            ConfigError: If the controller cannot be built
            AnalysisError: If the controller design fails
        """
        return await asyncio.to_thread(self._execute, cfg)

    async def _execute_variant(self, cfg: ScenarioConfig) -> RunResult:
        label = cfg.controller.display_label
        try:
            return await self.run(cfg)
        except asyncio.CancelledError:
            logger.info(f"Run {label} cancelled")
            raise
        except SbwSimError as e:
            logger.error(f"Error in run {label}: {str(e)}", exc_info=True)
            return RunResult(label, error=str(e), error_kind=type(e).__name__)
        except Exception as e:
            logger.error(f"Unexpected error in run {label}: {str(e)}", exc_info=True)
            return RunResult(label, error=str(e), error_kind=type(e).__name__)
        finally:
            self._running_tasks.pop(label, None)

    async def run_variants(self, cfg: CompareConfig) -> Dict[str, RunResult]:
        """
        Run every comparison variant concurrently on identical plant, reference and delay.

        Returns:
            Results keyed by variant label, in the order the variants are listed
        """
        scenarios = [cfg.scenario_for(v) for v in cfg.variants]
        for scenario in scenarios:
            label = scenario.controller.display_label
            self._running_tasks[label] = asyncio.create_task(self._execute_variant(scenario))

        labels = [s.controller.display_label for s in scenarios]
        tasks = [self._running_tasks[label] for label in labels]
        results = await asyncio.gather(*tasks)

        failed = [r.label for r in results if not r.ok]
        if failed:
            logger.error(f"Comparison {cfg.name} finished with failed variants: {failed}")
        return dict(zip(labels, results))

    def is_running(self, label: str) -> bool:
        return label in self._running_tasks
