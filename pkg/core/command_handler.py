"""
Module: command_handler
-----------------------
Provides a class for handling CLI sub-commands and dispatching them to the run manager
and the analysis utilities.

This module implements the CommandHandler class, which is responsible for:
1. Loading and validating the scenario file a command names
2. Resolving output directory, decimation and format from flags, environment and config
3. Running scenarios through the RunManager and writing traces and reports
4. Mapping failures onto process exit codes
"""

import asyncio
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Awaitable, Callable, Dict, List, Optional

from pydantic import ValidationError

import numpy as np

from core.config import CompareConfig, OutputConfig, ScenarioConfig, SweepConfig, load_config, load_delay_bound_config
from core.container import Container
from core.errors import AnalysisError, BoundEstimateError, ConfigError, NotHurwitzError
from core.run_manager import RunManager, RunResult
from core.services import ReportService
from core.simulation import calibrate_reference, jitter_scenario
from utils.bounds import (
    DelayBoundInputs,
    delay_bound_report,
    estimates_from_trace,
    lyapunov_monitor,
    ultimate_bound,
    uncertainty_bound_estimates,
)
from utils.lyapunov import lyapunov_pair
from utils.metrics import comparison_table, trace_metrics
from utils.sbw_plant import column_to_motor_torque

# Configure logging
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSTABLE = 2

DEFAULT_OUT_DIR = "out"


@dataclass(frozen=True)
class OutputOptions:
    """Command-line overrides of the ``output`` config section."""

    out: Optional[str] = None
    every: Optional[int] = None
    fmt: Optional[str] = None

    def resolve(self, cfg: OutputConfig) -> OutputConfig:
        """--out wins over SBW_OUT_DIR, which wins over the config file."""
        out_dir = self.out or os.getenv("SBW_OUT_DIR") or cfg.dir or DEFAULT_OUT_DIR
        try:
            return OutputConfig(
                dir=out_dir,
                every=self.every if self.every is not None else cfg.every,
                format=self.fmt or cfg.format,
            )
        except ValidationError as e:
            raise ConfigError(str(e.errors()[0].get("msg")), field="output") from e


class CommandHandler:
    """Handles CLI sub-commands."""

    def __init__(self, container: Container, run_manager: RunManager):
        """
        Initialize the CommandHandler.

        Args:
            container: The dependency injection container
            run_manager: The run manager executing scenarios
        """
        self._container = container
        self._run_manager = run_manager
        self._reports = container.resolve(ReportService)
        if not self._reports:
            raise ValueError("Report service not found in container")
        self._commands: Dict[str, Callable[[str, OutputOptions], Awaitable[int]]] = {
            "simulate": self.cmd_simulate,
            "compare": self.cmd_compare,
            "delay-bound": self.cmd_delay_bound,
            "calibrate": self.cmd_calibrate,
            "sweep": self.cmd_sweep,
            "metrics": self.cmd_metrics,
        }

    @property
    def commands(self) -> List[str]:
        return list(self._commands)

    async def dispatch(self, command: str, config_path: str, options: Optional[OutputOptions] = None) -> int:
        """
        Run one sub-command and return its exit code.

        Configuration and analysis failures give 1, an unstable run gives 2.
        """
        handler = self._commands.get(command)
        if handler is None:
            logger.error(f"Unknown command: {command}")
            return EXIT_ERROR
        try:
            return await handler(config_path, options or OutputOptions())
        except NotHurwitzError as e:
            eig = ", ".join(f"{complex(v):.6g}" for v in e.eigenvalues)
            logger.error(f"{command} failed: {str(e)} (eigenvalues: {eig})")
            return EXIT_ERROR
        except (ConfigError, AnalysisError) as e:
            logger.error(f"{command} failed: {str(e)}")
            return EXIT_ERROR

    def _out_dir(self, output: OutputConfig) -> Path:
        path = Path(output.dir)
        path.mkdir(parents=True, exist_ok=True)
        return path

    def _write_run(self, result: RunResult, stem: Path, output: OutputConfig) -> Dict[str, Any]:
        trace = result.trace
        written: Dict[str, Any] = {}
        if trace is not None and len(trace):
            path = self._reports.write_trace(
                stem, trace.columns, trace.data, every=output.every, fmt=output.format, metadata=trace.metadata
            )
            written["trace"] = path.name
        return written

    def _proposed_diagnostics(self, cfg: ScenarioConfig, result: RunResult) -> Optional[Dict[str, Any]]:
        """Ultimate bound and Lyapunov monitor for a completed proposed-controller run."""
        p = cfg.controller
        if p.type != "proposed" or result.trace is None or not result.ok:
            return None
        try:
            est = estimates_from_trace(result.trace, p.lam, p.alpha_0, p.alpha_1, p.gamma, cfg.plant.J)
            bound = ultimate_bound(est)
            monitor = lyapunov_monitor(result.trace, est)
        except BoundEstimateError as e:
            logger.warning(f"Ultimate bound unavailable for {cfg.name}: {str(e)}")
            return {"error": str(e)}
        model_k0, model_k1 = uncertainty_bound_estimates(cfg.plant, cfg.reference, p.lam)
        return {
            "ultimate_bound": bound.omega,
            "ultimate_bound_doubled": bound.omega_doubled,
            "decay_rate": bound.varrho,
            "level": monitor.radius,
            "monitor_ceiling": monitor.ceiling,
            "monitor_held": monitor.held,
            "monitor_max_excess": monitor.max_excess,
            "k0_star": est.k0_star,
            "k1_star": est.k1_star,
            "model_k0_star": model_k0,
            "model_k1_star": model_k1,
        }

    async def cmd_simulate(self, config_path: str, options: OutputOptions) -> int:
        """Simulate one scenario; write its trace and a metrics JSON."""
        cfg = load_config(config_path, ScenarioConfig)
        output = options.resolve(cfg.output)
        out_dir = self._out_dir(output)

        result = await self._run_manager.run(cfg)
        stem = out_dir / _safe_name(cfg.name)
        payload: Dict[str, Any] = {
            "scenario": cfg.name,
            "controller": cfg.controller.type,
            "label": result.label,
            "seed": cfg.seed,
            "metrics": result.metrics.to_dict() if result.metrics else None,
            "invariant_violations": result.violations,
            "instability": result.trace.instability if result.trace is not None else None,
        }
        if result.trace is not None:
            payload["cases"] = result.trace.metadata.get("cases", {})
            payload["ceiling_hits"] = result.trace.metadata.get("ceiling_hits", 0)
        if cfg.components is not None and result.metrics is not None:
            payload["rms_motor_torque"] = column_to_motor_torque(result.metrics.rms_torque, cfg.components.i_mc)
        diagnostics = self._proposed_diagnostics(cfg, result)
        if diagnostics is not None:
            payload["bound"] = diagnostics
        payload["files"] = self._write_run(result, stem, output)
        self._reports.write_json(stem.with_name(f"{stem.name}_metrics.json"), payload)

        if not result.ok:
            logger.error(f"Scenario {cfg.name} is unstable: {result.error}")
            return EXIT_UNSTABLE
        if result.violations:
            return EXIT_ERROR
        return EXIT_OK

    async def cmd_compare(self, config_path: str, options: OutputOptions) -> int:
        """Run every variant on the same scenario; write per-variant traces and a comparison JSON."""
        cfg = load_config(config_path, CompareConfig)
        output = options.resolve(cfg.output)
        out_dir = self._out_dir(output)

        calibration = None
        if cfg.calibration is not None and cfg.calibration.apply:
            calibration = await asyncio.to_thread(calibrate_reference, cfg)
            if not calibration.within_tolerance:
                logger.warning(f"Comparison {cfg.name} runs on a reference outside the calibration tolerance")
            cfg = cfg.model_copy(update={"reference": calibration.reference_for(cfg.reference)})

        results = await self._run_manager.run_variants(cfg)
        variants: Dict[str, Any] = {}
        for label, result in results.items():
            stem = out_dir / f"{_safe_name(cfg.name)}_{_safe_name(label)}"
            variants[label] = {
                "ok": result.ok,
                "error": result.error,
                "error_kind": result.error_kind,
                "metrics": result.metrics.to_dict() if result.metrics else None,
                "invariant_violations": result.violations,
                "files": self._write_run(result, stem, output),
            }

        completed = {label: r.metrics for label, r in results.items() if r.ok and r.metrics is not None}
        partial = len(completed) < len(results)
        payload = {
            "scenario": cfg.name,
            "seed": cfg.seed,
            "baseline": cfg.baseline_label,
            "partial": partial,
            "reference": cfg.reference.model_dump(),
            "table": comparison_table(completed, cfg.baseline_label),
            "variants": variants,
        }
        if calibration is not None:
            payload["calibration"] = calibration.to_dict()
        self._reports.write_json(out_dir / f"{_safe_name(cfg.name)}_comparison.json", payload)

        if any(r.error_kind == "instability" for r in results.values()):
            return EXIT_UNSTABLE
        if partial or any(r.violations for r in results.values()):
            return EXIT_ERROR
        return EXIT_OK

    async def cmd_delay_bound(self, config_path: str, options: OutputOptions) -> int:
        """Compute the maximum allowable delay for the ARTDC design and the AROLC comparison."""
        bound_cfg = load_delay_bound_config(config_path)
        pair = lyapunov_pair(bound_cfg.K, bound_cfg.omega, bound_cfg.Q)
        report = delay_bound_report(DelayBoundInputs(pair, r_z=bound_cfg.razumikhin_r, eta=bound_cfg.eta))

        output = options.resolve(OutputConfig())
        out_dir = self._out_dir(output)
        self._reports.write_json(out_dir / f"{_safe_name(Path(config_path).stem)}_delay_bound.json", report.to_dict())
        logger.info(f"Delay bound h_in={report.h_bar_in:.6g} (AROLC {report.h_hat_in:.6g})")
        return EXIT_OK

    async def cmd_calibrate(self, config_path: str, options: OutputOptions) -> int:
        """Sweep the reference for the baseline variant and write the chosen reference."""
        cfg = load_config(config_path, CompareConfig)
        output = options.resolve(cfg.output)
        out_dir = self._out_dir(output)
        result = await asyncio.to_thread(calibrate_reference, cfg)
        self._reports.write_json(out_dir / f"{_safe_name(cfg.name)}_calibration.json", result.to_dict())
        return EXIT_OK

    async def cmd_sweep(self, config_path: str, options: OutputOptions) -> int:
        """
        Run randomized perturbations of one scenario and write a sweep report.

        Perturbations are drawn from the scenario seed, so a sweep is reproducible. Runs
        execute one after another; each keeps its own metrics, violations and failure.
        """
        cfg = load_config(config_path, ScenarioConfig)
        sweep = cfg.sweep or SweepConfig()
        output = options.resolve(cfg.output)
        out_dir = self._out_dir(output)

        rng = np.random.default_rng(cfg.seed)
        runs: List[Dict[str, Any]] = []
        unstable = violated = 0
        for i in range(sweep.count):
            scenario = jitter_scenario(cfg, rng, spread=sweep.spread).model_copy(update={"name": f"{cfg.name}/{i}"})
            result = await self._run_manager.run(scenario)
            unstable += not result.ok
            violated += bool(result.violations)
            runs.append(
                {
                    "index": i,
                    "plant": scenario.plant.model_dump(),
                    "reference": scenario.reference.model_dump(),
                    "initial_theta": scenario.initial.theta,
                    "ok": result.ok,
                    "error": result.error,
                    "metrics": result.metrics.to_dict() if result.metrics else None,
                    "invariant_violations": result.violations,
                }
            )

        payload = {
            "scenario": cfg.name,
            "seed": cfg.seed,
            "count": sweep.count,
            "spread": sweep.spread,
            "unstable": unstable,
            "violated": violated,
            "runs": runs,
        }
        self._reports.write_json(out_dir / f"{_safe_name(cfg.name)}_sweep.json", payload)
        logger.info(f"Sweep {cfg.name}: {sweep.count} runs, {unstable} unstable, {violated} with violations")

        if unstable:
            return EXIT_UNSTABLE
        if violated:
            return EXIT_ERROR
        return EXIT_OK

    async def cmd_metrics(self, trace_path: str, options: OutputOptions) -> int:
        """Recompute RMS metrics from a trace CSV written by an earlier run."""
        path = Path(trace_path)
        try:
            trace = self._reports.read_trace(path)
        except (OSError, ValueError) as e:
            raise ConfigError(f"cannot read trace: {e}", field=str(path)) from e
        try:
            metrics = trace_metrics(trace)
        except KeyError as e:
            raise ConfigError(f"not a simulation trace: {e}", field=str(path)) from e

        output = options.resolve(OutputConfig(dir=str(path.parent)))
        out_dir = self._out_dir(output)
        payload = {"trace": path.name, "metrics": metrics.to_dict()}
        self._reports.write_json(out_dir / f"{_safe_name(path.stem)}_recomputed.json", payload)
        return EXIT_OK



def _safe_name(name: str) -> str:
    return "".join(c if c.isalnum() or c in "-_" else "_" for c in name)
