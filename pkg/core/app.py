"""
Module: app
----------
Main application class for SBW-Sim.

This module implements the SbwSimApp class, which is responsible for:
1. Initializing all components
2. Parsing the command line
3. Dispatching the selected sub-command
4. Handling interruption
"""

import argparse
import asyncio
import logging
import sys
from typing import List, NoReturn, Optional, Sequence

from core.command_handler import EXIT_ERROR, CommandHandler, OutputOptions
from core.container import Container
from core.controller_registry import ControllerRegistry
from core.errors import ConfigError
from core.run_manager import RunManager
from core.services import PlantService, ReportService
from services.plant_service import PlantServiceImpl
from services.report_service import ReportServiceImpl

# Configure logging
logger = logging.getLogger(__name__)

EXIT_INTERRUPTED = 130


class CliParser(argparse.ArgumentParser):
    """Argument parser that reports usage errors as ConfigError instead of exiting with 2."""

    def error(self, message: str) -> NoReturn:
        raise ConfigError(message, field="arguments")


def build_parser(commands: Sequence[str]) -> argparse.ArgumentParser:
    parser = CliParser(
        prog="sbw-sim",
        description="Steer-by-wire controller simulation and delay-margin analysis.",
    )
    parser.add_argument("command", choices=list(commands), help="sub-command to run")
    parser.add_argument("config", help="path of the JSON scenario file (a trace CSV for metrics)")
    parser.add_argument("--out", metavar="DIR", help="output directory (default: $SBW_OUT_DIR, then the config)")
    parser.add_argument("--every", type=int, metavar="N", help="write every N-th trace sample")
    parser.add_argument("--format", dest="fmt", choices=["csv", "json"], help="trace file format")
    return parser


class SbwSimApp:
    """Main application class for SBW-Sim."""

    def __init__(self):
        """Initialize the SBW-Sim application."""
        self._container: Optional[Container] = None
        self._registry: Optional[ControllerRegistry] = None
        self._run_manager: Optional[RunManager] = None
        self._command_handler: Optional[CommandHandler] = None

    @property
    def container(self) -> Container:
        if self._container is None:
            raise RuntimeError("application is not initialized")
        return self._container

    def initialize(self) -> None:
        """Initialize all components."""
        # Set up dependency injection container
        self._container = Container()
        self._container.register(PlantService, PlantServiceImpl())
        self._container.register(ReportService, ReportServiceImpl())

        # Set up controller registry and discover controllers
        self._registry = ControllerRegistry()
        self._registry.discover_controllers("controllers")
        logger.debug(f"Available controllers: {self._registry.controller_ids}")

        self._run_manager = RunManager(self._registry, self._container)
        self._command_handler = CommandHandler(self._container, self._run_manager)

    async def run(self, argv: List[str]) -> int:
        """
        Parse arguments and run one sub-command.

        Args:
            argv: Command-line arguments without the program name

        Returns:
            Process exit code
        """
        if self._command_handler is None:
            self.initialize()
        handler = self._command_handler
        assert handler is not None

        parser = build_parser(handler.commands)
        try:
            args = parser.parse_args(argv)
        except ConfigError as e:
            parser.print_usage(sys.stderr)
            logger.error(str(e))
            return EXIT_ERROR
        except SystemExit as e:
            # --help exits with 0
            return int(e.code) if isinstance(e.code, int) else EXIT_ERROR

        options = OutputOptions(out=args.out, every=args.every, fmt=args.fmt)
        logger.info(f"Running {args.command} on {args.config}")
        try:
            code = await handler.dispatch(args.command, args.config, options)
        except asyncio.CancelledError:
            logger.info("Interrupted")
            return EXIT_INTERRUPTED
        logger.info(f"{args.command} finished with exit code {code}")
        return code
