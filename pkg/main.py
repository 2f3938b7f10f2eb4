#!/usr/bin/env python3
"""
Module: main
------------
Main entry point for the SBW-Sim command line.

This module configures logging and hands the command line to the application.
"""

import asyncio
import logging
import os
import sys
from typing import List

import structlog
from dotenv import load_dotenv

from core.app import SbwSimApp

# Load environment variables
load_dotenv()

# Configure logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
LOG_FORMAT = os.getenv("LOG_FORMAT", "console").lower()
log_level_map = {
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL,
}


def configure_logging(level: str = LOG_LEVEL, fmt: str = LOG_FORMAT) -> None:
    """Render stdlib log records through structlog on stderr."""
    renderer = structlog.processors.JSONRenderer() if fmt == "json" else structlog.dev.ConsoleRenderer()
    formatter = structlog.stdlib.ProcessorFormatter(
        processor=renderer,
        foreign_pre_chain=[
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
        ],
    )
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    root = logging.getLogger()
    root.handlers[:] = [handler]
    root.setLevel(log_level_map.get(level, logging.INFO))


logger = logging.getLogger(__name__)


async def main(argv: List[str]) -> int:
    """Main entry point for the SBW-Sim command line."""
    try:
        app = SbwSimApp()
        app.initialize()
        return await app.run(argv)
    except Exception as e:
        logger.critical(f"Fatal error in main: {str(e)}", exc_info=True)
        return 1


if __name__ == "__main__":
    configure_logging()
    logger.debug(f"Logging level set to {LOG_LEVEL}")
    sys.exit(asyncio.run(main(sys.argv[1:])))
