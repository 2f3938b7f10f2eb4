"""
Module: report_service
----------------------
Provides an implementation of the ReportService interface using the trace_io module.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np

from core.services import ReportService
import utils.trace_io as trace_io

# Configure logging
logger = logging.getLogger(__name__)


class ReportServiceImpl(ReportService):
    """Implementation of the ReportService interface using trace_io."""

    def write_trace(
        self,
        path: Path,
        columns: List[str],
        data: np.ndarray,
        every: int = 1,
        fmt: str = "csv",
        metadata: Optional[Dict[str, Any]] = None,
    ) -> Path:
        path = Path(path).with_suffix(f".{fmt}")
        if fmt == "csv":
            written = trace_io.write_table_csv(path, columns, data, every=every)
        elif fmt == "json":
            written = trace_io.write_table_json(path, columns, data, every=every, metadata=metadata)
        else:
            raise ValueError(f"Unsupported trace format: {fmt}")
        logger.info(f"Trace written to {written}")
        return written

    def write_json(self, path: Path, payload: Dict[str, Any]) -> Path:
        written = trace_io.write_json(path, payload)
        logger.info(f"Report written to {written}")
        return written

    def read_trace(self, path: Path) -> trace_io.CsvTrace:
        return trace_io.read_trace_csv(path)
