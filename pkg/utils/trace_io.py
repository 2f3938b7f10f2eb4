"""
Module: trace_io
----------------
CSV and JSON emission of traces and reports.

CSV files have one header row and one row per (downsampled) sample; floats are printed
with 9 significant digits. JSON files are indented and keep key order, so identical runs
produce byte-identical files.
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

# Configure logging
logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.9g"

PathLike = Union[str, Path]


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    return value


def write_json(path: PathLike, payload: Dict[str, Any]) -> Path:
    """Write a JSON document, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), indent=2) + "\n", encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def write_table_csv(path: PathLike, columns: List[str], data: np.ndarray, every: int = 1) -> Path:
    """
    Write a 2-D array as CSV.

    Args:
        path: Destination file
        columns: Header names, one per array column
        data: Array of shape (rows, len(columns))
        every: Keep every N-th row

    Returns:
        The written path
    """
    if every < 1:
        raise ValueError("every must be >= 1")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = np.asarray(data, dtype=float)[::every]
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(columns) + "\n")
        np.savetxt(fh, rows, fmt=FLOAT_FORMAT, delimiter=",")
    logger.debug(f"Wrote {len(rows)} rows to {path}")
    return path


def write_table_json(
    path: PathLike, columns: List[str], data: np.ndarray, every: int = 1, metadata: Optional[Dict[str, Any]] = None
) -> Path:
    """Write a 2-D array as a JSON object with columns, rows and metadata."""
    if every < 1:
        raise ValueError("every must be >= 1")
    rows = np.asarray(data, dtype=float)[::every]
    return write_json(path, {"columns": list(columns), "metadata": metadata or {}, "rows": rows.tolist()})


@dataclass
class CsvTrace:
    """A trace read back from CSV; exposes the same column access as a simulated trace."""

    columns: List[str]
    data: np.ndarray
    instability: Optional[Dict[str, Any]] = None

    @property
    def gain_labels(self) -> List[str]:
        return [c for c in self.columns if c.startswith("gain_")]

    def column(self, name: str) -> np.ndarray:
        try:
            return self.data[:, self.columns.index(name)]
        except ValueError:
            raise KeyError(f"no column '{name}' in {self.columns}") from None


def read_trace_csv(path: PathLike) -> CsvTrace:
    """Load a CSV written by ``write_table_csv``."""
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        header = fh.readline().strip().split(",")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.size == 0:
        data = np.empty((0, len(header)))
    return CsvTrace(columns=header, data=data)
