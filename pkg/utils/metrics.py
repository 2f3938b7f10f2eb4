"""
Module: metrics
---------------
RMS metrics and controller comparison figures.

Errors are stored in radians and reported in degrees.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Protocol, Sequence, Union

import numpy as np

from core.errors import EmptySeriesError

# Configure logging
logger = logging.getLogger(__name__)


def rms(series: Union[Sequence[float], np.ndarray]) -> float:
    """
    Root mean square of a series.

    Raises:
        EmptySeriesError: If the series is empty
    """
    arr = np.asarray(series, dtype=float)
    if arr.size == 0:
        raise EmptySeriesError("rms of an empty series")
    return float(np.sqrt(np.mean(arr * arr)))


def improvement_pct(candidate: float, baseline: float) -> float:
    """100 (baseline - candidate) / baseline."""
    if baseline == 0:
        raise ZeroDivisionError("baseline is zero; improvement is undefined")
    return 100.0 * (baseline - candidate) / baseline


class _TraceLike(Protocol):
    gain_labels: List[str]
    instability: Optional[Dict[str, Any]]

    def column(self, name: str) -> np.ndarray: ...


@dataclass
class Metrics:
    rms_error_deg: float
    rms_torque: float
    gain_min: Dict[str, float] = field(default_factory=dict)
    gain_max: Dict[str, float] = field(default_factory=dict)
    unstable: bool = False
    samples: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rms_error_deg": self.rms_error_deg,
            "rms_torque": self.rms_torque,
            "gain_min": dict(self.gain_min),
            "gain_max": dict(self.gain_max),
            "unstable": self.unstable,
            "samples": self.samples,
        }


def trace_metrics(trace: _TraceLike) -> Metrics:
    """
    RMS tracking error (deg), RMS commanded torque, gain extrema and instability flag.

    Computed from the columns alone, so the values can be reproduced from the exported CSV.
    """
    e = trace.column("e")
    tau = trace.column("tau_cmd")
    gain_min: Dict[str, float] = {}
    gain_max: Dict[str, float] = {}
    for i, label in enumerate(trace.gain_labels):
        col = trace.column(f"gain_{i}")
        if col.size:
            gain_min[label] = float(np.min(col))
            gain_max[label] = float(np.max(col))
    return Metrics(
        rms_error_deg=math.degrees(rms(e)),
        rms_torque=rms(tau),
        gain_min=gain_min,
        gain_max=gain_max,
        unstable=trace.instability is not None,
        samples=int(e.size),
    )


def comparison_table(results: Dict[str, Metrics], baseline: str) -> List[Dict[str, Any]]:
    """
    Rows of label, RMS error, RMS torque and improvements over the baseline, in input order.

    Improvements are None for the baseline row itself and when the baseline is missing.
    """
    base = results.get(baseline)
    rows = []
    for label, m in results.items():
        row: Dict[str, Any] = {
            "label": label,
            "rms_error_deg": m.rms_error_deg,
            "rms_torque": m.rms_torque,
            "error_improvement_pct": None,
            "torque_improvement_pct": None,
            "unstable": m.unstable,
        }
        if base is not None and label != baseline:
            if base.rms_error_deg > 0:
                row["error_improvement_pct"] = improvement_pct(m.rms_error_deg, base.rms_error_deg)
            if base.rms_torque > 0:
                row["torque_improvement_pct"] = improvement_pct(m.rms_torque, base.rms_torque)
        rows.append(row)
    return rows
