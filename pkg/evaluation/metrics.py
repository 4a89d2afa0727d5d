# evaluation/metrics.py
"""Per-tick trajectory error series."""

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import DataError, UsageError
from core.geometry import Point2, Polyline, distances_to_polyline
from core.measurements import PositionEstimate


class Method(str, Enum):
    BLE_ONLY = "ble"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class ErrorSeries:
    """Distance-to-reference per tick; `sync_errors` is distance to truth at the same time."""

    method: Method
    timestamps: Tuple[float, ...]
    errors: Tuple[float, ...]
    sync_errors: Optional[Tuple[float, ...]] = None

    def __post_init__(self):
        if len(self.timestamps) != len(self.errors):
            raise DataError("timestamps and errors differ in length")
        if not all(np.isfinite(self.errors)) or any(e < 0.0 for e in self.errors):
            raise DataError("errors must be finite and non-negative")
        if self.sync_errors is not None and len(self.sync_errors) != len(self.errors):
            raise DataError("sync_errors and errors differ in length")

    def __len__(self) -> int:
        return len(self.errors)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.errors, dtype=float)

    def scaled(self, factor: float) -> "ErrorSeries":
        return ErrorSeries(
            self.method,
            self.timestamps,
            tuple(e * factor for e in self.errors),
            None if self.sync_errors is None else tuple(e * factor for e in self.sync_errors),
        )


def trajectory_errors(
    estimates: Sequence[Tuple[float, PositionEstimate]],
    reference: Polyline,
    method: Method = Method.HYBRID,
    truth: Optional[Mapping[float, Point2]] = None,
) -> ErrorSeries:
    """Distance of each estimated position from the reference polyline.

    With `truth` (timestamp -> position) the time-synchronized error is added;
    a tick missing from `truth` raises DataError.
    """
    if not estimates:
        raise UsageError("trajectory_errors needs at least one estimate")
    timestamps = tuple(float(t) for t, _ in estimates)
    pts = np.array([[e.position.x, e.position.y] for _, e in estimates], dtype=float)
    errors = tuple(float(d) for d in distances_to_polyline(pts, reference))

    sync = None
    if truth is not None:
        missing = [t for t in timestamps if t not in truth]
        if missing:
            raise DataError(f"no ground truth at t={missing[0]}")
        sync = tuple(
            float(np.hypot(x - truth[t].x, y - truth[t].y)) for t, (x, y) in zip(timestamps, pts)
        )
    return ErrorSeries(method, timestamps, errors, sync)
