# core/measurements.py
"""Measurement samples and the position estimate exchanged by fusion."""

import math
from dataclasses import dataclass
from enum import Enum
from itertools import groupby
from typing import Iterable, Iterator, List, Sequence, Tuple

from core.errors import DataError, OrderingError
from core.geometry import Point2


class MeasurementKind(str, Enum):
    RSS = "RSS"
    RANGE = "RANGE"

    @property
    def unit(self) -> str:
        return "dBm" if self is MeasurementKind.RSS else "m"


@dataclass(frozen=True)
class Measurement:
    """One sample: RSS in dBm from an anchor, or a range in meters from a sensor."""

    timestamp: float
    source_id: str
    kind: MeasurementKind
    value: float

    def __post_init__(self):
        if not (math.isfinite(self.timestamp) and self.timestamp >= 0.0):
            raise DataError(f"timestamp must be finite and non-negative, got {self.timestamp}")
        if not math.isfinite(self.value):
            raise DataError(f"{self.kind.value} value from {self.source_id!r} is not finite")
        if self.kind is MeasurementKind.RANGE and self.value <= 0.0:
            raise DataError(f"RANGE value from {self.source_id!r} must be > 0, got {self.value}")

    @property
    def sort_key(self) -> Tuple[float, str]:
        return (self.timestamp, self.source_id)


@dataclass(frozen=True)
class PositionEstimate:
    """Planar position with per-axis variance (m²)."""

    position: Point2
    var_x: float
    var_y: float

    def __post_init__(self):
        if not (self.var_x > 0.0 and self.var_y > 0.0):
            raise DataError(f"variances must be positive, got ({self.var_x}, {self.var_y})")
        if not (math.isfinite(self.var_x) and math.isfinite(self.var_y)):
            raise DataError("variances must be finite")


def check_time_order(measurements: Sequence[Measurement]) -> None:
    """Raise OrderingError unless timestamps are non-decreasing."""
    for i in range(1, len(measurements)):
        if measurements[i].timestamp < measurements[i - 1].timestamp:
            raise OrderingError(
                f"measurement {i} at t={measurements[i].timestamp} precedes "
                f"t={measurements[i - 1].timestamp}"
            )


def group_ticks(measurements: Iterable[Measurement]) -> Iterator[Tuple[float, List[Measurement]]]:
    """Yield (timestamp, measurements) for each tick of a time-ordered stream."""
    for t, group in groupby(measurements, key=lambda m: m.timestamp):
        yield t, list(group)
