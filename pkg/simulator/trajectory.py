# simulator/trajectory.py
"""Constant-speed walk along a polyline, sampled at the tick rate."""

import math
from dataclasses import dataclass
from typing import List

from core.errors import ConfigurationError
from core.geometry import Point2, Polyline

# absorbs rounding in length·rate/speed so exact multiples keep their last sample
_SAMPLE_EPS = 1e-9


@dataclass(frozen=True)
class GroundTruthSample:
    timestamp: float
    position: Point2


def gen_trajectory(line: Polyline, speed: float, rate: float) -> List[GroundTruthSample]:
    """Arc-length samples every speed/rate meters, from the first vertex."""
    if not (math.isfinite(speed) and speed > 0.0):
        raise ConfigurationError(f"walk speed must be finite and > 0, got {speed}")
    if not (math.isfinite(rate) and rate > 0.0):
        raise ConfigurationError(f"tick rate must be finite and > 0, got {rate}")
    n = int(math.floor(line.length * rate / speed + _SAMPLE_EPS)) + 1
    return [GroundTruthSample(k / rate, line.point_at(k * speed / rate)) for k in range(n)]
