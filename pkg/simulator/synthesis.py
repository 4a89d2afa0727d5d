# simulator/synthesis.py
"""Synthetic RSS and ToF range samples."""

import math
from typing import Optional, Sequence

import numpy as np

from core.geometry import Point2
from core.measurements import Measurement, MeasurementKind
from estimation.models import Anchor
from estimation.rss import rss_model
from proximity.sensor import SensorModel, evaluate_stddev
from simulator.scenario import MEASURED_HALF_ANGLE_DEG, FovMode

MIN_RANGE_VALUE = 1e-3  # m, keeps noisy near-zero returns valid


def effective_half_angle(
    m: SensorModel, fov_mode: FovMode, measured_half_angle_deg: float = MEASURED_HALF_ANGLE_DEG
) -> float:
    """Detection half-angle in radians; MEASURED never exceeds the declared cone."""
    if fov_mode is FovMode.MEASURED:
        return math.radians(min(m.fov_half_angle_deg, measured_half_angle_deg))
    return m.fov_half_angle


def cone_width(half_angle: float, distance: float) -> float:
    """Full width of a detection cone at `distance` (half-angle in radians)."""
    return 2.0 * distance * math.tan(half_angle)


def off_boresight_angle(truth: Point2, m: SensorModel) -> float:
    dx = truth.x - m.position.x
    dy = truth.y - m.position.y
    bx, by = m.boresight
    return math.atan2(abs(bx * dy - by * dx), bx * dx + by * dy)


def simulate_rss(
    truth: Point2, a: Anchor, rng: Optional[np.random.Generator], t: float = 0.0
) -> Measurement:
    """RSS sample at `truth`; `rng=None` disables shadowing noise."""
    value = rss_model(truth, a)
    if rng is not None:
        value += a.rss_noise_stddev * rng.standard_normal()
    return Measurement(t, a.id, MeasurementKind.RSS, value)


def simulate_range(
    truth: Point2,
    m: SensorModel,
    fov_mode: FovMode,
    rng: Optional[np.random.Generator],
    *,
    t: float = 0.0,
    measured_half_angle_deg: float = MEASURED_HALF_ANGLE_DEG,
    stddev_cubic: Optional[Sequence[float]] = None,
) -> Optional[Measurement]:
    """Raw range sample reported by `m` for a target at `truth`, or None if undetected.

    Bias is applied as a function of the true distance. `stddev_cubic` overrides
    the sensor's own noise model (surface profiles); `rng=None` disables noise.
    """
    d = truth.distance_to(m.position)
    if d <= 0.0 or d > m.max_range:
        return None
    if off_boresight_angle(truth, m) > effective_half_angle(m, fov_mode, measured_half_angle_deg):
        return None
    value = d + m.bias(d)
    if rng is not None:
        sigma = evaluate_stddev(stddev_cubic if stddev_cubic is not None else m.stddev_cubic, d)
        value += sigma * rng.standard_normal()
    return Measurement(t, m.id, MeasurementKind.RANGE, max(value, MIN_RANGE_VALUE))
