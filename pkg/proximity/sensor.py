# proximity/sensor.py
"""Laser ToF proximity sensor model: bias table, stddev cubic, boresight estimate."""

import logging
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from core.errors import ConfigurationError, DataError, SensorRangeError
from core.geometry import Point2
from core.measurements import PositionEstimate

logger = logging.getLogger(__name__)

SIGMA_MIN = 0.005  # m
MIN_CORRECTED_RANGE = 1e-3  # m

# Bias vs measured distance: a few cm up to 2 m, >30 cm at 3.5 m.
DEFAULT_BIAS_TABLE: Tuple[Tuple[float, float], ...] = (
    (0.0, 0.01),
    (0.5, 0.01),
    (1.0, 0.015),
    (1.5, 0.02),
    (2.0, 0.03),
    (2.5, 0.12),
    (3.0, 0.21),
    (3.5, 0.30),
)

# Exact cubic through (0.5, 0.02), (2.0, 0.03), (2.5, 0.05), (3.5, 0.20);
# regenerate with scripts/fit_default_stddev.py.
DEFAULT_STDDEV_CUBIC: Tuple[float, float, float, float] = (
    -0.013888888888888888,
    0.10194444444444445,
    -0.07777777777777778,
    0.018888888888888889,
)

# Light clothing: (0.5, 0.015), (2.0, 0.02), (2.5, 0.03), (3.5, 0.10).
LIGHT_SURFACE_STDDEV_CUBIC: Tuple[float, float, float, float] = (
    0.0008333333333333334,
    0.042916666666666667,
    -0.03333333333333333,
    0.008333333333333333,
)

DEFAULT_MAX_RANGE = 3.5  # m
DEFAULT_FOV_HALF_ANGLE_DEG = 13.5  # 27° full angle
PROGRAMMABLE_FOV_DEG = (15.0, 27.0)  # full angle


@dataclass(frozen=True)
class SensorModel:
    """Pose, detection cone and error model of one proximity sensor.

    Angles are stored in degrees (the file format's units); `boresight` and
    `fov_half_angle` give the unit vector and the half-angle in radians.
    """

    id: str
    position: Point2
    boresight_deg: float
    fov_half_angle_deg: float = DEFAULT_FOV_HALF_ANGLE_DEG
    max_range: float = DEFAULT_MAX_RANGE
    bias_curve: Tuple[Tuple[float, float], ...] = DEFAULT_BIAS_TABLE
    stddev_cubic: Tuple[float, float, float, float] = DEFAULT_STDDEV_CUBIC

    def __post_init__(self):
        object.__setattr__(
            self, "bias_curve", tuple((float(d), float(b)) for d, b in self.bias_curve)
        )
        object.__setattr__(self, "stddev_cubic", tuple(float(c) for c in self.stddev_cubic))

        if not math.isfinite(self.boresight_deg):
            raise ConfigurationError(f"sensor {self.id!r}: boresight angle must be finite")
        if not 0.0 < self.fov_half_angle_deg < 90.0:
            raise ConfigurationError(
                f"sensor {self.id!r}: fov_half_angle must be in (0, 90) degrees, "
                f"got {self.fov_half_angle_deg}"
            )
        if not (math.isfinite(self.max_range) and self.max_range > 0.0):
            raise ConfigurationError(f"sensor {self.id!r}: max_range must be > 0, got {self.max_range}")
        if not self.bias_curve:
            raise ConfigurationError(f"sensor {self.id!r}: bias table is empty")
        if not all(math.isfinite(v) for pair in self.bias_curve for v in pair):
            raise ConfigurationError(f"sensor {self.id!r}: bias table values must be finite")
        distances = [d for d, _ in self.bias_curve]
        if any(b <= a for a, b in zip(distances, distances[1:])):
            raise ConfigurationError(f"sensor {self.id!r}: bias table distances must be strictly increasing")
        if len(self.stddev_cubic) != 4:
            raise ConfigurationError(
                f"sensor {self.id!r}: stddev cubic needs 4 coefficients, got {len(self.stddev_cubic)}"
            )
        if not all(math.isfinite(c) for c in self.stddev_cubic):
            raise ConfigurationError(f"sensor {self.id!r}: stddev cubic coefficients must be finite")

        full = 2.0 * self.fov_half_angle_deg
        lo, hi = PROGRAMMABLE_FOV_DEG
        if not lo <= full <= hi:
            logger.warning(
                "sensor %s: declared FoV %.1f deg is outside the programmable %.0f-%.0f deg range",
                self.id, full, lo, hi,
            )

    @cached_property
    def boresight(self) -> Tuple[float, float]:
        rad = math.radians(self.boresight_deg)
        return (math.cos(rad), math.sin(rad))

    @property
    def fov_half_angle(self) -> float:
        return math.radians(self.fov_half_angle_deg)

    @cached_property
    def _bias_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        table = np.array(self.bias_curve, dtype=float)
        return table[:, 0], table[:, 1]

    def bias(self, distance: float) -> float:
        """Bias at `distance`, linear in the table, flat beyond its ends."""
        ds, bs = self._bias_arrays
        return float(np.interp(distance, ds, bs))


def correct_bias(m: SensorModel, raw_range: float) -> float:
    """Remove the tabulated bias, keyed on the measured distance."""
    if not raw_range > 0.0:
        raise DataError(f"sensor {m.id!r}: raw range must be > 0, got {raw_range}")
    return max(raw_range - m.bias(raw_range), MIN_CORRECTED_RANGE)


def evaluate_stddev(coefficients, d: float) -> float:
    """Cubic σ(d) with the SIGMA_MIN floor, without range checks."""
    return max(float(P.polyval(d, coefficients)), SIGMA_MIN)


def stddev_at(m: SensorModel, d: float) -> float:
    """Ranging stddev at distance `d` in (0, max_range]."""
    if not 0.0 < d <= m.max_range:
        raise SensorRangeError(f"sensor {m.id!r}: distance {d} outside (0, {m.max_range}]")
    return evaluate_stddev(m.stddev_cubic, d)


def sensor_estimate(m: SensorModel, raw_range: float) -> Optional[PositionEstimate]:
    """Point on the boresight at the corrected distance, isotropic variance.

    Returns None (no detection) when the corrected range is outside (0, max_range].
    """
    if not raw_range > 0.0:
        return None
    d = correct_bias(m, raw_range)
    if d > m.max_range:
        return None
    bx, by = m.boresight
    var = stddev_at(m, d) ** 2
    return PositionEstimate(Point2(m.position.x + d * bx, m.position.y + d * by), var, var)
