# simulator/scenario.py
"""Scenario definition and the shipped default room."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple

from core.errors import ConfigurationError
from core.geometry import Point2, Polyline
from estimation.ekf import FilterInit
from estimation.models import Anchor, ProcessNoise
from fusion.hybrid import Deployment
from proximity.sensor import SensorModel

MIN_ANCHORS = 3
MEASURED_HALF_ANGLE_DEG = 6.1  # 27° cone measured ~0.8 m narrower at 3 m

DEFAULT_TX_REF_POWER = -59.0  # dBm @ 1 m
DEFAULT_PATH_LOSS_EXPONENT = 2.0
DEFAULT_RSS_NOISE_STDDEV = 3.0  # dB
DEFAULT_SEED = 424242


class FovMode(str, Enum):
    DECLARED = "declared"
    MEASURED = "measured"


class Surface(str, Enum):
    DARK = "dark"
    LIGHT = "light"


@dataclass(frozen=True)
class Scenario:
    """Everything needed to synthesize a run and to localize it."""

    anchors: Tuple[Anchor, ...]
    sensors: Tuple[SensorModel, ...]
    trajectory: Polyline
    walk_speed: float = 1.0
    tick_rate: float = 10.0
    master_seed: int = DEFAULT_SEED
    accel_psd: float = 0.5
    fov_mode: FovMode = FovMode.DECLARED
    measured_half_angle_deg: float = MEASURED_HALF_ANGLE_DEG
    round_trip: bool = False
    noise: bool = True
    surface: Surface = Surface.DARK
    init: FilterInit = field(default_factory=FilterInit)

    def __post_init__(self):
        object.__setattr__(self, "anchors", tuple(self.anchors))
        object.__setattr__(self, "sensors", tuple(self.sensors))
        if not (math.isfinite(self.tick_rate) and self.tick_rate > 0.0):
            raise ConfigurationError(f"tick_rate must be > 0, got {self.tick_rate}")
        if not (math.isfinite(self.walk_speed) and self.walk_speed > 0.0):
            raise ConfigurationError(f"walk speed must be > 0, got {self.walk_speed}")
        if len(self.anchors) < MIN_ANCHORS:
            raise ConfigurationError(
                f"at least {MIN_ANCHORS} anchors are required, got {len(self.anchors)}"
            )
        if not 0.0 < self.measured_half_angle_deg < 90.0:
            raise ConfigurationError(
                f"measured half-angle must be in (0, 90) degrees, got {self.measured_half_angle_deg}"
            )
        variances = (self.init.position_var, self.init.velocity_var)
        if not all(math.isfinite(v) and v > 0.0 for v in variances):
            raise ConfigurationError(f"initial variances must be finite and > 0, got {variances}")
        ProcessNoise(self.accel_psd)

        ids = [a.id for a in self.anchors] + [s.id for s in self.sensors]
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        if dupes:
            raise ConfigurationError(f"duplicate source ids: {', '.join(dupes)}")
        positions = [a.position for a in self.anchors]
        if len(set(positions)) != len(positions):
            raise ConfigurationError("anchor positions must be pairwise distinct")

    @property
    def anchor_map(self) -> Dict[str, Anchor]:
        return {a.id: a for a in self.anchors}

    @property
    def sensor_map(self) -> Dict[str, SensorModel]:
        return {s.id: s for s in self.sensors}

    def walk_path(self) -> Polyline:
        return self.trajectory.there_and_back() if self.round_trip else self.trajectory

    def deployment(self, *, feedback: bool = False) -> Deployment:
        return Deployment.build(
            self.anchors,
            self.sensors,
            process_noise=ProcessNoise(self.accel_psd),
            init=self.init,
            feedback=feedback,
        )


def default_scenario() -> Scenario:
    """8 m × 6 m room, corner anchors, two sensors on the bottom and right walls.

    The 12 m three-segment walk runs along both sensor boresights so each sensor
    sees about 2.7 m of the path.
    """
    anchors = tuple(
        Anchor(aid, Point2(x, y), DEFAULT_TX_REF_POWER, DEFAULT_PATH_LOSS_EXPONENT, DEFAULT_RSS_NOISE_STDDEV)
        for aid, x, y in (("A1", 0.0, 0.0), ("A2", 8.0, 0.0), ("A3", 8.0, 6.0), ("A4", 0.0, 6.0))
    )
    sensors = (
        SensorModel("S1", Point2(7.2, 0.0), boresight_deg=90.0),
        SensorModel("S2", Point2(8.0, 4.2), boresight_deg=180.0),
    )
    trajectory = Polyline.from_xy([(2.2, 0.8), (7.2, 0.8), (7.2, 4.2), (3.6, 4.2)])
    return Scenario(anchors, sensors, trajectory)
