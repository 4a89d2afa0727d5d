# simulator/runner.py
"""Full synthetic run: ground truth plus the time-ordered measurement stream."""

import logging
from dataclasses import dataclass
from typing import List, Optional

from core.measurements import Measurement, MeasurementKind
from core.rng import stream_rng
from proximity.sensor import LIGHT_SURFACE_STDDEV_CUBIC
from simulator.scenario import Scenario, Surface
from simulator.synthesis import simulate_range, simulate_rss
from simulator.trajectory import GroundTruthSample, gen_trajectory

logger = logging.getLogger(__name__)

ANCHOR_STREAM = 0
SENSOR_STREAM = 1


@dataclass(frozen=True)
class ScenarioRun:
    truth: List[GroundTruthSample]
    measurements: List[Measurement]


def run_scenario(sc: Scenario) -> ScenarioRun:
    """Synthesize one run; deterministic given `sc.master_seed`.

    Each anchor and sensor owns an independent noise stream, so adding or
    removing sensors never changes the RSS samples.
    """
    truth = gen_trajectory(sc.walk_path(), sc.walk_speed, sc.tick_rate)

    def rng_for(group: int, index: int):
        return stream_rng(sc.master_seed, (group, index)) if sc.noise else None

    anchor_rngs = [rng_for(ANCHOR_STREAM, i) for i in range(len(sc.anchors))]
    sensor_rngs = [rng_for(SENSOR_STREAM, i) for i in range(len(sc.sensors))]
    noise_cubic: Optional[tuple] = LIGHT_SURFACE_STDDEV_CUBIC if sc.surface is Surface.LIGHT else None

    measurements: List[Measurement] = []
    for sample in truth:
        t, p = sample.timestamp, sample.position
        for a, rng in zip(sc.anchors, anchor_rngs):
            measurements.append(simulate_rss(p, a, rng, t))
        for m, rng in zip(sc.sensors, sensor_rngs):
            sample_range = simulate_range(
                p,
                m,
                sc.fov_mode,
                rng,
                t=t,
                measured_half_angle_deg=sc.measured_half_angle_deg,
                stddev_cubic=noise_cubic,
            )
            if sample_range is not None:
                measurements.append(sample_range)

    measurements.sort(key=lambda m: m.sort_key)
    n_range = sum(1 for m in measurements if m.kind is MeasurementKind.RANGE)
    logger.info(
        "simulated %d ticks: %d measurements (%d ranges), seed=%d",
        len(truth), len(measurements), n_range, sc.master_seed,
    )
    return ScenarioRun(truth, measurements)
