# fusion/hybrid.py
"""Per-tick hybrid pipeline: EKF on RSS, proximity estimates, final weighted average."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from core.errors import DataError, OrderingError, UsageError
from core.measurements import (
    Measurement,
    MeasurementKind,
    PositionEstimate,
    check_time_order,
    group_ticks,
)
from estimation.ekf import FilterInit, ble_estimate, initial_state, predict_to, update
from estimation.models import Anchor, ProcessNoise, StateEstimate
from proximity.combine import combine_sensor_estimates
from proximity.sensor import SensorModel, sensor_estimate

logger = logging.getLogger(__name__)

FEEDBACK_VELOCITY_VAR_BOOST = 0.25  # (m/s)²


class LocalizationMode(str, Enum):
    BLE = "ble"
    HYBRID = "hybrid"


@dataclass(frozen=True)
class Deployment:
    """Infrastructure and filter parameters one tracker runs against."""

    anchors: Mapping[str, Anchor]
    sensors: Mapping[str, SensorModel] = field(default_factory=dict)
    process_noise: ProcessNoise = ProcessNoise()
    init: FilterInit = FilterInit()
    feedback: bool = False

    @classmethod
    def build(cls, anchors: Iterable[Anchor], sensors: Iterable[SensorModel] = (), **kwargs) -> "Deployment":
        return cls({a.id: a for a in anchors}, {s.id: s for s in sensors}, **kwargs)


@dataclass(frozen=True)
class HybridOutput:
    """Everything the pipeline knows about one tick."""

    timestamp: float
    ble_only: PositionEstimate
    proximity: Optional[PositionEstimate]
    fused: PositionEstimate
    detecting_sensor_ids: FrozenSet[str] = frozenset()

    def estimate(self, mode: LocalizationMode) -> PositionEstimate:
        return self.ble_only if mode is LocalizationMode.BLE else self.fused


def fuse(ble: PositionEstimate, prox: Optional[PositionEstimate]) -> PositionEstimate:
    """Final weighted average of the BLE and proximity partial results."""
    if prox is None:
        return ble
    return combine_sensor_estimates([ble, prox])


def _feed_back(s: StateEstimate, fused: PositionEstimate) -> StateEstimate:
    x = s.state.copy()
    x[0], x[1] = fused.position.x, fused.position.y
    P = s.covariance.copy()
    P[:2, :] = 0.0
    P[:, :2] = 0.0
    P[0, 0], P[1, 1] = fused.var_x, fused.var_y
    P[2, 2] += FEEDBACK_VELOCITY_VAR_BOOST
    P[3, 3] += FEEDBACK_VELOCITY_VAR_BOOST
    return StateEstimate(x, P, s.timestamp)


def hybrid_step(
    state: StateEstimate, tick: Sequence[Measurement], deployment: Deployment
) -> Tuple[StateEstimate, HybridOutput]:
    """One tick: predict, RSS update, proximity estimate, fuse."""
    if not tick:
        raise UsageError("hybrid_step needs at least one measurement")
    t = tick[0].timestamp
    if any(m.timestamp != t for m in tick):
        raise OrderingError(f"tick at t={t} mixes timestamps")

    predicted = predict_to(state, t, deployment.process_noise)
    rss = [m for m in tick if m.kind is MeasurementKind.RSS]
    tracked = update(predicted, rss, deployment.anchors)
    ble = ble_estimate(tracked)

    partials: List[PositionEstimate] = []
    detecting = []
    for m in sorted((m for m in tick if m.kind is MeasurementKind.RANGE), key=lambda m: m.source_id):
        sensor = deployment.sensors.get(m.source_id)
        if sensor is None:
            raise DataError(f"unknown sensor id {m.source_id!r}")
        est = sensor_estimate(sensor, m.value)
        if est is not None:
            partials.append(est)
            detecting.append(m.source_id)

    prox = combine_sensor_estimates(partials) if partials else None
    fused = fuse(ble, prox)
    if deployment.feedback and prox is not None:
        tracked = _feed_back(tracked, fused)

    return tracked, HybridOutput(t, ble, prox, fused, frozenset(detecting))


def track(
    measurements: Sequence[Measurement],
    deployment: Deployment,
    mode: LocalizationMode = LocalizationMode.HYBRID,
) -> List[HybridOutput]:
    """Run the hybrid pipeline over a time-ordered stream, one output per tick.

    In BLE mode RANGE samples are ignored entirely.
    """
    check_time_order(measurements)
    if mode is LocalizationMode.BLE:
        measurements = [m for m in measurements if m.kind is MeasurementKind.RSS]
    if not measurements:
        return []

    state = initial_state(list(deployment.anchors.values()), measurements[0].timestamp, deployment.init)
    outputs = []
    for _, tick in group_ticks(measurements):
        state, out = hybrid_step(state, tick, deployment)
        outputs.append(out)

    n_detected = sum(1 for o in outputs if o.proximity is not None)
    logger.info(
        "tracked %d ticks in %s mode (%d with proximity detections)", len(outputs), mode.value, n_detected
    )
    return outputs
