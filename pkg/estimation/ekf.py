# estimation/ekf.py
"""EKF tracker: constant-velocity time update, RSS measurement update."""

import logging
from dataclasses import dataclass
from typing import Collection, Mapping, Sequence

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from core.errors import DataError, OrderingError
from core.geometry import Point2
from core.measurements import Measurement, MeasurementKind, PositionEstimate
from estimation.models import STATE_DIM, Anchor, ProcessNoise, StateEstimate
from estimation.rss import rss_jacobian, rss_model

logger = logging.getLogger(__name__)

DEFAULT_MAX_SKEW = 0.1  # s, one tick at 10 Hz
MIN_VARIANCE = 1e-12


@dataclass(frozen=True)
class FilterInit:
    """Prior used to start a track (diagonal covariance)."""

    position_var: float = 25.0
    velocity_var: float = 1.0


def transition_matrix(dt: float) -> np.ndarray:
    F = np.eye(STATE_DIM)
    F[0, 2] = dt
    F[1, 3] = dt
    return F


def process_noise_matrix(dt: float, q: ProcessNoise) -> np.ndarray:
    """Discretized continuous white-noise-acceleration covariance Q(dt)."""
    Q = np.zeros((STATE_DIM, STATE_DIM))
    pos_pos = dt ** 3 / 3.0
    pos_vel = dt ** 2 / 2.0
    for p, v in ((0, 2), (1, 3)):
        Q[p, p] = pos_pos
        Q[p, v] = Q[v, p] = pos_vel
        Q[v, v] = dt
    return q.accel_psd * Q


def _symmetrize(P: np.ndarray) -> np.ndarray:
    return 0.5 * (P + P.T)


def initial_state(
    anchors: Collection[Anchor], timestamp: float = 0.0, init: FilterInit = FilterInit()
) -> StateEstimate:
    """Start at the anchor centroid with zero velocity and a wide prior."""
    if not anchors:
        raise DataError("cannot initialise a track without anchors")
    xs = [a.position.x for a in anchors]
    ys = [a.position.y for a in anchors]
    state = [float(np.mean(xs)), float(np.mean(ys)), 0.0, 0.0]
    cov = np.diag([init.position_var, init.position_var, init.velocity_var, init.velocity_var])
    return StateEstimate(state, cov, timestamp)


def predict(s: StateEstimate, dt: float, q: ProcessNoise) -> StateEstimate:
    """Time update with uniform linear motion over `dt` seconds."""
    if dt < 0.0:
        raise OrderingError(f"cannot predict backwards in time (dt={dt})")
    if dt == 0.0:
        return s
    F = transition_matrix(dt)
    x = F @ s.state
    P = _symmetrize(F @ s.covariance @ F.T + process_noise_matrix(dt, q))
    return StateEstimate(x, P, s.timestamp + dt)


def predict_to(s: StateEstimate, t: float, q: ProcessNoise) -> StateEstimate:
    """Predict to absolute time `t`; the result is stamped exactly `t`."""
    if t < s.timestamp:
        raise OrderingError(f"tick at t={t} precedes track time t={s.timestamp}")
    p = predict(s, t - s.timestamp, q)
    return p if p.timestamp == t else StateEstimate(p.state, p.covariance, t)


def update(
    s: StateEstimate,
    batch: Sequence[Measurement],
    anchors: Mapping[str, Anchor],
    *,
    max_skew: float = DEFAULT_MAX_SKEW,
) -> StateEstimate:
    """Vector measurement update with every RSS sample of one tick."""
    if not batch:
        return s

    used = []
    for m in batch:
        if m.kind is not MeasurementKind.RSS:
            raise DataError(f"update expects RSS samples, got {m.kind.value} from {m.source_id!r}")
        anchor = anchors.get(m.source_id)
        if anchor is None:
            raise DataError(f"unknown anchor id {m.source_id!r}")
        if abs(m.timestamp - s.timestamp) > max_skew:
            raise OrderingError(
                f"RSS sample at t={m.timestamp} is not within {max_skew} s of state t={s.timestamp}"
            )
        used.append((m, anchor))

    pos = s.position
    z = np.array([m.value for m, _ in used])
    h = np.array([rss_model(pos, a) for _, a in used])
    H = np.zeros((len(used), STATE_DIM))
    H[:, :2] = [rss_jacobian(pos, a) for _, a in used]
    R = np.diag([a.rss_noise_stddev ** 2 for _, a in used])

    P = s.covariance
    S = H @ P @ H.T + R
    # K = P Hᵀ S⁻¹, S is SPD
    K = cho_solve(cho_factor(S), H @ P).T
    innovation = z - h
    x = s.state + K @ innovation

    # Joseph form keeps P symmetric PSD
    I_KH = np.eye(STATE_DIM) - K @ H
    P_new = _symmetrize(I_KH @ P @ I_KH.T + K @ R @ K.T)

    logger.debug(
        "EKF update t=%.3f n=%d |innovation|=%.3f dB", s.timestamp, len(used), float(np.linalg.norm(innovation))
    )
    return StateEstimate(x, P_new, s.timestamp)


def ble_estimate(s: StateEstimate) -> PositionEstimate:
    """Project the track onto a PositionEstimate with diagonal variances."""
    var_x = float(s.covariance[0, 0])
    var_y = float(s.covariance[1, 1])
    return PositionEstimate(
        Point2(float(s.state[0]), float(s.state[1])),
        var_x if var_x > 0.0 else MIN_VARIANCE,
        var_y if var_y > 0.0 else MIN_VARIANCE,
    )
