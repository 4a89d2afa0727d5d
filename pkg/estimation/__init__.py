"""
BLE-only tracking: log-distance RSS model and an extended Kalman filter over a
constant-velocity (white-noise acceleration) motion model.
"""

from estimation.ekf import (
    FilterInit,
    ble_estimate,
    initial_state,
    predict,
    predict_to,
    process_noise_matrix,
    transition_matrix,
    update,
)
from estimation.models import Anchor, ProcessNoise, StateEstimate
from estimation.rss import MIN_ANCHOR_DISTANCE, rss_jacobian, rss_model

__all__ = [
    "Anchor",
    "FilterInit",
    "MIN_ANCHOR_DISTANCE",
    "ProcessNoise",
    "StateEstimate",
    "ble_estimate",
    "initial_state",
    "predict",
    "predict_to",
    "process_noise_matrix",
    "rss_jacobian",
    "rss_model",
    "transition_matrix",
    "update",
]
