# estimation/models.py
"""Filter state and BLE infrastructure parameters."""

import math
from dataclasses import dataclass

import numpy as np

from core.errors import ConfigurationError, DataError
from core.geometry import Point2

STATE_DIM = 4  # [x, y, vx, vy]
SYMMETRY_TOL = 1e-9
PSD_FLOOR = -1e-9


@dataclass(frozen=True)
class Anchor:
    """Fixed BLE node with its log-distance path-loss parameters."""

    id: str
    position: Point2
    tx_ref_power: float  # dBm at 1 m
    path_loss_exponent: float
    rss_noise_stddev: float  # dB

    def __post_init__(self):
        if not math.isfinite(self.tx_ref_power):
            raise ConfigurationError(f"anchor {self.id!r}: tx_ref_power must be finite, got {self.tx_ref_power}")
        if not (math.isfinite(self.path_loss_exponent) and self.path_loss_exponent > 0.0):
            raise ConfigurationError(
                f"anchor {self.id!r}: path_loss_exponent must be finite and > 0, got {self.path_loss_exponent}"
            )
        if not (math.isfinite(self.rss_noise_stddev) and self.rss_noise_stddev > 0.0):
            raise ConfigurationError(
                f"anchor {self.id!r}: rss_noise_stddev must be finite and > 0, got {self.rss_noise_stddev}"
            )


@dataclass(frozen=True)
class ProcessNoise:
    """White-noise acceleration PSD, (m/s²)²."""

    accel_psd: float = 0.5

    def __post_init__(self):
        if not (math.isfinite(self.accel_psd) and self.accel_psd > 0.0):
            raise ConfigurationError(f"accel_psd must be > 0, got {self.accel_psd}")


@dataclass(frozen=True, eq=False)
class StateEstimate:
    """EKF state [x, y, vx, vy] with its 4×4 covariance at `timestamp`.

    Arrays are copied and made read-only so instances behave as values.
    """

    state: np.ndarray
    covariance: np.ndarray
    timestamp: float

    def __post_init__(self):
        x = np.array(self.state, dtype=float).reshape(STATE_DIM)
        P = np.array(self.covariance, dtype=float).reshape(STATE_DIM, STATE_DIM)
        if not (np.all(np.isfinite(x)) and np.all(np.isfinite(P))):
            raise DataError("state estimate contains non-finite values")
        x.setflags(write=False)
        P.setflags(write=False)
        object.__setattr__(self, "state", x)
        object.__setattr__(self, "covariance", P)

    @property
    def position(self) -> Point2:
        return Point2(float(self.state[0]), float(self.state[1]))

    @property
    def velocity(self) -> np.ndarray:
        return self.state[2:].copy()

    def is_consistent(self) -> bool:
        """Covariance symmetric and PSD within tolerance."""
        P = self.covariance
        if np.max(np.abs(P - P.T)) > SYMMETRY_TOL:
            return False
        return bool(np.min(np.linalg.eigvalsh(P)) >= PSD_FLOOR)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StateEstimate):
            return NotImplemented
        return (
            self.timestamp == other.timestamp
            and np.array_equal(self.state, other.state)
            and np.array_equal(self.covariance, other.covariance)
        )

    __hash__ = None
