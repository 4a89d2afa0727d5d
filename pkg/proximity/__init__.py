"""
Proximity-sensor localization: bias correction, ranging stddev model,
boresight point estimates and their inverse-variance combination.
"""

from proximity.calibration import CubicFit, fit_bias_table, fit_stddev_cubic
from proximity.combine import combine_sensor_estimates
from proximity.sensor import (
    DEFAULT_BIAS_TABLE,
    DEFAULT_STDDEV_CUBIC,
    LIGHT_SURFACE_STDDEV_CUBIC,
    SIGMA_MIN,
    SensorModel,
    correct_bias,
    evaluate_stddev,
    sensor_estimate,
    stddev_at,
)

__all__ = [
    "CubicFit",
    "DEFAULT_BIAS_TABLE",
    "DEFAULT_STDDEV_CUBIC",
    "LIGHT_SURFACE_STDDEV_CUBIC",
    "SIGMA_MIN",
    "SensorModel",
    "combine_sensor_estimates",
    "correct_bias",
    "evaluate_stddev",
    "fit_bias_table",
    "fit_stddev_cubic",
    "sensor_estimate",
    "stddev_at",
]
