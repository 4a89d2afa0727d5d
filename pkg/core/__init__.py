"""
Shared types for hyloc: geometry, measurements, deterministic RNG and errors.
"""

from core.errors import (
    ConfigurationError,
    DataError,
    FitError,
    HylocError,
    OrderingError,
    SensorRangeError,
    SingularityError,
    UsageError,
)
from core.geometry import Point2, Polyline, distance_to_polyline, distances_to_polyline
from core.measurements import Measurement, MeasurementKind, PositionEstimate
from core.rng import derive_seed, seeded_rng, stream_rng

__all__ = [
    "ConfigurationError",
    "DataError",
    "FitError",
    "HylocError",
    "OrderingError",
    "SensorRangeError",
    "SingularityError",
    "UsageError",
    "Point2",
    "Polyline",
    "distance_to_polyline",
    "distances_to_polyline",
    "Measurement",
    "MeasurementKind",
    "PositionEstimate",
    "derive_seed",
    "seeded_rng",
    "stream_rng",
]
