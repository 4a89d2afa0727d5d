# proximity/combine.py
"""Inverse-variance combination of independent position estimates."""

import math
from typing import Sequence

from core.errors import UsageError
from core.geometry import Point2
from core.measurements import PositionEstimate


def _weighted_axis(values, variances):
    weights = [1.0 / v for v in variances]
    # fsum: independent of input order
    total = math.fsum(weights)
    mean = math.fsum(w * x for w, x in zip(weights, values)) / total
    mean = min(max(mean, min(values)), max(values))
    return mean, 1.0 / total


def combine_sensor_estimates(estimates: Sequence[PositionEstimate]) -> PositionEstimate:
    """Per axis: x = Σ(xᵢ/σᵢ²) / Σ(1/σᵢ²), σ² = 1 / Σ(1/σᵢ²)."""
    if not estimates:
        raise UsageError("cannot combine an empty set of estimates")
    if len(estimates) == 1:
        return estimates[0]

    x, var_x = _weighted_axis([e.position.x for e in estimates], [e.var_x for e in estimates])
    y, var_y = _weighted_axis([e.position.y for e in estimates], [e.var_y for e in estimates])
    return PositionEstimate(Point2(x, y), var_x, var_y)
