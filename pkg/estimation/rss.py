# estimation/rss.py
"""Log-distance path-loss model and its Jacobian."""

import math

import numpy as np

from core.errors import SingularityError
from core.geometry import Point2
from estimation.models import Anchor

MIN_ANCHOR_DISTANCE = 0.1  # m
_DB_PER_DECADE = 10.0 / math.log(10.0)


def rss_model(pos: Point2, a: Anchor, *, clamp: bool = True) -> float:
    """Expected RSS (dBm): tx_ref_power - 10·n·log10(d / 1 m).

    Distances below MIN_ANCHOR_DISTANCE are clamped to it. With `clamp=False`
    such distances raise SingularityError instead.
    """
    d = pos.distance_to(a.position)
    if d < MIN_ANCHOR_DISTANCE:
        if not clamp:
            raise SingularityError(
                f"position ({pos.x}, {pos.y}) is {d:.3g} m from anchor {a.id!r}"
            )
        d = MIN_ANCHOR_DISTANCE
    return a.tx_ref_power - 10.0 * a.path_loss_exponent * math.log10(d)


def rss_jacobian(pos: Point2, a: Anchor) -> np.ndarray:
    """Gradient of `rss_model` w.r.t. (x, y); zero inside the clamp radius."""
    dx = pos.x - a.position.x
    dy = pos.y - a.position.y
    d_sq = dx * dx + dy * dy
    if d_sq < MIN_ANCHOR_DISTANCE * MIN_ANCHOR_DISTANCE:
        return np.zeros(2)
    k = -a.path_loss_exponent * _DB_PER_DECADE / d_sq
    return np.array([k * dx, k * dy])
