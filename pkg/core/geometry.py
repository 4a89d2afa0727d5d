# core/geometry.py
"""Planar geometry: points, polylines and point-to-polyline distance."""

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Tuple

import numpy as np

from core.errors import ConfigurationError, DataError


@dataclass(frozen=True)
class Point2:
    """A point in the floor plane, meters."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DataError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    @classmethod
    def of(cls, xy: Sequence[float]) -> "Point2":
        return cls(float(xy[0]), float(xy[1]))


@dataclass(frozen=True)
class Polyline:
    """Ordered vertices; consecutive vertices must be distinct."""

    vertices: Tuple[Point2, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 2:
            raise ConfigurationError(
                f"polyline needs at least 2 vertices, got {len(self.vertices)}"
            )
        for i, (a, b) in enumerate(zip(self.vertices, self.vertices[1:])):
            if a == b:
                raise ConfigurationError(f"polyline vertices {i} and {i + 1} coincide at ({a.x}, {a.y})")

    @classmethod
    def from_xy(cls, points: Iterable[Sequence[float]]) -> "Polyline":
        return cls(tuple(Point2.of(p) for p in points))

    @cached_property
    def _array(self) -> np.ndarray:
        return np.array([[v.x, v.y] for v in self.vertices], dtype=float)

    @cached_property
    def cumulative_lengths(self) -> np.ndarray:
        """Arc length at each vertex, starting at 0."""
        seg = np.hypot(*np.diff(self._array, axis=0).T)
        return np.concatenate([[0.0], np.cumsum(seg)])

    @property
    def length(self) -> float:
        return float(self.cumulative_lengths[-1])

    def point_at(self, s: float) -> Point2:
        """Point at arc length `s`, clamped to the ends."""
        cum = self.cumulative_lengths
        if s <= 0.0:
            return self.vertices[0]
        if s >= cum[-1]:
            return self.vertices[-1]
        i = int(np.searchsorted(cum, s, side="right")) - 1
        a, b = self._array[i], self._array[i + 1]
        t = (s - cum[i]) / (cum[i + 1] - cum[i])
        p = a + t * (b - a)
        return Point2(float(p[0]), float(p[1]))

    def reversed(self) -> "Polyline":
        return Polyline(tuple(reversed(self.vertices)))

    def there_and_back(self) -> "Polyline":
        """Walk the vertices forward, then back to the start."""
        return Polyline(self.vertices + tuple(reversed(self.vertices[:-1])))


def distances_to_polyline(points: np.ndarray, line: Polyline) -> np.ndarray:
    """Vectorized distance from each row of an (n, 2) array to `line`."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    a = line._array[:-1]  # (m, 2)
    ab = line._array[1:] - a
    ab_sq = np.einsum("ij,ij->i", ab, ab)

    ap = pts[:, None, :] - a[None, :, :]  # (n, m, 2)
    t = np.clip(np.einsum("nmj,mj->nm", ap, ab) / ab_sq, 0.0, 1.0)
    foot = a[None, :, :] + t[..., None] * ab[None, :, :]
    d = np.hypot(pts[:, None, 0] - foot[..., 0], pts[:, None, 1] - foot[..., 1])
    return d.min(axis=1)


def distance_to_polyline(p: Point2, line: Polyline) -> float:
    """Minimum Euclidean distance from `p` to any segment of `line`."""
    if not isinstance(line, Polyline):
        line = Polyline(tuple(line))
    return float(distances_to_polyline(np.array([[p.x, p.y]]), line)[0])
