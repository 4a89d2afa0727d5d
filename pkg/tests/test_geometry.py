# tests/test_geometry.py

import math

import numpy as np
import pytest

from core.errors import ConfigurationError, DataError
from core.geometry import Point2, Polyline, distance_to_polyline, distances_to_polyline


def dense_oracle(p, line: Polyline, step: float = 1e-3) -> float:
    best = math.inf
    for a, b in zip(line.vertices, line.vertices[1:]):
        n = max(2, int(math.ceil(a.distance_to(b) / step)) + 1)
        t = np.linspace(0.0, 1.0, n)
        xs = a.x + t * (b.x - a.x)
        ys = a.y + t * (b.y - a.y)
        best = min(best, float(np.min(np.hypot(xs - p.x, ys - p.y))))
    return best


@pytest.mark.parametrize(
    "p, expected",
    [
        (Point2(1.0, 0.0), 0.0),
        (Point2(1.0, 1.0), 1.0),
        (Point2(3.0, 1.0), math.sqrt(2.0)),
    ],
)
def test_distance_to_segment_examples(p, expected):
    line = Polyline.from_xy([(0.0, 0.0), (2.0, 0.0)])
    assert distance_to_polyline(p, line) == pytest.approx(expected, abs=1e-12)


def test_sqrt2_example_matches_fine_sampling():
    line = Polyline.from_xy([(0.0, 0.0), (2.0, 0.0)])
    p = Point2(3.0, 1.0)
    assert distance_to_polyline(p, line) == pytest.approx(dense_oracle(p, line, step=1e-4), abs=1e-4)


def test_polyline_needs_two_distinct_vertices():
    with pytest.raises(ConfigurationError):
        Polyline((Point2(0.0, 0.0),))
    with pytest.raises(ConfigurationError):
        Polyline.from_xy([(0.0, 0.0), (1.0, 1.0), (1.0, 1.0)])


def test_point_rejects_non_finite():
    with pytest.raises(DataError):
        Point2(float("nan"), 0.0)
    with pytest.raises(DataError):
        Point2(0.0, float("inf"))


def test_distance_matches_dense_sampling_on_random_inputs():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n_vertices = int(rng.integers(2, 5))
        line = Polyline.from_xy(rng.uniform(-5.0, 5.0, size=(n_vertices, 2)))
        p = Point2(*rng.uniform(-6.0, 6.0, size=2))
        assert distance_to_polyline(p, line) == pytest.approx(dense_oracle(p, line), abs=1e-3)


def test_distance_invariant_under_rigid_motion():
    rng = np.random.default_rng(11)
    for _ in range(200):
        pts = rng.uniform(-5.0, 5.0, size=(4, 2))
        p = rng.uniform(-5.0, 5.0, size=2)
        theta = rng.uniform(0.0, 2.0 * math.pi)
        R = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
        shift = rng.uniform(-10.0, 10.0, size=2)

        before = distance_to_polyline(Point2(*p), Polyline.from_xy(pts))
        after = distance_to_polyline(Point2(*(R @ p + shift)), Polyline.from_xy(pts @ R.T + shift))
        assert after == pytest.approx(before, abs=1e-9)


def test_vectorized_distances_agree_with_scalar():
    line = Polyline.from_xy([(0.0, 0.0), (4.0, 0.0), (4.0, 3.0)])
    pts = np.array([[1.0, 1.0], [5.0, 1.0], [4.0, 4.0], [2.0, -2.0]])
    expected = [distance_to_polyline(Point2(*p), line) for p in pts]
    np.testing.assert_allclose(distances_to_polyline(pts, line), expected, atol=1e-12)
    np.testing.assert_allclose(expected, [1.0, 1.0, 1.0, 2.0], atol=1e-12)


def test_point_at_walks_arc_length():
    line = Polyline.from_xy([(0.0, 0.0), (3.0, 0.0), (3.0, 4.0)])
    assert line.length == pytest.approx(7.0)
    assert line.point_at(-1.0) == Point2(0.0, 0.0)
    assert line.point_at(99.0) == Point2(3.0, 4.0)
    p = line.point_at(5.0)
    assert (p.x, p.y) == pytest.approx((3.0, 2.0))


def test_there_and_back_returns_to_start():
    line = Polyline.from_xy([(0.0, 0.0), (2.0, 0.0), (2.0, 1.0)])
    loop = line.there_and_back()
    assert loop.vertices[0] == loop.vertices[-1]
    assert loop.length == pytest.approx(2.0 * line.length)
    assert line.reversed().vertices == tuple(reversed(line.vertices))
