# tests/test_simulator.py

import math
from dataclasses import replace

import numpy as np
import pytest

from core.errors import ConfigurationError
from core.geometry import Point2, Polyline, distance_to_polyline
from core.measurements import MeasurementKind
from core.rng import seeded_rng
from estimation.models import Anchor
from estimation.rss import rss_model
from proximity.sensor import SensorModel, correct_bias
from simulator.runner import run_scenario
from simulator.scenario import FovMode, Scenario, Surface, default_scenario
from simulator.synthesis import (
    cone_width,
    effective_half_angle,
    off_boresight_angle,
    simulate_range,
    simulate_rss,
)
from simulator.trajectory import gen_trajectory

SENSOR = SensorModel("S", Point2(0.0, 0.0), boresight_deg=0.0)


# --- trajectory -------------------------------------------------------------

def test_straight_walk_sampling():
    samples = gen_trajectory(Polyline.from_xy([(0.0, 0.0), (4.0, 0.0)]), 1.0, 10.0)
    assert len(samples) == 41
    for k, s in enumerate(samples):
        assert s.timestamp == k / 10.0
        assert (s.position.x, s.position.y) == pytest.approx((0.1 * k, 0.0))


def test_default_walk_has_121_samples_on_the_path(scenario):
    samples = gen_trajectory(scenario.trajectory, scenario.walk_speed, scenario.tick_rate)
    assert scenario.trajectory.length == pytest.approx(12.0)
    assert len(samples) == 121
    for s in samples:
        assert distance_to_polyline(s.position, scenario.trajectory) < 1e-9
    assert all(b.timestamp > a.timestamp for a, b in zip(samples, samples[1:]))


def test_round_trip_walk_doubles_the_samples(scenario):
    sc = replace(scenario, round_trip=True)
    truth = run_scenario(replace(sc, noise=False)).truth
    assert len(truth) == 241
    assert truth[-1].position.distance_to(scenario.trajectory.vertices[0]) < 1e-9


# --- RSS synthesis ----------------------------------------------------------

def test_simulate_rss_without_noise_is_the_model():
    a = Anchor("A", Point2(0.0, 0.0), -59.0, 2.0, 3.0)
    m = simulate_rss(Point2(2.0, 1.0), a, None, 0.3)
    assert m.kind is MeasurementKind.RSS
    assert m.value == rss_model(Point2(2.0, 1.0), a)
    assert m.timestamp == 0.3


def test_simulate_rss_noise_level():
    a = Anchor("A", Point2(0.0, 0.0), -59.0, 2.0, 3.0)
    rng = seeded_rng(17)
    values = np.array([simulate_rss(Point2(2.0, 1.0), a, rng).value for _ in range(10_000)])
    assert 2.7 <= values.std() <= 3.3


# --- range synthesis --------------------------------------------------------

def test_no_return_beyond_max_range():
    assert simulate_range(Point2(4.0, 0.0), SENSOR, FovMode.DECLARED, None) is None


def test_no_return_outside_cone():
    angle = math.radians(20.0)
    truth = Point2(2.0 * math.cos(angle), 2.0 * math.sin(angle))
    assert simulate_range(truth, SENSOR, FovMode.DECLARED, None) is None


def test_noise_free_return_near_sensor():
    m = simulate_range(Point2(1.0, 0.0), SENSOR, FovMode.DECLARED, None, t=1.5)
    assert m.kind is MeasurementKind.RANGE
    assert m.value == 1.0 + SENSOR.bias(1.0)
    assert m.value <= 1.03
    assert m.timestamp == 1.5


def test_bias_round_trip_residual():
    for d in np.linspace(0.5, 3.0, 26):
        raw = simulate_range(Point2(float(d), 0.0), SENSOR, FovMode.DECLARED, None).value
        assert abs(correct_bias(SENSOR, raw) - d) < 0.05


def test_cone_widths_at_three_meters():
    measured = cone_width(effective_half_angle(SENSOR, FovMode.MEASURED), 3.0)
    declared = cone_width(effective_half_angle(SENSOR, FovMode.DECLARED), 3.0)
    assert measured == pytest.approx(0.64, abs=0.02)
    assert declared == pytest.approx(1.44, abs=0.02)
    assert declared - measured == pytest.approx(0.8, abs=0.02)


def test_measured_detections_are_a_subset_of_declared():
    rng = seeded_rng(4)
    for _ in range(2000):
        truth = Point2(*rng.uniform(-1.0, 4.0, size=2))
        measured = simulate_range(truth, SENSOR, FovMode.MEASURED, None)
        declared = simulate_range(truth, SENSOR, FovMode.DECLARED, None)
        if measured is not None:
            assert declared is not None


def test_wider_cone_never_loses_detections():
    rng = seeded_rng(8)
    points = [Point2(*rng.uniform(0.0, 3.5, size=2)) for _ in range(500)]
    previous = set()
    for half in (3.0, 6.0, 9.0, 13.5, 20.0, 40.0):
        m = SensorModel("S", Point2(0.0, 0.0), boresight_deg=30.0, fov_half_angle_deg=half)
        detected = {i for i, p in enumerate(points) if simulate_range(p, m, FovMode.DECLARED, None)}
        assert previous <= detected
        previous = detected


def test_off_boresight_angle():
    m = SensorModel("S", Point2(1.0, 1.0), boresight_deg=90.0)
    assert off_boresight_angle(Point2(1.0, 3.0), m) == pytest.approx(0.0, abs=1e-12)
    assert off_boresight_angle(Point2(2.0, 2.0), m) == pytest.approx(math.pi / 4)


# --- full runs --------------------------------------------------------------

def test_default_run_counts(scenario):
    run = run_scenario(scenario)
    rss = [m for m in run.measurements if m.kind is MeasurementKind.RSS]
    ranges = [m for m in run.measurements if m.kind is MeasurementKind.RANGE]
    assert len(run.truth) == 121
    assert len(rss) == 484
    assert len(ranges) > 0
    assert [m.sort_key for m in run.measurements] == sorted(m.sort_key for m in run.measurements)
    for sample in run.truth:
        assert sum(1 for m in rss if m.timestamp == sample.timestamp) == 4


def test_run_is_deterministic(scenario):
    assert run_scenario(scenario) == run_scenario(scenario)
    other = run_scenario(replace(scenario, master_seed=scenario.master_seed + 1))
    assert other.measurements != run_scenario(scenario).measurements


def test_sensor_far_from_path_never_fires(scenario):
    far = SensorModel("S9", Point2(0.0, 5.9), boresight_deg=180.0)
    run = run_scenario(replace(scenario, sensors=(far,)))
    assert not any(m.kind is MeasurementKind.RANGE for m in run.measurements)


def test_noise_free_ranges_are_true_distance_plus_bias(scenario):
    run = run_scenario(replace(scenario, noise=False))
    truth = {s.timestamp: s.position for s in run.truth}
    sensors = scenario.sensor_map
    for m in run.measurements:
        if m.kind is MeasurementKind.RANGE:
            d = truth[m.timestamp].distance_to(sensors[m.source_id].position)
            assert m.value == d + sensors[m.source_id].bias(d)


def test_surface_changes_range_noise_only(scenario):
    dark = run_scenario(scenario).measurements
    light = run_scenario(replace(scenario, surface=Surface.LIGHT)).measurements
    assert [m for m in dark if m.kind is MeasurementKind.RSS] == [m for m in light if m.kind is MeasurementKind.RSS]
    assert [m for m in dark if m.kind is MeasurementKind.RANGE] != [m for m in light if m.kind is MeasurementKind.RANGE]


def test_scenario_validation(scenario):
    with pytest.raises(ConfigurationError):
        replace(scenario, anchors=scenario.anchors[:2])
    with pytest.raises(ConfigurationError):
        replace(scenario, tick_rate=0.0)
    with pytest.raises(ConfigurationError):
        replace(scenario, sensors=(SensorModel("A1", Point2(1.0, 1.0), 0.0),))
    dup = replace(scenario.anchors[1], id="A9", position=scenario.anchors[0].position)
    with pytest.raises(ConfigurationError):
        replace(scenario, anchors=scenario.anchors + (dup,))


def test_default_scenario_geometry():
    sc = default_scenario()
    assert isinstance(sc, Scenario)
    assert [a.id for a in sc.anchors] == ["A1", "A2", "A3", "A4"]
    assert sc.fov_mode is FovMode.DECLARED
