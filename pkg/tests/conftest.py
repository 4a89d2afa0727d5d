# tests/conftest.py

from pathlib import Path

import pytest

from core.geometry import Point2
from estimation.models import Anchor
from proximity.sensor import SensorModel
from simulator.scenario import default_scenario

REPO_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_SCENARIO_PATH = REPO_ROOT / "scenarios" / "default.yaml"

ZERO_BIAS = ((0.0, 0.0), (3.5, 0.0))


def square_anchors(side: float = 6.0, noise: float = 3.0):
    corners = ((0.0, 0.0), (side, 0.0), (side, side), (0.0, side))
    return [Anchor(f"A{i + 1}", Point2(x, y), -59.0, 2.0, noise) for i, (x, y) in enumerate(corners)]


def unbiased_sensor(sid: str, x: float, y: float, boresight_deg: float, **kwargs) -> SensorModel:
    return SensorModel(sid, Point2(x, y), boresight_deg=boresight_deg, bias_curve=ZERO_BIAS, **kwargs)


@pytest.fixture
def anchors():
    return square_anchors()


@pytest.fixture
def scenario():
    return default_scenario()
