"""
Synthetic measurement generation: trajectory sampling, RSS synthesis and ToF
range synthesis with bias, noise, field of view and maximum range.
"""

from simulator.runner import ScenarioRun, run_scenario
from simulator.scenario import FovMode, Scenario, Surface, default_scenario
from simulator.synthesis import (
    cone_width,
    effective_half_angle,
    off_boresight_angle,
    simulate_range,
    simulate_rss,
)
from simulator.trajectory import GroundTruthSample, gen_trajectory

__all__ = [
    "FovMode",
    "GroundTruthSample",
    "Scenario",
    "ScenarioRun",
    "Surface",
    "cone_width",
    "default_scenario",
    "effective_half_angle",
    "gen_trajectory",
    "off_boresight_angle",
    "run_scenario",
    "simulate_range",
    "simulate_rss",
]
