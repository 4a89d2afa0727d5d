# storage/scenario_file.py
"""
YAML scenario file: parsing, validation and serialization.

One file drives both simulation and localization:

    format_version: 1
    path_loss: {tx_ref_power: -59.0, exponent: 2.0, rss_noise_stddev: 3.0}
    anchors:
      - {id: A1, x: 0.0, y: 0.0}
    sensors:
      - {id: S1, x: 7.2, y: 0.0, boresight_deg: 90.0}
    trajectory: {waypoints: [[2.2, 0.8], [7.2, 0.8]], speed: 1.0}
    sim: {tick_rate: 10.0, seed: 424242, fov_mode: declared}
    filter: {accel_psd: 0.5, init: {position_var: 25.0, velocity_var: 1.0}}

Units: meters, degrees, dBm, Hz. Validation errors are anchored to the YAML
line of the offending node.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from core.errors import ConfigurationError, HylocError
from core.geometry import Point2, Polyline
from estimation.ekf import FilterInit
from estimation.models import Anchor
from proximity.sensor import (
    DEFAULT_BIAS_TABLE,
    DEFAULT_FOV_HALF_ANGLE_DEG,
    DEFAULT_MAX_RANGE,
    DEFAULT_STDDEV_CUBIC,
    SensorModel,
)
from simulator.scenario import (
    DEFAULT_PATH_LOSS_EXPONENT,
    DEFAULT_RSS_NOISE_STDDEV,
    DEFAULT_SEED,
    DEFAULT_TX_REF_POWER,
    MEASURED_HALF_ANGLE_DEG,
    FovMode,
    Scenario,
    Surface,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

NodePath = Tuple[Union[str, int], ...]


# ---------------------------------------------------------------------------
# Document schema
# ---------------------------------------------------------------------------
class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class PathLossDoc(_Section):
    tx_ref_power: float = DEFAULT_TX_REF_POWER
    exponent: float = DEFAULT_PATH_LOSS_EXPONENT
    rss_noise_stddev: float = DEFAULT_RSS_NOISE_STDDEV


class AnchorDoc(_Section):
    id: str
    x: float
    y: float
    # per-anchor overrides of path_loss
    tx_ref_power: Optional[float] = None
    path_loss_exponent: Optional[float] = None
    rss_noise_stddev: Optional[float] = None


class SensorDoc(_Section):
    id: str
    x: float
    y: float
    boresight_deg: float
    fov_half_angle_deg: float = DEFAULT_FOV_HALF_ANGLE_DEG
    max_range: float = DEFAULT_MAX_RANGE
    bias_table: List[Tuple[float, float]] = Field(default_factory=lambda: list(DEFAULT_BIAS_TABLE))
    stddev_cubic: Tuple[float, float, float, float] = DEFAULT_STDDEV_CUBIC


class TrajectoryDoc(_Section):
    waypoints: List[Tuple[float, float]]
    speed: float = 1.0
    round_trip: bool = False


class SimDoc(_Section):
    tick_rate: float = 10.0
    seed: int = DEFAULT_SEED
    fov_mode: FovMode = FovMode.DECLARED
    measured_half_angle_deg: float = MEASURED_HALF_ANGLE_DEG
    noise: bool = True
    surface: Surface = Surface.DARK


class InitDoc(_Section):
    position_var: float = FilterInit.position_var
    velocity_var: float = FilterInit.velocity_var


class FilterDoc(_Section):
    accel_psd: float = 0.5
    init: InitDoc = Field(default_factory=InitDoc)


class ScenarioDoc(_Section):
    format_version: Literal[1] = FORMAT_VERSION
    path_loss: PathLossDoc = Field(default_factory=PathLossDoc)
    anchors: List[AnchorDoc]
    sensors: List[SensorDoc] = Field(default_factory=list)
    trajectory: TrajectoryDoc
    sim: SimDoc = Field(default_factory=SimDoc)
    filter: FilterDoc = Field(default_factory=FilterDoc)


# ---------------------------------------------------------------------------
# YAML line index
# ---------------------------------------------------------------------------
def _line_index(node: yaml.Node, path: NodePath = (), index: Optional[Dict[NodePath, int]] = None):
    """Map every node path (keys and sequence indices) to its 1-based line."""
    if index is None:
        index = {}
    index[path] = node.start_mark.line + 1
    if isinstance(node, yaml.MappingNode):
        for key, value in node.value:
            child = path + (key.value,)
            _line_index(value, child, index)
            index[child] = key.start_mark.line + 1
    elif isinstance(node, yaml.SequenceNode):
        for i, item in enumerate(node.value):
            _line_index(item, path + (i,), index)
    return index


def _line_of(index: Dict[NodePath, int], loc: NodePath) -> int:
    for end in range(len(loc), -1, -1):
        if loc[:end] in index:
            return index[loc[:end]]
    return 1


def _dotted(loc: NodePath) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


def _validation_error(exc: ValidationError, index: Dict[NodePath, int], source: str) -> ConfigurationError:
    err = exc.errors()[0]
    loc = tuple(err["loc"])
    if err["type"] == "missing":
        kind = "section" if len(loc) == 1 else "field"
        message = f"missing {kind}: {_dotted(loc)}"
        line = _line_of(index, loc[:-1])
    else:
        message = f"{_dotted(loc)}: {err['msg']}"
        line = _line_of(index, loc)
    return ConfigurationError(message, source=source, line=line)


# ---------------------------------------------------------------------------
# Parse
# ---------------------------------------------------------------------------
def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line = mark.line + 1 if mark is not None else None
        raise ConfigurationError(f"invalid YAML: {getattr(e, 'problem', e)}", source=source, line=line) from e

    if root is None:
        raise ConfigurationError("scenario file is empty", source=source, line=1)
    if not isinstance(data, dict):
        raise ConfigurationError("scenario must be a mapping of sections", source=source, line=1)

    index = _line_index(root)
    try:
        doc = ScenarioDoc.model_validate(data)
    except ValidationError as e:
        raise _validation_error(e, index, source) from None

    return _build(doc, index, source)


def _anchored(index: Dict[NodePath, int], source: str, loc: NodePath, build):
    try:
        return build()
    except HylocError as e:
        raise e.at(source, _line_of(index, loc)) from None


def _build(doc: ScenarioDoc, index: Dict[NodePath, int], source: str) -> Scenario:
    pl = doc.path_loss
    anchors = [
        _anchored(index, source, ("anchors", i), lambda a=a: Anchor(
            a.id,
            Point2(a.x, a.y),
            pl.tx_ref_power if a.tx_ref_power is None else a.tx_ref_power,
            pl.exponent if a.path_loss_exponent is None else a.path_loss_exponent,
            pl.rss_noise_stddev if a.rss_noise_stddev is None else a.rss_noise_stddev,
        ))
        for i, a in enumerate(doc.anchors)
    ]
    sensors = [
        _anchored(index, source, ("sensors", i), lambda s=s: SensorModel(
            s.id,
            Point2(s.x, s.y),
            boresight_deg=s.boresight_deg,
            fov_half_angle_deg=s.fov_half_angle_deg,
            max_range=s.max_range,
            bias_curve=tuple(s.bias_table),
            stddev_cubic=tuple(s.stddev_cubic),
        ))
        for i, s in enumerate(doc.sensors)
    ]
    trajectory = _anchored(
        index, source, ("trajectory", "waypoints"), lambda: Polyline.from_xy(doc.trajectory.waypoints)
    )

    def scenario() -> Scenario:
        return Scenario(
            anchors=tuple(anchors),
            sensors=tuple(sensors),
            trajectory=trajectory,
            walk_speed=doc.trajectory.speed,
            tick_rate=doc.sim.tick_rate,
            master_seed=doc.sim.seed,
            accel_psd=doc.filter.accel_psd,
            fov_mode=doc.sim.fov_mode,
            measured_half_angle_deg=doc.sim.measured_half_angle_deg,
            round_trip=doc.trajectory.round_trip,
            noise=doc.sim.noise,
            surface=doc.sim.surface,
            init=FilterInit(doc.filter.init.position_var, doc.filter.init.velocity_var),
        )

    return _anchored(index, source, (), scenario)


def load_scenario(path: Union[str, Path]) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigurationError(f"cannot read scenario: {e.strerror}", source=str(path)) from e
    scenario = parse_scenario(text, source=str(path))
    logger.info(
        "loaded scenario %s (%d anchors, %d sensors)", path, len(scenario.anchors), len(scenario.sensors)
    )
    return scenario


# ---------------------------------------------------------------------------
# Serialize
# ---------------------------------------------------------------------------
def scenario_to_dict(scenario: Scenario) -> Dict[str, Any]:
    """Plain-data form of `scenario`; parse_scenario(dump_scenario(s)) == s."""
    first = scenario.anchors[0]
    path_loss = {
        "tx_ref_power": first.tx_ref_power,
        "exponent": first.path_loss_exponent,
        "rss_noise_stddev": first.rss_noise_stddev,
    }

    anchors = []
    for a in scenario.anchors:
        entry: Dict[str, Any] = {"id": a.id, "x": a.position.x, "y": a.position.y}
        if a.tx_ref_power != first.tx_ref_power:
            entry["tx_ref_power"] = a.tx_ref_power
        if a.path_loss_exponent != first.path_loss_exponent:
            entry["path_loss_exponent"] = a.path_loss_exponent
        if a.rss_noise_stddev != first.rss_noise_stddev:
            entry["rss_noise_stddev"] = a.rss_noise_stddev
        anchors.append(entry)

    sensors = [
        {
            "id": s.id,
            "x": s.position.x,
            "y": s.position.y,
            "boresight_deg": s.boresight_deg,
            "fov_half_angle_deg": s.fov_half_angle_deg,
            "max_range": s.max_range,
            "bias_table": [[d, b] for d, b in s.bias_curve],
            "stddev_cubic": list(s.stddev_cubic),
        }
        for s in scenario.sensors
    ]

    return {
        "format_version": FORMAT_VERSION,
        "path_loss": path_loss,
        "anchors": anchors,
        "sensors": sensors,
        "trajectory": {
            "waypoints": [[v.x, v.y] for v in scenario.trajectory.vertices],
            "speed": scenario.walk_speed,
            "round_trip": scenario.round_trip,
        },
        "sim": {
            "tick_rate": scenario.tick_rate,
            "seed": scenario.master_seed,
            "fov_mode": scenario.fov_mode.value,
            "measured_half_angle_deg": scenario.measured_half_angle_deg,
            "noise": scenario.noise,
            "surface": scenario.surface.value,
        },
        "filter": {
            "accel_psd": scenario.accel_psd,
            "init": {
                "position_var": scenario.init.position_var,
                "velocity_var": scenario.init.velocity_var,
            },
        },
    }


def dump_scenario(scenario: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(scenario), sort_keys=False, default_flow_style=None)


def save_scenario(scenario: Scenario, path: Union[str, Path]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dump_scenario(scenario))
    return path
