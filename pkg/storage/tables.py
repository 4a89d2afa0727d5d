# storage/tables.py
"""
Header-bearing CSV tables: measurement logs, ground truth, per-tick estimates,
CDF tables and calibration input.

All files are UTF-8, comma-separated, LF line endings. Floats are written with
repr() so reading a file back yields bit-identical values.
"""

import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import pandas as pd

from core.errors import DataError, OrderingError
from core.geometry import Point2
from core.measurements import Measurement, MeasurementKind, PositionEstimate
from simulator.trajectory import GroundTruthSample

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

LOG_COLUMNS = ("timestamp_s", "source_id", "kind", "value", "unit")
TRUTH_COLUMNS = ("timestamp_s", "x_m", "y_m")
ESTIMATE_COLUMNS = ("timestamp_s", "mode", "x_m", "y_m", "var_x_m2", "var_y_m2", "detecting_sensor_ids")
CDF_COLUMNS = ("error_m", "cdf")
STDDEV_COLUMNS = ("distance_m", "stddev_m")
BIAS_COLUMNS = ("distance_m", "bias_m")

ID_SEPARATOR = ";"

_PARSER_LINE = re.compile(r"line (\d+)")


def _num(value: float) -> str:
    return repr(float(value))


# ---------------------------------------------------------------------------
# Generic read / write
# ---------------------------------------------------------------------------
def _write_table(path: PathLike, columns: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    path = Path(path)
    df = pd.DataFrame(list(rows), columns=list(columns), dtype=str)
    with open(path, "w", encoding="utf-8", newline="") as f:
        df.to_csv(f, index=False, lineterminator="\n")
    logger.debug("wrote %d rows to %s", len(df), path)
    return path


def _read_table(path: PathLike, columns: Sequence[str], optional: Collection[str] = ()) -> pd.DataFrame:
    """Read a CSV as strings; reject wrong headers and short rows.

    Columns in `optional` may be empty but must be present.
    """
    source = str(path)
    try:
        df = pd.read_csv(
            path,
            encoding="utf-8",
            dtype=str,
            keep_default_na=False,
            na_filter=False,
            skip_blank_lines=False,
        )
    except FileNotFoundError as e:
        raise DataError("file not found", source=source) from e
    except UnicodeDecodeError as e:
        raise DataError(f"file is not valid UTF-8 (byte offset {e.start})", source=source) from e
    except pd.errors.EmptyDataError as e:
        raise DataError("file is empty; a header row is required", source=source, line=1) from e
    except pd.errors.ParserError as e:
        m = _PARSER_LINE.search(str(e))
        raise DataError(
            f"expected {len(columns)} fields", source=source, line=int(m.group(1)) if m else None
        ) from e

    if tuple(df.columns) != tuple(columns):
        raise DataError(
            f"header must be {','.join(columns)}, got {','.join(map(str, df.columns))}", source=source, line=1
        )

    required = [c for c in columns if c not in optional]
    for i, row in enumerate(df[required].itertuples(index=False)):
        for name, value in zip(required, row):
            if not isinstance(value, str) or value == "":
                raise DataError(
                    f"expected {len(columns)} fields, {name!r} is missing", source=source, line=i + 2
                )
    return df


def _float(value: str, name: str, source: str, line: int) -> float:
    try:
        x = float(value)
    except ValueError:
        raise DataError(f"{name} is not a number: {value!r}", source=source, line=line) from None
    if not math.isfinite(x):
        raise DataError(f"{name} must be finite, got {value!r}", source=source, line=line)
    return x


# ---------------------------------------------------------------------------
# Measurement log
# ---------------------------------------------------------------------------
def write_measurement_log(path: PathLike, measurements: Iterable[Measurement]) -> Path:
    rows = (
        (_num(m.timestamp), m.source_id, m.kind.value, _num(m.value), m.kind.unit) for m in measurements
    )
    return _write_table(path, LOG_COLUMNS, rows)


def read_measurement_log(
    path: PathLike, sources: Optional[Mapping[MeasurementKind, Collection[str]]] = None
) -> List[Measurement]:
    """Parse and validate a measurement log.

    With `sources` (kind -> known ids) every source_id must resolve; the first
    unknown id fails with its row number.
    """
    source = str(path)
    df = _read_table(path, LOG_COLUMNS)
    out: List[Measurement] = []
    last_t = -math.inf
    for i, (t, sid, kind, value, unit) in enumerate(df.itertuples(index=False)):
        line = i + 2
        try:
            k = MeasurementKind(kind)
        except ValueError:
            raise DataError(f"unknown kind {kind!r} (expected RSS or RANGE)", source=source, line=line) from None
        if unit != k.unit:
            raise DataError(f"{k.value} value must be in {k.unit}, got unit {unit!r}", source=source, line=line)
        if sources is not None and sid not in sources.get(k, ()):
            raise DataError(f"unknown {k.value} source_id {sid!r}", source=source, line=line)

        ts = _float(t, "timestamp_s", source, line)
        if ts < last_t:
            raise OrderingError(f"timestamp {ts} precedes {last_t}", source=source, line=line)
        last_t = ts
        try:
            out.append(Measurement(ts, sid, k, _float(value, "value", source, line)))
        except DataError as e:
            raise e.at(source, line) from None

    logger.info("read %d measurements from %s", len(out), path)
    return out


# ---------------------------------------------------------------------------
# Ground truth
# ---------------------------------------------------------------------------
def write_truth(path: PathLike, truth: Iterable[GroundTruthSample]) -> Path:
    rows = ((_num(s.timestamp), _num(s.position.x), _num(s.position.y)) for s in truth)
    return _write_table(path, TRUTH_COLUMNS, rows)


def read_truth(path: PathLike) -> List[GroundTruthSample]:
    source = str(path)
    df = _read_table(path, TRUTH_COLUMNS)
    out = []
    for i, (t, x, y) in enumerate(df.itertuples(index=False)):
        line = i + 2
        try:
            out.append(
                GroundTruthSample(
                    _float(t, "timestamp_s", source, line),
                    Point2(_float(x, "x_m", source, line), _float(y, "y_m", source, line)),
                )
            )
        except DataError as e:
            raise e.at(source, line) from None
    return out


# ---------------------------------------------------------------------------
# Per-tick estimates
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class EstimateRow:
    timestamp: float
    mode: str
    estimate: PositionEstimate
    detecting_sensor_ids: FrozenSet[str] = frozenset()


def write_estimates(path: PathLike, rows: Iterable[EstimateRow]) -> Path:
    out = (
        (
            _num(r.timestamp),
            r.mode,
            _num(r.estimate.position.x),
            _num(r.estimate.position.y),
            _num(r.estimate.var_x),
            _num(r.estimate.var_y),
            ID_SEPARATOR.join(sorted(r.detecting_sensor_ids)),
        )
        for r in rows
    )
    return _write_table(path, ESTIMATE_COLUMNS, out)


def read_estimates(path: PathLike) -> List[EstimateRow]:
    source = str(path)
    df = _read_table(path, ESTIMATE_COLUMNS, optional=("detecting_sensor_ids",))
    out = []
    for i, (t, mode, x, y, vx, vy, ids) in enumerate(df.itertuples(index=False)):
        line = i + 2
        try:
            est = PositionEstimate(
                Point2(_float(x, "x_m", source, line), _float(y, "y_m", source, line)),
                _float(vx, "var_x_m2", source, line),
                _float(vy, "var_y_m2", source, line),
            )
        except DataError as e:
            raise e.at(source, line) from None
        detecting = frozenset(s for s in ids.split(ID_SEPARATOR) if s)
        out.append(EstimateRow(_float(t, "timestamp_s", source, line), mode, est, detecting))
    return out


# ---------------------------------------------------------------------------
# CDF and calibration tables
# ---------------------------------------------------------------------------
def write_cdf_table(path: PathLike, table: Iterable[Tuple[float, float]]) -> Path:
    return _write_table(path, CDF_COLUMNS, ((_num(e), _num(f)) for e, f in table))


def read_cdf_table(path: PathLike) -> List[Tuple[float, float]]:
    source = str(path)
    df = _read_table(path, CDF_COLUMNS)
    return [
        (_float(e, "error_m", source, i + 2), _float(f, "cdf", source, i + 2))
        for i, (e, f) in enumerate(df.itertuples(index=False))
    ]


def _read_pairs(path: PathLike, columns: Sequence[str]) -> List[Tuple[float, float]]:
    source = str(path)
    df = _read_table(path, columns)
    a, b = columns
    return [
        (_float(u, a, source, i + 2), _float(v, b, source, i + 2))
        for i, (u, v) in enumerate(df.itertuples(index=False))
    ]


def read_stddev_samples(path: PathLike) -> List[Tuple[float, float]]:
    return _read_pairs(path, STDDEV_COLUMNS)


def read_bias_samples(path: PathLike) -> List[Tuple[float, float]]:
    return _read_pairs(path, BIAS_COLUMNS)


def truth_by_time(truth: Iterable[GroundTruthSample]) -> Dict[float, Point2]:
    return {s.timestamp: s.position for s in truth}
