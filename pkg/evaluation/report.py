# evaluation/report.py
"""Side-by-side summary of BLE-only and hybrid error series."""

import math
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional

from core.errors import UsageError
from evaluation.cdf import cdf
from evaluation.metrics import ErrorSeries

PERCENTILE = 0.9


@dataclass(frozen=True)
class MethodStats:
    n: int
    median: float
    p90: float
    mean: float
    sync_median: Optional[float] = None

    @classmethod
    def of(cls, series: ErrorSeries) -> "MethodStats":
        F = cdf(series)
        sync = None
        if series.sync_errors is not None:
            sync = cdf(series.sync_errors).median()
        return cls(F.n, F.median(), F.quantile(PERCENTILE), F.mean(), sync)


@dataclass(frozen=True)
class SummaryReport:
    ble: MethodStats
    hybrid: MethodStats
    median_ratio: float  # hybrid / ble

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def median_ratio(numerator: float, denominator: float) -> float:
    if denominator == 0.0:
        return 1.0 if numerator == 0.0 else math.inf
    return numerator / denominator


def summarize(ble: ErrorSeries, hybrid: ErrorSeries) -> SummaryReport:
    if len(ble) == 0 or len(hybrid) == 0:
        raise UsageError("summarize needs two nonempty error series")
    b = MethodStats.of(ble)
    h = MethodStats.of(hybrid)
    return SummaryReport(b, h, median_ratio(h.median, b.median))
