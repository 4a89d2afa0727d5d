# evaluation/cdf.py
"""Empirical CDF of trajectory errors."""

from dataclasses import dataclass
from typing import List, Tuple, Union

import numpy as np

from core.errors import UsageError
from evaluation.metrics import ErrorSeries


@dataclass(frozen=True, eq=False)
class EmpiricalCdf:
    """F(t) = #(errors <= t) / n over sorted values."""

    values: np.ndarray

    def __post_init__(self):
        v = np.sort(np.asarray(self.values, dtype=float))
        if v.size == 0:
            raise UsageError("empirical CDF needs at least one value")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __call__(self, t: Union[float, np.ndarray]):
        counts = np.searchsorted(self.values, t, side="right")
        return counts / self.n

    def median(self) -> float:
        """Middle order statistic; mean of the two central ones for even n."""
        v, n = self.values, self.n
        mid = n // 2
        if n % 2:
            return float(v[mid])
        return float((v[mid - 1] + v[mid]) / 2.0)

    def quantile(self, p: float) -> float:
        return float(np.quantile(self.values, p))

    def mean(self) -> float:
        return float(np.mean(self.values))

    def table(self) -> List[Tuple[float, float]]:
        """(error, F(error)) at every distinct error; plot-ready, ends at 1.0."""
        uniq, counts = np.unique(self.values, return_counts=True)
        F = np.cumsum(counts) / self.n
        F[-1] = 1.0
        return [(float(e), float(f)) for e, f in zip(uniq, F)]


def cdf(series: Union[ErrorSeries, np.ndarray]) -> EmpiricalCdf:
    errors = series.as_array() if isinstance(series, ErrorSeries) else series
    return EmpiricalCdf(errors)
