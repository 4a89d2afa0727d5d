"""
Trajectory-error metric, empirical CDF and summary statistics.
"""

from evaluation.cdf import EmpiricalCdf, cdf
from evaluation.metrics import ErrorSeries, Method, trajectory_errors
from evaluation.report import MethodStats, SummaryReport, median_ratio, summarize

__all__ = [
    "EmpiricalCdf",
    "ErrorSeries",
    "Method",
    "MethodStats",
    "SummaryReport",
    "cdf",
    "median_ratio",
    "summarize",
    "trajectory_errors",
]
