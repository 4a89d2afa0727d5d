# cli/pipeline.py
"""
In-memory pipeline shared by the CLI commands:

    simulate -> localize (ble, hybrid) -> evaluate -> montecarlo

File-based commands call the same functions on data read back from disk, so a
pipeline composed from files matches the in-memory one bit for bit.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, replace
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.errors import UsageError
from core.geometry import Point2, Polyline
from core.measurements import Measurement
from core.rng import derive_seed
from evaluation.cdf import cdf
from evaluation.metrics import ErrorSeries, Method, trajectory_errors
from evaluation.report import SummaryReport, median_ratio, summarize
from fusion.hybrid import LocalizationMode, track
from simulator.runner import ScenarioRun, run_scenario
from simulator.scenario import Scenario
from storage.tables import EstimateRow

logger = logging.getLogger(__name__)


def simulate(scenario: Scenario) -> ScenarioRun:
    return run_scenario(scenario)


def localize(
    scenario: Scenario,
    measurements: Sequence[Measurement],
    mode: LocalizationMode,
    *,
    feedback: bool = False,
) -> List[EstimateRow]:
    outputs = track(measurements, scenario.deployment(feedback=feedback), mode)
    if mode is LocalizationMode.BLE:
        return [EstimateRow(o.timestamp, mode.value, o.ble_only) for o in outputs]
    return [EstimateRow(o.timestamp, mode.value, o.fused, o.detecting_sensor_ids) for o in outputs]


def error_series(
    rows: Sequence[EstimateRow],
    reference: Polyline,
    method: Method,
    truth: Optional[Mapping[float, Point2]] = None,
) -> ErrorSeries:
    return trajectory_errors([(r.timestamp, r.estimate) for r in rows], reference, method, truth)


@dataclass(frozen=True)
class Evaluation:
    report: SummaryReport
    ble: ErrorSeries
    hybrid: ErrorSeries

    def cdf_tables(self) -> Tuple[List[Tuple[float, float]], List[Tuple[float, float]]]:
        return cdf(self.ble).table(), cdf(self.hybrid).table()


def evaluate(
    ble_rows: Sequence[EstimateRow],
    hybrid_rows: Sequence[EstimateRow],
    reference: Polyline,
    truth: Optional[Mapping[float, Point2]] = None,
) -> Evaluation:
    ble = error_series(ble_rows, reference, Method.BLE_ONLY, truth)
    hybrid = error_series(hybrid_rows, reference, Method.HYBRID, truth)
    return Evaluation(summarize(ble, hybrid), ble, hybrid)


# ---------------------------------------------------------------------------
# Single run and Monte-Carlo
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class RunResult:
    run_index: int
    seed: int
    report: SummaryReport
    ble_errors: Tuple[float, ...]
    hybrid_errors: Tuple[float, ...]

    @property
    def hybrid_wins(self) -> bool:
        return self.report.hybrid.median < self.report.ble.median


def run_single(scenario: Scenario, *, run_index: int = 0, feedback: bool = False) -> RunResult:
    """simulate -> localize both modes -> evaluate against the reference path."""
    sim = simulate(scenario)
    ble_rows = localize(scenario, sim.measurements, LocalizationMode.BLE, feedback=feedback)
    hybrid_rows = localize(scenario, sim.measurements, LocalizationMode.HYBRID, feedback=feedback)
    truth = {s.timestamp: s.position for s in sim.truth}
    ev = evaluate(ble_rows, hybrid_rows, scenario.trajectory, truth)
    return RunResult(run_index, scenario.master_seed, ev.report, ev.ble.errors, ev.hybrid.errors)


def _run_indexed(args: Tuple[Scenario, int, bool]) -> RunResult:
    base, run_index, feedback = args
    scenario = replace(base, master_seed=derive_seed(base.master_seed, run_index))
    return run_single(scenario, run_index=run_index, feedback=feedback)


@dataclass(frozen=True)
class MonteCarloReport:
    master_seed: int
    runs: Tuple[RunResult, ...]
    pooled_ble_median: float
    pooled_hybrid_median: float

    @property
    def hybrid_wins(self) -> int:
        return sum(1 for r in self.runs if r.hybrid_wins)

    @property
    def pooled_ratio(self) -> float:
        return median_ratio(self.pooled_hybrid_median, self.pooled_ble_median)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "master_seed": self.master_seed,
            "n_runs": len(self.runs),
            "hybrid_wins": self.hybrid_wins,
            "pooled": {
                "ble_median": self.pooled_ble_median,
                "hybrid_median": self.pooled_hybrid_median,
                "median_ratio": self.pooled_ratio,
            },
            "runs": [
                {"run_index": r.run_index, "seed": r.seed, **report_to_dict(r.report)} for r in self.runs
            ],
        }


def montecarlo(
    scenario: Scenario, n_runs: int, *, workers: int = 1, feedback: bool = False
) -> MonteCarloReport:
    """Run `n_runs` independent seeds; results are ordered by run index.

    Run 0 uses the scenario's own seed, so n_runs=1 reproduces run_single.
    """
    if n_runs < 1:
        raise UsageError(f"n_runs must be >= 1, got {n_runs}")
    jobs = [(scenario, r, feedback) for r in range(n_runs)]
    if workers > 1 and n_runs > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(_run_indexed, jobs))
    else:
        runs = [_run_indexed(job) for job in jobs]

    pooled_ble = cdf(np.concatenate([r.ble_errors for r in runs])).median()
    pooled_hybrid = cdf(np.concatenate([r.hybrid_errors for r in runs])).median()
    report = MonteCarloReport(scenario.master_seed, tuple(runs), pooled_ble, pooled_hybrid)
    logger.info(
        "montecarlo: %d runs, hybrid wins %d, pooled median ratio %.3f",
        n_runs, report.hybrid_wins, report.pooled_ratio,
    )
    return report


def report_to_dict(report: SummaryReport) -> Dict[str, Any]:
    out = asdict(report)
    for key in ("ble", "hybrid"):
        if out[key]["sync_median"] is None:
            del out[key]["sync_median"]
    return out
