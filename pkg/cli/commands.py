# cli/commands.py
"""
Subcommand implementations. Each returns an exit status (0) or raises a
HylocError, which `cli.app.main` turns into a diagnostic and exit status 2.
"""

import logging
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import yaml

from core.errors import DataError
from core.measurements import MeasurementKind
from fusion.hybrid import LocalizationMode
from proximity.calibration import fit_bias_table, fit_stddev_cubic
from simulator.scenario import FovMode, Scenario
from storage.run_ledger import RunLedger
from storage.scenario_file import load_scenario
from storage.tables import (
    read_bias_samples,
    read_estimates,
    read_measurement_log,
    read_stddev_samples,
    read_truth,
    truth_by_time,
    write_cdf_table,
    write_estimates,
    write_measurement_log,
    write_truth,
)
from cli import pipeline

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def write_yaml(path: PathLike, data: Dict[str, Any]) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        yaml.safe_dump(data, f, sort_keys=False, default_flow_style=None)
    return path


def scenario_for_run(
    scenario_path: PathLike, seed: Optional[int] = None, fov_mode: Optional[str] = None
) -> Scenario:
    """Load a scenario and apply the --seed / --fov-mode overrides."""
    scenario = load_scenario(scenario_path)
    overrides: Dict[str, Any] = {}
    if seed is not None:
        overrides["master_seed"] = seed
    if fov_mode is not None:
        overrides["fov_mode"] = FovMode(fov_mode)
    return replace(scenario, **overrides) if overrides else scenario


def cdf_table_paths(out_report: PathLike) -> Tuple[Path, Path]:
    out_report = Path(out_report)
    stem = out_report.with_suffix("")
    return (
        stem.with_name(f"{stem.name}_cdf_ble.csv"),
        stem.with_name(f"{stem.name}_cdf_hybrid.csv"),
    )


# ---------------------------------------------------------------------------
# simulate / localize / evaluate
# ---------------------------------------------------------------------------
def cmd_simulate(
    scenario_path: PathLike,
    out_log_path: PathLike,
    out_truth_path: PathLike,
    *,
    seed: Optional[int] = None,
    fov_mode: Optional[str] = None,
) -> int:
    scenario = scenario_for_run(scenario_path, seed, fov_mode)
    run = pipeline.simulate(scenario)
    write_measurement_log(out_log_path, run.measurements)
    write_truth(out_truth_path, run.truth)
    logger.info("wrote %d measurements to %s, %d truth samples to %s",
                len(run.measurements), out_log_path, len(run.truth), out_truth_path)
    return 0


def cmd_localize(
    scenario_path: PathLike,
    log_path: PathLike,
    out_estimates_path: PathLike,
    mode: str = LocalizationMode.HYBRID.value,
    *,
    fusion_feedback: bool = False,
) -> int:
    scenario = load_scenario(scenario_path)
    sources = {
        MeasurementKind.RSS: set(scenario.anchor_map),
        MeasurementKind.RANGE: set(scenario.sensor_map),
    }
    measurements = read_measurement_log(log_path, sources)
    rows = pipeline.localize(scenario, measurements, LocalizationMode(mode), feedback=fusion_feedback)
    write_estimates(out_estimates_path, rows)
    logger.info("wrote %d %s estimates to %s", len(rows), mode, out_estimates_path)
    return 0


def _read_nonempty_estimates(path: PathLike):
    rows = read_estimates(path)
    if not rows:
        raise DataError("estimate file has no rows", source=str(path))
    return rows


def cmd_evaluate(
    estimates_ble: PathLike,
    estimates_hybrid: PathLike,
    scenario_path: PathLike,
    out_report: PathLike,
    *,
    truth_path: Optional[PathLike] = None,
    plot_path: Optional[PathLike] = None,
) -> int:
    scenario = load_scenario(scenario_path)
    ble_rows = _read_nonempty_estimates(estimates_ble)
    hybrid_rows = _read_nonempty_estimates(estimates_hybrid)
    truth = truth_by_time(read_truth(truth_path)) if truth_path is not None else None

    ev = pipeline.evaluate(ble_rows, hybrid_rows, scenario.trajectory, truth)
    ble_cdf, hybrid_cdf = cdf_table_paths(out_report)
    ble_table, hybrid_table = ev.cdf_tables()
    write_cdf_table(ble_cdf, ble_table)
    write_cdf_table(hybrid_cdf, hybrid_table)
    if plot_path is not None:
        from evaluation.plots import plot_error_cdfs

        plot_error_cdfs(ble_table, hybrid_table, plot_path)

    report = pipeline.report_to_dict(ev.report)
    report["cdf_tables"] = {"ble": ble_cdf.name, "hybrid": hybrid_cdf.name}
    write_yaml(out_report, report)
    logger.info("median error: ble %.4f m, hybrid %.4f m (ratio %.3f); report at %s",
                ev.report.ble.median, ev.report.hybrid.median, ev.report.median_ratio, out_report)
    return 0


# ---------------------------------------------------------------------------
# fit-sensor
# ---------------------------------------------------------------------------
def cmd_fit_sensor(
    calibration_csv: PathLike,
    out_model_path: PathLike,
    *,
    bias_csv: Optional[PathLike] = None,
) -> int:
    fit = fit_stddev_cubic(read_stddev_samples(calibration_csv))
    fragment: Dict[str, Any] = {
        "stddev_cubic": list(fit.coefficients),
        "residual_rms": fit.residual_rms,
        "standard_errors": list(fit.standard_errors),
        "n_samples": fit.n_samples,
    }
    if bias_csv is not None:
        fragment["bias_table"] = [[d, b] for d, b in fit_bias_table(read_bias_samples(bias_csv))]
    write_yaml(out_model_path, fragment)
    print(f"residual_rms: {fit.residual_rms!r}")
    logger.info("fitted stddev cubic from %d samples, wrote %s", fit.n_samples, out_model_path)
    return 0


# ---------------------------------------------------------------------------
# montecarlo
# ---------------------------------------------------------------------------
def cmd_montecarlo(
    scenario_path: PathLike,
    n_runs: int,
    out_report: PathLike,
    *,
    seed: Optional[int] = None,
    fov_mode: Optional[str] = None,
    fusion_feedback: bool = False,
    workers: int = 1,
    ledger_path: Optional[PathLike] = None,
) -> int:
    scenario = scenario_for_run(scenario_path, seed, fov_mode)
    report = pipeline.montecarlo(scenario, n_runs, workers=workers, feedback=fusion_feedback)
    write_yaml(out_report, report.to_dict())
    if ledger_path is not None:
        ledger = RunLedger(ledger_path)
        try:
            ledger.record(report, scenario=str(scenario_path))
        finally:
            ledger.close()
    print(f"hybrid wins {report.hybrid_wins}/{len(report.runs)}, pooled median ratio {report.pooled_ratio:.3f}")
    return 0
