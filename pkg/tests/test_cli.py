# tests/test_cli.py

import logging

import numpy as np
import pandas as pd
import pytest
import yaml

from cli.app import EXIT_ERROR, main
from cli.commands import cdf_table_paths
from cli.pipeline import error_series, montecarlo, run_single
from evaluation.metrics import Method
from evaluation.report import summarize
from simulator.scenario import default_scenario
from storage.tables import read_cdf_table, read_estimates, read_measurement_log
from tests.conftest import DEFAULT_SCENARIO_PATH

SCENARIO = str(DEFAULT_SCENARIO_PATH)


def simulate(tmp_path, name="run", *extra):
    log, truth = tmp_path / f"{name}_log.csv", tmp_path / f"{name}_truth.csv"
    status = main(["simulate", "--scenario", SCENARIO, "--out-log", str(log), "--out-truth", str(truth), *extra])
    assert status == 0
    return log, truth


def localize(tmp_path, log, mode, name=None):
    out = tmp_path / f"{name or mode}_est.csv"
    assert main(["localize", "--scenario", SCENARIO, "--log", str(log), "--out", str(out), "--mode", mode]) == 0
    return out


# --- simulate ---------------------------------------------------------------

def test_simulate_writes_log_and_truth(tmp_path):
    log, truth = simulate(tmp_path)
    measurements = read_measurement_log(log)
    assert len(measurements) >= 484
    assert sum(1 for m in measurements if m.kind.value == "RSS") == 484
    assert len(pd.read_csv(truth)) == 121


def test_simulate_is_byte_identical_per_seed(tmp_path):
    a_log, a_truth = simulate(tmp_path, "a")
    b_log, b_truth = simulate(tmp_path, "b")
    assert a_log.read_bytes() == b_log.read_bytes()
    assert a_truth.read_bytes() == b_truth.read_bytes()

    c_log, _ = simulate(tmp_path, "c", "--seed", "7")
    assert c_log.read_bytes() != a_log.read_bytes()


def test_simulate_measured_fov_detects_less(tmp_path):
    declared, _ = simulate(tmp_path, "declared")
    measured, _ = simulate(tmp_path, "measured", "--fov-mode", "measured")
    count = lambda p: sum(1 for m in read_measurement_log(p) if m.kind.value == "RANGE")  # noqa: E731
    assert count(measured) < count(declared)


def test_missing_anchors_section_exits_with_diagnostic(tmp_path, caplog):
    bad = tmp_path / "bad.yaml"
    bad.write_text("format_version: 1\ntrajectory:\n  waypoints: [[0.0, 0.0], [1.0, 0.0]]\n")
    with caplog.at_level(logging.ERROR):
        status = main(["simulate", "--scenario", str(bad), "--out-log", str(tmp_path / "l.csv"),
                       "--out-truth", str(tmp_path / "t.csv")])
    assert status == EXIT_ERROR
    assert f"E-CONFIG {bad}:1: missing section: anchors" in caplog.text


# --- localize ---------------------------------------------------------------

def test_ble_mode_ignores_range_rows(tmp_path):
    log, _ = simulate(tmp_path)
    rows = read_estimates(localize(tmp_path, log, "ble"))
    assert len(rows) == 121
    assert all(r.mode == "ble" and not r.detecting_sensor_ids for r in rows)

    hybrid = read_estimates(localize(tmp_path, log, "hybrid"))
    assert any(r.detecting_sensor_ids for r in hybrid)


def test_hybrid_without_ranges_equals_ble(tmp_path):
    log, _ = simulate(tmp_path)
    rss_only = tmp_path / "rss_only.csv"
    lines = log.read_text().splitlines(keepends=True)
    rss_only.write_text("".join(line for line in lines if ",RANGE," not in line))

    ble = pd.read_csv(localize(tmp_path, rss_only, "ble"))
    hybrid = pd.read_csv(localize(tmp_path, rss_only, "hybrid"))
    cols = ["timestamp_s", "x_m", "y_m", "var_x_m2", "var_y_m2"]
    assert ble[cols].equals(hybrid[cols])


def test_corrupt_row_exits_naming_the_row(tmp_path, caplog):
    log, _ = simulate(tmp_path)
    lines = log.read_text().splitlines()
    lines[5] = ",".join(lines[5].split(",")[:3])
    log.write_text("\n".join(lines) + "\n")
    with caplog.at_level(logging.ERROR):
        status = main(["localize", "--scenario", SCENARIO, "--log", str(log), "--out", str(tmp_path / "e.csv")])
    assert status == EXIT_ERROR
    assert f"E-DATA {log}:6:" in caplog.text


def test_unknown_source_exits(tmp_path, caplog):
    log, _ = simulate(tmp_path)
    log.write_text(log.read_text().replace(",A3,", ",A9,", 1))
    with caplog.at_level(logging.ERROR):
        status = main(["localize", "--scenario", SCENARIO, "--log", str(log), "--out", str(tmp_path / "e.csv")])
    assert status == EXIT_ERROR
    assert "unknown RSS source_id 'A9'" in caplog.text


# --- evaluate ---------------------------------------------------------------

def evaluate(tmp_path, ble, hybrid, *extra):
    report = tmp_path / "report.yaml"
    argv = ["evaluate", "--scenario", SCENARIO, "--ble", str(ble), "--hybrid", str(hybrid), "--out", str(report)]
    assert main(argv + list(extra)) == 0
    return yaml.safe_load(report.read_text()), report


def test_evaluate_identical_inputs(tmp_path):
    log, _ = simulate(tmp_path)
    ble = localize(tmp_path, log, "ble")
    report, path = evaluate(tmp_path, ble, ble)
    assert report["median_ratio"] == 1.0
    for table in cdf_table_paths(path):
        assert read_cdf_table(table)[-1][1] == 1.0


def test_evaluate_matches_summarize(tmp_path):
    log, truth = simulate(tmp_path)
    ble_path, hybrid_path = localize(tmp_path, log, "ble"), localize(tmp_path, log, "hybrid")
    report, _ = evaluate(tmp_path, ble_path, hybrid_path, "--truth", str(truth))

    reference = default_scenario().trajectory
    expected = summarize(
        error_series(read_estimates(ble_path), reference, Method.BLE_ONLY),
        error_series(read_estimates(hybrid_path), reference, Method.HYBRID),
    )
    assert report["ble"]["median"] == expected.ble.median
    assert report["hybrid"]["median"] == expected.hybrid.median
    assert report["median_ratio"] == expected.median_ratio
    assert "sync_median" in report["hybrid"]


def test_file_pipeline_equals_in_memory(tmp_path):
    log, truth = simulate(tmp_path)
    ble_path, hybrid_path = localize(tmp_path, log, "ble"), localize(tmp_path, log, "hybrid")
    report, _ = evaluate(tmp_path, ble_path, hybrid_path, "--truth", str(truth))

    single = run_single(default_scenario()).report
    assert report["ble"]["median"] == single.ble.median
    assert report["hybrid"]["median"] == single.hybrid.median
    assert report["hybrid"]["sync_median"] == single.hybrid.sync_median


def test_full_pipeline_is_byte_identical(tmp_path):
    outputs = []
    for name in ("first", "second"):
        d = tmp_path / name
        d.mkdir()
        log, _ = simulate(d)
        ble, hybrid = localize(d, log, "ble"), localize(d, log, "hybrid")
        _, report = evaluate(d, ble, hybrid)
        outputs.append([p.read_bytes() for p in (log, ble, hybrid, report, *cdf_table_paths(report))])
    assert outputs[0] == outputs[1]


def test_evaluate_writes_cdf_plot(tmp_path):
    log, _ = simulate(tmp_path)
    ble, hybrid = localize(tmp_path, log, "ble"), localize(tmp_path, log, "hybrid")
    chart = tmp_path / "cdf.png"
    evaluate(tmp_path, ble, hybrid, "--plot", str(chart))
    assert chart.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_evaluate_empty_estimates_exits(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("timestamp_s,mode,x_m,y_m,var_x_m2,var_y_m2,detecting_sensor_ids\n")
    status = main(["evaluate", "--scenario", SCENARIO, "--ble", str(empty), "--hybrid", str(empty),
                   "--out", str(tmp_path / "r.yaml")])
    assert status == EXIT_ERROR


# --- fit-sensor -------------------------------------------------------------

def write_calibration(path, pairs):
    path.write_text("distance_m,stddev_m\n" + "".join(f"{d!r},{s!r}\n" for d, s in pairs))
    return path


def test_fit_sensor_exact_cubic(tmp_path, capsys):
    d = np.linspace(0.25, 3.5, 10)
    s = 0.01 + 0.002 * d + 0.003 * d ** 2 + 0.001 * d ** 3
    csv = write_calibration(tmp_path / "cal.csv", zip(d.tolist(), s.tolist()))
    out = tmp_path / "model.yaml"
    assert main(["fit-sensor", str(csv), "--out", str(out)]) == 0

    fragment = yaml.safe_load(out.read_text())
    assert fragment["residual_rms"] < 1e-9
    np.testing.assert_allclose(fragment["stddev_cubic"], [0.01, 0.002, 0.003, 0.001], atol=1e-9)
    assert "residual_rms" in capsys.readouterr().out


def test_fit_sensor_envelope_with_bias(tmp_path):
    csv = write_calibration(tmp_path / "cal.csv", [(0.5, 0.02), (2.0, 0.03), (2.5, 0.05), (3.5, 0.20)])
    bias = tmp_path / "bias.csv"
    bias.write_text("distance_m,bias_m\n1.0,0.01\n0.5,0.01\n1.0,0.02\n3.5,0.3\n")
    out = tmp_path / "model.yaml"
    assert main(["fit-sensor", str(csv), "--out", str(out), "--bias", str(bias)]) == 0

    fragment = yaml.safe_load(out.read_text())
    assert np.polynomial.polynomial.polyval(1.0, fragment["stddev_cubic"]) <= 0.05
    assert [d for d, _ in fragment["bias_table"]] == [0.5, 1.0, 3.5]
    assert fragment["bias_table"][1][1] == pytest.approx(0.015)


def test_fit_sensor_rank_error(tmp_path, caplog):
    csv = write_calibration(tmp_path / "cal.csv", [(0.5, 0.02), (2.0, 0.03), (3.5, 0.20)])
    with caplog.at_level(logging.ERROR):
        assert main(["fit-sensor", str(csv), "--out", str(tmp_path / "m.yaml")]) == EXIT_ERROR
    assert "E-FIT" in caplog.text


def test_fit_sensor_non_finite_row_exits_with_row(tmp_path, caplog):
    csv = tmp_path / "cal.csv"
    csv.write_text("distance_m,stddev_m\n0.5,0.02\nnan,0.05\n2.0,0.03\n3.5,0.2\n")
    with caplog.at_level(logging.ERROR):
        assert main(["fit-sensor", str(csv), "--out", str(tmp_path / "m.yaml")]) == EXIT_ERROR
    assert f"E-DATA {csv}:3:" in caplog.text


# --- montecarlo -------------------------------------------------------------

def test_single_run_montecarlo_equals_pipeline(tmp_path):
    out = tmp_path / "mc.yaml"
    assert main(["montecarlo", "--scenario", SCENARIO, "--runs", "1", "--out", str(out)]) == 0
    report = yaml.safe_load(out.read_text())

    single = run_single(default_scenario()).report
    assert report["n_runs"] == 1
    assert report["runs"][0]["ble"]["median"] == single.ble.median
    assert report["runs"][0]["hybrid"]["median"] == single.hybrid.median
    assert report["runs"][0]["median_ratio"] == single.median_ratio


def test_montecarlo_is_deterministic_and_recorded(tmp_path):
    a, b = tmp_path / "a.yaml", tmp_path / "b.yaml"
    ledger = tmp_path / "ledger.sqlite"
    assert main(["montecarlo", "--scenario", SCENARIO, "--runs", "3", "--out", str(a), "--ledger", str(ledger)]) == 0
    assert main(["montecarlo", "--scenario", SCENARIO, "--runs", "3", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert ledger.exists()


def test_montecarlo_rejects_zero_runs(tmp_path):
    assert main(["montecarlo", "--scenario", SCENARIO, "--runs", "0", "--out", str(tmp_path / "m.yaml")]) == EXIT_ERROR


@pytest.mark.slow
def test_hybrid_beats_ble_over_twenty_seeds():
    report = montecarlo(default_scenario(), 20)
    assert report.hybrid_wins >= 18
    assert report.pooled_ratio < 0.6


@pytest.mark.slow
def test_parallel_montecarlo_matches_serial():
    serial = montecarlo(default_scenario(), 4)
    parallel = montecarlo(default_scenario(), 4, workers=2)
    assert serial.to_dict() == parallel.to_dict()
