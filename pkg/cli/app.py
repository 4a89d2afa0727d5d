# cli/app.py
"""hyloc command line: simulate | localize | evaluate | fit-sensor | montecarlo."""

import argparse
import logging
import sys
from typing import List, Optional

import config
from core.errors import HylocError
from fusion.hybrid import LocalizationMode
from simulator.scenario import FovMode
from cli import commands

logger = logging.getLogger("hyloc")

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_ERROR = 2


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the scenario master seed")
    common.add_argument(
        "--fov-mode",
        choices=[m.value for m in FovMode],
        default=None,
        help="detection cone used by the simulator (default: scenario value)",
    )
    common.add_argument(
        "--fusion-feedback",
        action="store_true",
        help="experimental: feed the fused position back into the EKF",
    )
    common.add_argument("--log-level", default=config.LOG_LEVEL, help="logging level (default: %(default)s)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="hyloc",
        description="Hybrid BLE + proximity-sensor indoor localization toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    scenario_help = "scenario YAML (default: %(default)s)"

    p = sub.add_parser("simulate", parents=[common], help="synthesize a measurement log and ground truth")
    p.add_argument("--scenario", default=str(config.DEFAULT_SCENARIO), help=scenario_help)
    p.add_argument("--out-log", required=True)
    p.add_argument("--out-truth", required=True)

    p = sub.add_parser("localize", parents=[common], help="run the tracker over a measurement log")
    p.add_argument("--scenario", default=str(config.DEFAULT_SCENARIO), help=scenario_help)
    p.add_argument("--log", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--mode", choices=[m.value for m in LocalizationMode], default=LocalizationMode.HYBRID.value)

    p = sub.add_parser("evaluate", parents=[common], help="trajectory-error report and CDF tables")
    p.add_argument("--scenario", default=str(config.DEFAULT_SCENARIO), help=scenario_help)
    p.add_argument("--ble", required=True, help="BLE-only estimates CSV")
    p.add_argument("--hybrid", required=True, help="hybrid estimates CSV")
    p.add_argument("--out", required=True, help="report YAML; CDF tables are written next to it")
    p.add_argument("--truth", default=None, help="ground truth CSV for the time-synchronized error")
    p.add_argument("--plot", default=None, help="also save a CDF chart (png, svg or pdf)")

    p = sub.add_parser("fit-sensor", parents=[common], help="fit the stddev cubic from calibration data")
    p.add_argument("calibration_csv", help="CSV with distance_m,stddev_m")
    p.add_argument("--out", required=True, help="sensor-model YAML fragment")
    p.add_argument("--bias", default=None, help="CSV with distance_m,bias_m")

    p = sub.add_parser("montecarlo", parents=[common], help="repeat simulate/localize/evaluate over seeds")
    p.add_argument("--scenario", default=str(config.DEFAULT_SCENARIO), help=scenario_help)
    p.add_argument("--runs", type=int, default=20)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=config.MC_WORKERS)
    p.add_argument("--ledger", default=config.LEDGER_PATH, help="SQLite ledger to append the batch to")

    return parser


def dispatch(args: argparse.Namespace) -> int:
    if args.command == "simulate":
        return commands.cmd_simulate(
            args.scenario, args.out_log, args.out_truth, seed=args.seed, fov_mode=args.fov_mode
        )
    if args.command == "localize":
        return commands.cmd_localize(
            args.scenario, args.log, args.out, args.mode, fusion_feedback=args.fusion_feedback
        )
    if args.command == "evaluate":
        return commands.cmd_evaluate(
            args.ble, args.hybrid, args.scenario, args.out, truth_path=args.truth, plot_path=args.plot
        )
    if args.command == "fit-sensor":
        return commands.cmd_fit_sensor(args.calibration_csv, args.out, bias_csv=args.bias)
    if args.command == "montecarlo":
        return commands.cmd_montecarlo(
            args.scenario,
            args.runs,
            args.out,
            seed=args.seed,
            fov_mode=args.fov_mode,
            fusion_feedback=args.fusion_feedback,
            workers=args.workers,
            ledger_path=args.ledger,
        )
    raise AssertionError(f"unhandled command {args.command!r}")


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=str(args.log_level).upper(), format=config.LOG_FORMAT)

    logger.info("hyloc %s", args.command)
    try:
        status = dispatch(args)
    except HylocError as e:
        logger.error("%s", e)
        return EXIT_ERROR
    except Exception as e:
        logger.error("unexpected error: %s", e, exc_info=True)
        return EXIT_UNEXPECTED
    logger.info("hyloc %s finished", args.command)
    return status


if __name__ == "__main__":
    sys.exit(main())
