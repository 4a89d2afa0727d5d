# storage/__init__.py
"""
File formats and persistence: the YAML scenario file, header-bearing CSV
tables and the Monte-Carlo run ledger.
"""

from storage.scenario_file import dump_scenario, load_scenario, parse_scenario, save_scenario
from storage.tables import (
    EstimateRow,
    read_estimates,
    read_measurement_log,
    read_truth,
    write_cdf_table,
    write_estimates,
    write_measurement_log,
    write_truth,
)

__all__ = [
    "EstimateRow",
    "dump_scenario",
    "load_scenario",
    "parse_scenario",
    "read_estimates",
    "read_measurement_log",
    "read_truth",
    "save_scenario",
    "write_cdf_table",
    "write_estimates",
    "write_measurement_log",
    "write_truth",
]
