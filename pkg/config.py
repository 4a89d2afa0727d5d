"""
Configuration management for hyloc.
Environment-backed settings loader

Experiment parameters live in the scenario YAML; this module only holds
process-level settings (log level, default scenario, Monte-Carlo workers,
ledger location).
"""

import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

# Project root (folder containing this file)
BASE_DIR = Path(__file__).resolve().parent

load_dotenv(BASE_DIR / ".env", override=False)


def _int(name: str, default: int) -> int:
    return int(os.getenv(name, default))


def _str(name: str, default: str) -> str:
    return os.getenv(name) or default


def _path(name: str, default: Optional[Path]) -> Optional[Path]:
    value = os.getenv(name)
    if not value:
        return default
    p = Path(value)
    if not p.is_absolute():
        p = BASE_DIR / p
    return p


LOG_LEVEL: str = _str("HYLOC_LOG_LEVEL", "INFO").upper()
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

DEFAULT_SCENARIO: Path = _path("HYLOC_DEFAULT_SCENARIO", BASE_DIR / "scenarios" / "default.yaml")

# >1 runs Monte-Carlo runs in a process pool
MC_WORKERS: int = max(1, _int("HYLOC_MC_WORKERS", 1))

LEDGER_PATH: Optional[Path] = _path("HYLOC_LEDGER_PATH", None)
