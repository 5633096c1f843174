"""Central location for resolving project paths."""
from __future__ import annotations

from pathlib import Path

BASE_DIR = Path(__file__).resolve().parents[1]
PACKAGE_DIR = BASE_DIR / "localperiods"
DATA_DIR = BASE_DIR / "data"

SETTINGS_PATH = BASE_DIR / "localperiods.env"
DEFAULT_SUITE_PATH = DATA_DIR / "default_suite.json"
LEDGER_DB_PATH = DATA_DIR / "run_ledger.db"

__all__ = [
    "BASE_DIR",
    "DATA_DIR",
    "DEFAULT_SUITE_PATH",
    "LEDGER_DB_PATH",
    "PACKAGE_DIR",
    "SETTINGS_PATH",
]
