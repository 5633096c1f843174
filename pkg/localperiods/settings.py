"""Tool settings read from a dotenv-format file.

Only the file is consulted; the process environment never changes a run.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Optional, Union

from dotenv import dotenv_values

from .errors import ConfigError
from .paths import BASE_DIR, LEDGER_DB_PATH, SETTINGS_PATH

PathLike = Union[str, Path]

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}

KNOWN_KEYS = (
    "LOCALPERIODS_PRECISION",
    "LOCALPERIODS_WORKERS",
    "LOCALPERIODS_LEDGER_ENABLED",
    "LOCALPERIODS_LEDGER_PATH",
    "LOCALPERIODS_TOL",
)


@dataclass(frozen=True)
class Settings:
    precision: int = 40
    workers: int = 1
    ledger_enabled: bool = True
    ledger_path: Path = LEDGER_DB_PATH
    tol: float = 1e-6

    def to_dict(self) -> Dict[str, object]:
        return {
            "precision": self.precision,
            "workers": self.workers,
            "ledgerEnabled": self.ledger_enabled,
            "ledgerPath": str(self.ledger_path),
            "tol": self.tol,
        }


def _as_int(key: str, raw: str, minimum: int) -> int:
    try:
        value = int(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
    if value < minimum:
        raise ConfigError(f"{key} must be >= {minimum}, got {value}")
    return value


def _as_bool(key: str, raw: str) -> bool:
    text = (raw or "").strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"{key} must be a boolean, got {raw!r}")


def _as_tol(key: str, raw: str) -> float:
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {raw!r}") from None
    if not 0 < value < 1:
        raise ConfigError(f"{key} must lie in (0, 1), got {value}")
    return value


def _as_path(raw: str, base: Path) -> Path:
    path = Path(raw).expanduser()
    if not path.is_absolute():
        path = (base / path).resolve()
    return path


def parse_settings(values: Dict[str, Optional[str]], base: Path = BASE_DIR) -> Settings:
    """Settings from already-read key/value pairs; relative paths resolve against ``base``."""
    unknown = sorted(key for key in values if key.startswith("LOCALPERIODS_") and key not in KNOWN_KEYS)
    if unknown:
        raise ConfigError(f"unknown settings: {', '.join(unknown)}")
    settings = Settings()
    raw = {key: value for key, value in values.items() if value not in (None, "")}
    if "LOCALPERIODS_PRECISION" in raw:
        settings = replace(settings, precision=_as_int("LOCALPERIODS_PRECISION", raw["LOCALPERIODS_PRECISION"], 8))
    if "LOCALPERIODS_WORKERS" in raw:
        settings = replace(settings, workers=_as_int("LOCALPERIODS_WORKERS", raw["LOCALPERIODS_WORKERS"], 1))
    if "LOCALPERIODS_LEDGER_ENABLED" in raw:
        settings = replace(
            settings, ledger_enabled=_as_bool("LOCALPERIODS_LEDGER_ENABLED", raw["LOCALPERIODS_LEDGER_ENABLED"])
        )
    if "LOCALPERIODS_LEDGER_PATH" in raw:
        settings = replace(settings, ledger_path=_as_path(raw["LOCALPERIODS_LEDGER_PATH"], base))
    if "LOCALPERIODS_TOL" in raw:
        settings = replace(settings, tol=_as_tol("LOCALPERIODS_TOL", raw["LOCALPERIODS_TOL"]))
    return settings


def load_settings(path: Optional[PathLike] = None) -> Settings:
    """Read ``path`` (default: localperiods.env at the repository root).

    A missing default file means defaults; a missing explicit file is an error.
    """
    if path is None:
        if not SETTINGS_PATH.exists():
            return Settings()
        target = SETTINGS_PATH
    else:
        target = Path(path)
        if not target.is_file():
            raise ConfigError(f"settings file not found: {target}")
    return parse_settings(dict(dotenv_values(target)), base=target.resolve().parent)


__all__ = ["KNOWN_KEYS", "Settings", "load_settings", "parse_settings"]
