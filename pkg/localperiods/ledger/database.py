"""SQLite helpers for the run ledger."""
from __future__ import annotations

import sqlite3
import threading
from pathlib import Path
from typing import Optional, Union

from ..paths import LEDGER_DB_PATH

_CONNECTION: Optional[sqlite3.Connection] = None
_DB_PATH: Path = LEDGER_DB_PATH
_LOCK = threading.Lock()


def _resolve_db_path() -> Path:
    path = _DB_PATH
    if str(path) != ":memory:":
        path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _apply_schema(conn: sqlite3.Connection) -> None:
    conn.execute("PRAGMA journal_mode=WAL;")
    conn.execute("PRAGMA foreign_keys=ON;")
    conn.executescript(
        """
        CREATE TABLE IF NOT EXISTS runs (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            created_at TEXT NOT NULL DEFAULT (datetime('now')),
            finished_at TEXT,
            command TEXT NOT NULL,
            seed INTEGER,
            status TEXT NOT NULL,
            message TEXT,
            details TEXT
        );
        CREATE TABLE IF NOT EXISTS checks (
            id INTEGER PRIMARY KEY AUTOINCREMENT,
            run_id INTEGER NOT NULL REFERENCES runs (id) ON DELETE CASCADE,
            created_at TEXT NOT NULL DEFAULT (datetime('now')),
            case_tag TEXT NOT NULL,
            kind TEXT NOT NULL,
            status TEXT NOT NULL,
            rel_err REAL,
            wall_time REAL,
            message TEXT,
            details TEXT
        );
        CREATE INDEX IF NOT EXISTS idx_runs_created_at
        ON runs (created_at DESC);
        CREATE INDEX IF NOT EXISTS idx_checks_run_id
        ON checks (run_id);
        CREATE INDEX IF NOT EXISTS idx_checks_case_tag
        ON checks (case_tag);
        """
    )
    conn.commit()


def configure(path: Union[str, Path]) -> None:
    """Point the ledger at ``path``; an open connection to another file is closed."""
    global _DB_PATH
    target = Path(path)
    with _LOCK:
        if target == _DB_PATH:
            return
        _close_locked()
        _DB_PATH = target


def get_connection() -> sqlite3.Connection:
    global _CONNECTION
    if _CONNECTION is None:
        with _LOCK:
            if _CONNECTION is None:
                conn = sqlite3.connect(_resolve_db_path(), check_same_thread=False)
                conn.row_factory = sqlite3.Row
                _apply_schema(conn)
                _CONNECTION = conn
    return _CONNECTION


def _close_locked() -> None:
    global _CONNECTION
    if _CONNECTION is not None:
        _CONNECTION.close()
        _CONNECTION = None


def close_connection() -> None:
    with _LOCK:
        _close_locked()


def current_path() -> Path:
    return _DB_PATH


__all__ = ["close_connection", "configure", "current_path", "get_connection"]
