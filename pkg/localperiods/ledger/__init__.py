"""Run ledger: verification runs and their check records in SQLite."""
from __future__ import annotations

import json
import sys
from typing import Any, Mapping, Optional

from . import repository
from .database import close_connection, configure, current_path
from .repository import count_checks, delete_runs, get_run, query_checks, query_runs

_ENABLED = True


def set_enabled(enabled: bool) -> None:
    global _ENABLED
    _ENABLED = bool(enabled)


def is_enabled() -> bool:
    return _ENABLED


def _dump(metadata: Optional[Any]) -> Optional[str]:
    if metadata is None:
        return None
    try:
        return json.dumps(metadata, ensure_ascii=False, sort_keys=True)
    except (TypeError, ValueError):
        return json.dumps({"value": str(metadata)}, ensure_ascii=False)


def record_run(
    command: str,
    *,
    seed: Optional[int] = None,
    status: str = "running",
    message: Optional[str] = None,
    metadata: Optional[Any] = None,
) -> Optional[int]:
    """Persist a run entry. Swallows DB errors so a run never fails on bookkeeping."""
    if not command:
        raise ValueError("command is required")
    if not _ENABLED:
        return None
    payload = {
        "command": command,
        "seed": seed,
        "status": (status or "running").lower(),
        "message": message,
        "details": _dump(metadata),
    }
    try:
        return repository.insert_run(payload)
    except Exception as exc:  # pragma: no cover - logging fallback
        print(f"[run-ledger] Failed to record run '{command}': {exc}", file=sys.stderr)
        return None


def finish_run(
    run_id: Optional[int],
    status: str,
    message: Optional[str] = None,
    metadata: Optional[Any] = None,
) -> bool:
    if run_id is None or not _ENABLED:
        return False
    try:
        return repository.update_run(run_id, status.lower(), message, _dump(metadata))
    except Exception as exc:  # pragma: no cover - logging fallback
        print(f"[run-ledger] Failed to close run {run_id}: {exc}", file=sys.stderr)
        return False


def record_check(run_id: Optional[int], record: Mapping[str, Any]) -> Optional[int]:
    """Persist one check record (the ``to_dict`` form of a harness record)."""
    if run_id is None or not _ENABLED:
        return None
    payload = {
        "run_id": run_id,
        "case_tag": record.get("case") or "?",
        "kind": record.get("kind") or "?",
        "status": "pass" if record.get("pass") else ("error" if record.get("error") else "fail"),
        "rel_err": record.get("relErr"),
        "wall_time": record.get("wallTime"),
        "message": record.get("error"),
        "details": _dump(dict(record)),
    }
    try:
        return repository.insert_check(payload)
    except Exception as exc:  # pragma: no cover - logging fallback
        print(f"[run-ledger] Failed to record check for run {run_id}: {exc}", file=sys.stderr)
        return None


__all__ = [
    "close_connection",
    "configure",
    "count_checks",
    "current_path",
    "delete_runs",
    "finish_run",
    "get_run",
    "is_enabled",
    "query_checks",
    "query_runs",
    "record_check",
    "record_run",
    "set_enabled",
]
