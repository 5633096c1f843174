"""Persistence helpers for ledger runs and check records."""
from __future__ import annotations

import json
from typing import Dict, List, Mapping, Optional, Tuple

from .database import get_connection

_RUN_COLUMNS = ("command", "seed", "status", "message", "details")

_CHECK_COLUMNS = (
    "run_id",
    "case_tag",
    "kind",
    "status",
    "rel_err",
    "wall_time",
    "message",
    "details",
)


def _insert(table: str, columns: Tuple[str, ...], payload: Mapping[str, object]) -> int:
    conn = get_connection()
    placeholders = ", ".join("?" for _ in columns)
    column_sql = ", ".join(columns)
    values = [payload.get(column) for column in columns]
    with conn:
        cursor = conn.execute(
            f"""
            INSERT INTO {table} ({column_sql})
            VALUES ({placeholders})
            """,
            values,
        )
    return int(cursor.lastrowid)


def insert_run(payload: Mapping[str, object]) -> int:
    return _insert("runs", _RUN_COLUMNS, payload)


def insert_check(payload: Mapping[str, object]) -> int:
    return _insert("checks", _CHECK_COLUMNS, payload)


def update_run(run_id: int, status: str, message: Optional[str], details: Optional[str]) -> bool:
    conn = get_connection()
    with conn:
        cursor = conn.execute(
            """
            UPDATE runs
            SET status = ?, message = ?, details = COALESCE(?, details), finished_at = datetime('now')
            WHERE id = ?
            """,
            (status, message, details, run_id),
        )
    return cursor.rowcount > 0


def _parse_details(raw: Optional[str]) -> Optional[object]:
    if not raw:
        return None
    try:
        return json.loads(raw)
    except (TypeError, ValueError):
        return raw


def _run_to_dict(row) -> Dict[str, object]:
    return {
        "id": row["id"],
        "created_at": row["created_at"],
        "finished_at": row["finished_at"],
        "command": row["command"],
        "seed": row["seed"],
        "status": row["status"],
        "message": row["message"],
        "details": _parse_details(row["details"]),
    }


def _check_to_dict(row) -> Dict[str, object]:
    return {
        "id": row["id"],
        "run_id": row["run_id"],
        "created_at": row["created_at"],
        "case_tag": row["case_tag"],
        "kind": row["kind"],
        "status": row["status"],
        "rel_err": row["rel_err"],
        "wall_time": row["wall_time"],
        "message": row["message"],
        "details": _parse_details(row["details"]),
    }


def _build_filters(
    *,
    run_id: Optional[int] = None,
    case_tag: Optional[str] = None,
    kind: Optional[str] = None,
    status: Optional[str] = None,
    keyword: Optional[str] = None,
) -> Tuple[str, List[object]]:
    conditions: List[str] = []
    params: List[object] = []
    if run_id is not None:
        conditions.append("run_id = ?")
        params.append(run_id)
    if case_tag:
        conditions.append("case_tag = ?")
        params.append(case_tag)
    if kind:
        conditions.append("kind = ?")
        params.append(kind)
    if status:
        conditions.append("status = ?")
        params.append(status.lower())
    if keyword:
        conditions.append("(message LIKE ? OR details LIKE ?)")
        like = f"%{keyword}%"
        params.extend([like, like])

    where_clause = ""
    if conditions:
        where_clause = "WHERE " + " AND ".join(f"({cond})" for cond in conditions)
    return where_clause, params


def query_checks(limit: Optional[int] = 20, offset: int = 0, **filters) -> List[Dict[str, object]]:
    where_clause, params = _build_filters(**filters)
    sql = f"""
    SELECT *
    FROM checks
    {where_clause}
    ORDER BY id DESC
    """
    if limit is not None:
        sql += " LIMIT ? OFFSET ?"
        params.extend([max(1, limit), max(0, offset)])

    conn = get_connection()
    rows = conn.execute(sql, params).fetchall()
    return [_check_to_dict(row) for row in rows]


def count_checks(**filters) -> int:
    where_clause, params = _build_filters(**filters)
    conn = get_connection()
    row = conn.execute(f"SELECT COUNT(1) AS cnt FROM checks {where_clause}", params).fetchone()
    return int(row["cnt"] if row else 0)


def get_run(run_id: int) -> Optional[Dict[str, object]]:
    conn = get_connection()
    row = conn.execute("SELECT * FROM runs WHERE id = ?", (run_id,)).fetchone()
    return _run_to_dict(row) if row else None


def query_runs(limit: Optional[int] = 20) -> List[Dict[str, object]]:
    sql = "SELECT * FROM runs ORDER BY id DESC"
    params: List[object] = []
    if limit is not None:
        sql += " LIMIT ?"
        params.append(max(1, limit))
    conn = get_connection()
    return [_run_to_dict(row) for row in conn.execute(sql, params).fetchall()]


def delete_runs(before_time: Optional[str] = None) -> int:
    """Delete runs (and, by cascade, their checks); returns the number of runs removed."""
    conn = get_connection()
    if before_time:
        sql = "DELETE FROM runs WHERE datetime(created_at) <= datetime(?)"
        params: Tuple[object, ...] = (before_time,)
    else:
        sql = "DELETE FROM runs"
        params = ()
    with conn:
        cursor = conn.execute(sql, params)
    return cursor.rowcount


__all__ = [
    "count_checks",
    "delete_runs",
    "get_run",
    "insert_check",
    "insert_run",
    "query_checks",
    "query_runs",
    "update_run",
]
