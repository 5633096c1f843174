"""Bit-stable JSON and CSV serialization of suite reports."""
from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path
from typing import List, Optional, Union

from ..errors import ConfigError
from .models import REPORT_FORMATS, CheckRecord, Report, round_sig

PathLike = Union[str, Path]

CSV_FIELDS = (
    "case",
    "point_s",
    "point_w",
    "oracle_re",
    "oracle_im",
    "closed_re",
    "closed_im",
    "rel_err",
    "pass",
)


def format_number(x: Optional[float]) -> str:
    if x is None:
        return ""
    return f"{round_sig(x):.15g}"


def format_point(z: Optional[complex]) -> str:
    if z is None:
        return ""
    z = complex(z)
    if z.imag == 0:
        return format_number(z.real)
    return f"{format_number(z.real)}{'+' if z.imag > 0 else '-'}{format_number(abs(z.imag))}j"


def _case_column(record: CheckRecord) -> str:
    label = f"{record.case}/{record.kind}"
    if record.v is not None:
        label += f" v={record.v}"
    return label


def csv_row(record: CheckRecord) -> List[str]:
    oracle = None if record.oracle is None else complex(record.oracle)
    closed = None if record.closed is None else complex(record.closed)
    return [
        _case_column(record),
        format_point(record.s),
        format_point(record.w),
        format_number(None if oracle is None else oracle.real),
        format_number(None if oracle is None else oracle.imag),
        format_number(None if closed is None else closed.real),
        format_number(None if closed is None else closed.imag),
        format_number(record.rel_err),
        "true" if record.passed else "false",
    ]


def render_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2, ensure_ascii=False) + "\n"


def render_csv(report: Report) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for record in report.records:
        writer.writerow(csv_row(record))
    return buffer.getvalue()


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ConfigError(f"unknown report format {fmt!r}; expected one of {', '.join(REPORT_FORMATS)}")


def emit_report(report: Report, fmt: str, path: Optional[PathLike] = None) -> str:
    """Write the report (stdout when ``path`` is None) and return the text written."""
    text = render(report, fmt)
    if path is None:
        sys.stdout.write(text)
        return text
    target = Path(path)
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        with open(target, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {target}: {exc.strerror or exc}") from exc
    return text


__all__ = ["CSV_FIELDS", "csv_row", "emit_report", "format_number", "format_point", "render", "render_csv", "render_json"]
