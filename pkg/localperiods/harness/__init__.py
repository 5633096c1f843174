"""Batch verification: suite configs, check runs, reports and the command line."""
from __future__ import annotations

from .cli import build_parser, main
from .config import load_config, parse_config, parse_descriptor
from .models import CheckRecord, Descriptor, Report, SuiteConfig
from .report import CSV_FIELDS, emit_report, render
from .runner import prepare, run_suite
from .tables import render_table

__all__ = [
    "CSV_FIELDS",
    "CheckRecord",
    "Descriptor",
    "Report",
    "SuiteConfig",
    "build_parser",
    "emit_report",
    "load_config",
    "main",
    "parse_config",
    "parse_descriptor",
    "prepare",
    "render",
    "render_table",
    "run_suite",
]
