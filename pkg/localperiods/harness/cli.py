"""Command line: verify, table, probe and ledger subcommands."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Dict, List, Optional, Sequence

from .. import ledger
from ..engine import EvalPoint, build_case, closed_I, closed_P, oracle_I, oracle_P
from ..engine.oracle import EXACT
from ..errors import ConfigError, LocalPeriodsError
from ..kirillov import SymbolicValue
from ..padic import TruncatedElement
from ..paths import DEFAULT_SUITE_PATH
from ..settings import Settings, load_settings
from .config import load_config, parse_descriptor
from .models import REPORT_FORMATS, CheckRecord, Descriptor
from .report import emit_report, format_number, format_point
from .runner import C1_TOL, errors_of, resolve_params, run_suite
from .tables import render_table

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _info(message: str, quiet: bool) -> None:
    if not quiet:
        print(f"INFO: {message}", file=sys.stderr)


def _warn(message: str, quiet: bool) -> None:
    if not quiet:
        print(f"WARN: {message}", file=sys.stderr)


def _error(message: str) -> None:
    print(f"ERROR: {message}", file=sys.stderr)


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _parse_pairs(pairs: Sequence[str]) -> Dict[str, object]:
    params: Dict[str, object] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"--param expects KEY=VALUE, got {pair!r}")
        params[key.strip()] = _parse_value(value.strip())
    return params


def _descriptor_from_args(args: argparse.Namespace, extra: Optional[Dict[str, object]] = None) -> Descriptor:
    data: Dict[str, object] = {"tag": args.tag, "params": _parse_pairs(args.param)}
    if args.s:
        data["s"] = [_parse_value(s) for s in args.s]
    data.update(extra or {})
    return parse_descriptor(data, 0)


def _open_ledger(settings: Settings) -> None:
    ledger.set_enabled(settings.ledger_enabled)
    if settings.ledger_enabled:
        ledger.configure(settings.ledger_path)


# -- subcommands ----------------------------------------------------------------
def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config = replace(config, seed=args.seed)
    fmt = args.format or config.format
    _open_ledger(settings)
    run_id = ledger.record_run(
        "verify",
        seed=config.seed,
        metadata={"config": str(args.config), "name": config.name, "settings": settings.to_dict()},
    )
    _info(f"running suite '{config.name}' ({len(config.descriptors)} descriptors, seed {config.seed})", args.quiet)

    def on_record(record: CheckRecord) -> None:
        ledger.record_check(run_id, record.to_dict())
        if not record.passed:
            detail = record.error or f"rel_err {format_number(record.rel_err)}"
            _warn(f"{record.case}/{record.kind} failed: {detail}", args.quiet)

    report = run_suite(
        config,
        workers=settings.workers,
        precision=settings.precision,
        depth_override=args.depth_override,
        tol_override=args.tol,
        default_tol=settings.tol,
        on_record=on_record,
    )
    emit_report(report, fmt, args.out)
    summary = report.summary()
    status = "failure" if report.failed else "success"
    ledger.finish_run(run_id, status, f"{summary['passed']}/{summary['total']} checks passed", summary)
    _info(f"{summary['passed']}/{summary['total']} checks passed", args.quiet)
    return EXIT_FAILED if report.failed else EXIT_OK


def cmd_table(args: argparse.Namespace, settings: Settings) -> int:
    descriptor = _descriptor_from_args(args)
    if descriptor.is_lemma:
        raise ConfigError("table needs a case tag")
    case = build_case(descriptor.tag, **resolve_params(descriptor, args.seed or 0, 0, settings.precision))
    for line in render_table(case, descriptor.s):
        print(line)
    return EXIT_OK


def cmd_probe(args: argparse.Namespace, settings: Settings) -> int:
    extra: Dict[str, object] = {"w": [_parse_value(args.w)]}
    descriptor = _descriptor_from_args(args, extra)
    if descriptor.is_lemma:
        raise ConfigError("probe needs a case tag")
    case = build_case(descriptor.tag, **resolve_params(descriptor, args.seed or 0, 0, settings.precision))
    s, w = descriptor.s[0], descriptor.w[0]
    tol = args.tol or settings.tol
    _open_ledger(settings)
    run_id = ledger.record_run("probe", seed=args.seed, metadata={"tag": descriptor.tag, "name": descriptor.name})
    try:
        if args.v is not None:
            alpha = TruncatedElement(case.ctx.p, args.v, 1, args.v + EXACT)
            kind, oracle, closed = "oracle-I", oracle_I(case, alpha, s), closed_I(case, alpha, s)
        else:
            point = EvalPoint(s, w, args.depth_override or EvalPoint(s).depth)
            kind, oracle, closed = "oracle-P", oracle_P(case, point), closed_P(case, s, w)
    except LocalPeriodsError as exc:
        ledger.finish_run(run_id, "error", f"{type(exc).__name__}: {exc}")
        raise
    if isinstance(oracle, SymbolicValue):
        print(f"symbolic: {oracle}")
        oracle = oracle.pruned(C1_TOL).to_complex()
    abs_err, rel_err = errors_of(oracle, closed)
    record = CheckRecord(
        descriptor.name, kind, s=s, w=w if args.v is None else None, v=args.v,
        oracle=complex(oracle), closed=complex(closed), abs_err=abs_err, rel_err=rel_err, passed=rel_err < tol,
    )
    ledger.record_check(run_id, record.to_dict())
    ledger.finish_run(run_id, "success" if record.passed else "failure")
    print(f"oracle  {format_point(record.oracle)}")
    print(f"closed  {format_point(record.closed)}")
    print(f"rel_err {format_number(rel_err)}  {'pass' if record.passed else 'FAIL'}")
    return EXIT_OK if record.passed else EXIT_FAILED


def cmd_ledger(args: argparse.Namespace, settings: Settings) -> int:
    if not settings.ledger_enabled:
        _warn("run ledger is disabled in the settings file", args.quiet)
        return EXIT_OK
    ledger.configure(settings.ledger_path)
    if args.clear:
        deleted = ledger.delete_runs(before_time=args.before)
        _info(f"deleted {deleted} runs", args.quiet)
        return EXIT_OK
    filters = {"run_id": args.run, "case_tag": args.case, "status": args.status}
    items = ledger.query_checks(limit=args.limit, **filters)
    total = ledger.count_checks(**filters)
    for item in items:
        rel = "" if item["rel_err"] is None else f" rel_err={format_number(item['rel_err'])}"
        message = f" ({item['message']})" if item["message"] else ""
        print(f"#{item['id']} run {item['run_id']} {item['created_at']} {item['case_tag']}/{item['kind']} {item['status']}{rel}{message}")
    _info(f"showing {len(items)} of {total} recorded checks", args.quiet)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------
def _case_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tag", required=True, help="case tag, e.g. U-INERT")
    parser.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="builder parameter (JSON value)")
    parser.add_argument("--s", action="append", default=[], help="s value (number or [re, im]); repeatable")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--settings", default=None, help="dotenv settings file (default: localperiods.env)")
    common.add_argument("--quiet", action="store_true", help="suppress INFO/WARN diagnostics")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized character values")

    parser = argparse.ArgumentParser(prog="localperiods", description="Local period verification harness")
    sub = parser.add_subparsers(dest="command")

    verify = sub.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("--config", default=str(DEFAULT_SUITE_PATH), help="suite configuration (JSON)")
    verify.add_argument("--out", default=None, help="report path (default: stdout)")
    verify.add_argument("--format", choices=REPORT_FORMATS, default=None)
    verify.add_argument("--depth-override", type=int, default=None, help="shell depth for every P check")
    verify.add_argument("--tol", type=float, default=None, help="relative tolerance for every check")
    verify.set_defaults(handler=cmd_verify)

    table = sub.add_parser("table", parents=[common], help="print expected L-factors and the P0 table")
    _case_arguments(table)
    table.set_defaults(handler=cmd_table)

    probe = sub.add_parser("probe", parents=[common], help="single oracle_P (or oracle_I with --v) evaluation")
    _case_arguments(probe)
    probe.add_argument("--w", default="0.5", help="w value (number or [re, im])")
    probe.add_argument("--v", type=int, default=None, help="evaluate oracle_I on the shell v(alpha) = v")
    probe.add_argument("--depth-override", type=int, default=None)
    probe.add_argument("--tol", type=float, default=None)
    probe.set_defaults(handler=cmd_probe)

    history = sub.add_parser("ledger", parents=[common], help="list recorded checks")
    history.add_argument("--limit", type=int, default=20)
    history.add_argument("--run", type=int, default=None)
    history.add_argument("--case", default=None, help="exact case name")
    history.add_argument("--status", choices=("pass", "fail", "error"), default=None)
    history.add_argument("--clear", action="store_true", help="delete recorded runs")
    history.add_argument("--before", default=None, help="with --clear: only runs created before this time")
    history.set_defaults(handler=cmd_ledger)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    arguments: List[str] = list(sys.argv[1:] if argv is None else argv)
    if not arguments or (arguments[0].startswith("-") and arguments[0] not in ("-h", "--help")):
        arguments.insert(0, "verify")
    parser = build_parser()
    args = parser.parse_args(arguments)
    try:
        settings = load_settings(args.settings)
        return args.handler(args, settings)
    except LocalPeriodsError as exc:
        _error(f"{type(exc).__name__}: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _error(str(exc))
        return EXIT_USAGE


__all__ = ["build_parser", "main"]
