"""Plain-text expected L-factor and P0 tables for the ``table`` subcommand."""
from __future__ import annotations

from typing import List, Sequence

from ..engine import CaseSpec, l_factor_table, normalized_P0, p0_table_value
from ..errors import LocalPeriodsError
from .report import format_point


def _factor_line(factor) -> str:
    return f"    1 - ({format_point(factor.coefficient)}) q^(-{factor.s_degree}s)   [{factor.label}]"


def render_table(case: CaseSpec, points: Sequence[complex]) -> List[str]:
    table = l_factor_table(case)
    lines = [f"{case.label}  (p={case.ctx.p}, level {case.level}, route {case.route})"]
    lines.append("  numerator L-factors:")
    lines.extend(_factor_line(f) for f in table.numerator)
    lines.append("  denominator L-factors:")
    if table.denominator:
        lines.extend(_factor_line(f) for f in table.denominator)
    else:
        lines.append("    (none)")
    lines.append("  P0 at w = 1/2:")
    for s in points:
        try:
            normalized = format_point(normalized_P0(case, s))
            tabulated = format_point(p0_table_value(case, s))
        except LocalPeriodsError as exc:
            lines.append(f"    s={format_point(s)}: {type(exc).__name__}: {exc}")
            continue
        lines.append(f"    s={format_point(s)}: normalized {normalized}  table {tabulated}")
    return lines


__all__ = ["render_table"]
