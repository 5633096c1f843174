"""Suite descriptors, check records and reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..engine.models import CASE_TAGS

CASE_CHECKS = ("oracle-P", "oracle-I", "P0", "denominator", "delta-I", "vanishing", "matrix-coefficient")
LEMMA_KINDS = (
    "decomp",
    "gauss-shift",
    "weil-level",
    "torus-sum",
    "square-level",
    "weil-relations",
    "kirillov-relations",
    "kirillov-moment",
)
REPORT_FORMATS = ("json", "csv")

SIGNIFICANT_DIGITS = 15


def round_sig(x: float) -> float:
    return float(f"{x:.{SIGNIFICANT_DIGITS}g}")


def complex_pair(z: Optional[complex]) -> Optional[List[float]]:
    if z is None:
        return None
    z = complex(z)
    return [round_sig(z.real), round_sig(z.imag)]


@dataclass(frozen=True)
class Descriptor:
    """One entry of a suite: a case tag with its parameter grid, or a lemma check."""

    tag: str
    params: Dict[str, Any] = field(default_factory=dict)
    s: Tuple[complex, ...] = (0.25,)
    w: Tuple[complex, ...] = (0.5,)
    valuations: Tuple[int, ...] = (0, 1, 2)
    checks: Tuple[str, ...] = ("oracle-P",)
    depth: Optional[int] = None
    tol: Optional[float] = None
    tail_mode: str = "analytic-geometric"
    label: Optional[str] = None

    @property
    def is_lemma(self) -> bool:
        return self.tag in LEMMA_KINDS

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        parts = [self.tag]
        for key in ("p", "q", "c", "k"):
            if key in self.params:
                parts.append(f"{key}={self.params[key]}")
        return " ".join(parts)


@dataclass(frozen=True)
class SuiteConfig:
    descriptors: Tuple[Descriptor, ...]
    format: str = "json"
    seed: int = 0
    tol: Optional[float] = None
    depth: int = 24
    name: str = "suite"


@dataclass(frozen=True)
class CheckRecord:
    case: str
    kind: str
    s: Optional[complex] = None
    w: Optional[complex] = None
    v: Optional[int] = None
    oracle: Optional[complex] = None
    closed: Optional[complex] = None
    abs_err: Optional[float] = None
    rel_err: Optional[float] = None
    passed: bool = False
    error: Optional[str] = None
    wall_time: float = 0.0

    def to_dict(self, include_wall_time: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "case": self.case,
            "kind": self.kind,
            "s": complex_pair(self.s),
            "w": complex_pair(self.w),
            "v": self.v,
            "oracle": complex_pair(self.oracle),
            "closed": complex_pair(self.closed),
            "absErr": None if self.abs_err is None else round_sig(self.abs_err),
            "relErr": None if self.rel_err is None else round_sig(self.rel_err),
            "pass": self.passed,
            "error": self.error,
        }
        if include_wall_time:
            data["wallTime"] = round(self.wall_time, 6)
        return data


@dataclass(frozen=True)
class Report:
    name: str
    seed: int
    records: Tuple[CheckRecord, ...]

    @property
    def failed(self) -> bool:
        return any(not record.passed for record in self.records)

    def summary(self) -> Dict[str, Any]:
        by_case: Dict[str, Dict[str, int]] = {}
        for record in self.records:
            entry = by_case.setdefault(record.case, {"passed": 0, "failed": 0, "errors": 0})
            if record.passed:
                entry["passed"] += 1
            else:
                entry["failed"] += 1
                if record.error:
                    entry["errors"] += 1
        passed = sum(1 for record in self.records if record.passed)
        return {
            "name": self.name,
            "seed": self.seed,
            "total": len(self.records),
            "passed": passed,
            "failed": len(self.records) - passed,
            "errors": sum(1 for record in self.records if record.error),
            "byCase": {key: by_case[key] for key in sorted(by_case)},
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "checks": [record.to_dict(include_wall_time=False) for record in self.records],
            "summary": self.summary(),
        }


__all__ = [
    "CASE_CHECKS",
    "CASE_TAGS",
    "CheckRecord",
    "Descriptor",
    "LEMMA_KINDS",
    "REPORT_FORMATS",
    "Report",
    "SuiteConfig",
    "complex_pair",
    "round_sig",
]
