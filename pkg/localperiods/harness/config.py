"""JSON suite configuration parsed into ``SuiteConfig``; unknown keys are rejected."""
from __future__ import annotations

import inspect
import json
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from ..engine.cases import BUILDERS
from ..engine.models import CASE_TAGS, TAIL_MODES
from ..errors import ConfigError
from .models import CASE_CHECKS, LEMMA_KINDS, REPORT_FORMATS, Descriptor, SuiteConfig

PathLike = Union[str, Path]

RANDOM = "random"

_SUITE_KEYS = {"name", "format", "seed", "tol", "depth", "cases"}
_DESCRIPTOR_KEYS = {"tag", "params", "s", "w", "valuations", "checks", "depth", "tol", "tailMode", "label"}
_COMPLEX_PARAMS = {"mu1", "mu2", "central"}
_INT_PARAMS = {"p", "q", "c", "k", "D", "precision"}
_LEMMA_PARAMS = {
    "decomp": {"q", "c"},
    "gauss-shift": {"p", "k", "i"},
    "weil-level": {"p", "c"},
    "torus-sum": {"p", "c"},
    "square-level": {"p", "c"},
    "weil-relations": {"p", "c"},
    "kirillov-relations": {"p", "c"},
    "kirillov-moment": {"p", "c", "central"},
}


def parse_complex(value: Any, where: str) -> complex:
    """A JSON number or an [re, im] pair."""
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2 and all(
        isinstance(part, (int, float)) and not isinstance(part, bool) for part in value
    ):
        return complex(value[0], value[1])
    raise ConfigError(f"{where}: expected a number or [re, im], got {value!r}")


def _parse_int(value: Any, where: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(f"{where}: must be >= {minimum}, got {value}")
    return value


def _parse_tol(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not 0 < value < 1:
        raise ConfigError(f"{where}: tolerance must be a number in (0, 1), got {value!r}")
    return float(value)


def _as_list(value: Any) -> List[Any]:
    return list(value) if isinstance(value, list) else [value]


def _check_keys(data: Mapping[str, Any], allowed: set, where: str) -> None:
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {', '.join(unknown)}")


def _allowed_params(tag: str) -> set:
    if tag in _LEMMA_PARAMS:
        return _LEMMA_PARAMS[tag]
    return set(inspect.signature(BUILDERS[tag]).parameters)


def _parse_params(tag: str, raw: Any, where: str) -> Dict[str, Any]:
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}.params: expected an object")
    _check_keys(raw, _allowed_params(tag), f"{where}.params")
    params: Dict[str, Any] = {}
    for key in sorted(raw):
        value = raw[key]
        at = f"{where}.params.{key}"
        if key == "chars":
            if value == RANDOM:
                params[key] = RANDOM
            elif isinstance(value, list):
                params[key] = tuple(parse_complex(item, f"{at}[{n}]") for n, item in enumerate(value))
            else:
                raise ConfigError(f"{at}: expected a list of values or {RANDOM!r}")
        elif key == "mu":
            params[key] = tuple(parse_complex(item, f"{at}[{n}]") for n, item in enumerate(_as_list(value)))
        elif key == "i":
            params[key] = tuple(_parse_int(item, at) for item in _as_list(value))
        elif key in _COMPLEX_PARAMS:
            params[key] = parse_complex(value, at)
        elif key in _INT_PARAMS:
            params[key] = _parse_int(value, at, minimum=1 if key != "D" else None)
        else:
            raise ConfigError(f"{at}: parameter is not configurable")
    return params


def parse_descriptor(data: Any, index: int) -> Descriptor:
    where = f"cases[{index}]"
    if not isinstance(data, dict):
        raise ConfigError(f"{where}: expected an object")
    _check_keys(data, _DESCRIPTOR_KEYS, where)
    tag = data.get("tag")
    if tag not in CASE_TAGS and tag not in LEMMA_KINDS:
        raise ConfigError(f"{where}.tag: unknown tag {tag!r}")
    params = _parse_params(tag, data.get("params", {}), where)
    if tag in LEMMA_KINDS:
        missing = sorted(_LEMMA_PARAMS[tag] - set(params))
        if missing:
            raise ConfigError(f"{where}.params: {tag} needs {', '.join(missing)}")
        if "checks" in data:
            raise ConfigError(f"{where}: lemma entries take no checks")
        checks: Tuple[str, ...] = (tag,)
    else:
        checks = tuple(_as_list(data.get("checks", ["oracle-P"])))
        bad = [kind for kind in checks if kind not in CASE_CHECKS]
        if bad or not checks:
            raise ConfigError(f"{where}.checks: unknown checks {bad or checks!r}")
    tail_mode = data.get("tailMode", "analytic-geometric")
    if tail_mode not in TAIL_MODES:
        raise ConfigError(f"{where}.tailMode: unknown mode {tail_mode!r}")
    label = data.get("label")
    if label is not None and not isinstance(label, str):
        raise ConfigError(f"{where}.label: expected a string")
    return Descriptor(
        tag=tag,
        params=params,
        s=tuple(parse_complex(v, f"{where}.s") for v in _as_list(data.get("s", [0.25]))),
        w=tuple(parse_complex(v, f"{where}.w") for v in _as_list(data.get("w", [0.5]))),
        valuations=tuple(_parse_int(v, f"{where}.valuations") for v in _as_list(data.get("valuations", [0, 1, 2]))),
        checks=checks,
        depth=None if "depth" not in data else _parse_int(data["depth"], f"{where}.depth", minimum=4),
        tol=None if "tol" not in data else _parse_tol(data["tol"], f"{where}.tol"),
        tail_mode=tail_mode,
        label=label,
    )


def parse_config(data: Any) -> SuiteConfig:
    if not isinstance(data, dict):
        raise ConfigError("suite configuration must be a JSON object")
    _check_keys(data, _SUITE_KEYS, "suite")
    fmt = data.get("format", "json")
    if fmt not in REPORT_FORMATS:
        raise ConfigError(f"suite.format: expected one of {', '.join(REPORT_FORMATS)}, got {fmt!r}")
    cases = data.get("cases", [])
    if not isinstance(cases, list):
        raise ConfigError("suite.cases: expected a list")
    name = data.get("name", "suite")
    if not isinstance(name, str):
        raise ConfigError("suite.name: expected a string")
    return SuiteConfig(
        descriptors=tuple(parse_descriptor(item, n) for n, item in enumerate(cases)),
        format=fmt,
        seed=_parse_int(data.get("seed", 0), "suite.seed", minimum=0),
        tol=None if "tol" not in data else _parse_tol(data["tol"], "suite.tol"),
        depth=_parse_int(data.get("depth", 24), "suite.depth", minimum=4),
        name=name,
    )


def load_config(path: PathLike) -> SuiteConfig:
    target = Path(path)
    try:
        text = target.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read suite configuration {target}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{target}: invalid JSON - {exc}") from exc
    return parse_config(data)


__all__ = ["RANDOM", "load_config", "parse_complex", "parse_config", "parse_descriptor"]
