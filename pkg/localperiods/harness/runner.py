"""Suite execution: build every case, then run the requested checks on a worker pool."""
from __future__ import annotations

import cmath
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from ..characters import (
    character_square_level,
    eval_character,
    find_character,
    gauss_shift_integral,
    gauss_shift_rule,
    make_unit_character,
    torus_character_sum,
    torus_full_sum,
    trivial_on_f_units,
)
from ..engine import (
    CaseSpec,
    EvalPoint,
    build_case,
    c1_coefficient,
    character_values,
    closed_I,
    closed_P,
    default_discriminant,
    delta_I,
    denominator_check,
    matrix_coeff_integral,
    normalized_P0,
    oracle_I,
    oracle_P,
    p0_table_value,
    vanishing_report,
)
from ..engine.closed import matrix_coefficient_value
from ..engine.oracle import EXACT
from ..errors import ContextError, LocalPeriodsError
from ..kirillov import (
    C1,
    KirillovVector,
    SupercuspidalParams,
    SymbolicValue,
    kirillov_moment,
    omega_act,
    relation_profiles,
    twist_level,
)
from ..padic import TruncatedElement, make_extension_element, make_field_context
from ..sections import decomp_coefficients, k0_volume, tail_volumes
from ..weil import (
    exotic_function,
    level_function,
    max_deviation,
    minus_one_word,
    n_lower_word,
    omega_word,
    predicted_image,
    weil_apply,
)
from ..whittaker import supercuspidal_rep, whittaker_moment
from .config import RANDOM
from .models import CheckRecord, Descriptor, Report, SuiteConfig

C1_TOL = 1e-10
VANISHING_TOL = 1e-9
ZERO_SCALE = 1e-12
DEFAULT_TOL = 1e-6

CHAR_COUNTS = {
    "U-INERT": 2,
    "U-SPLIT": 4,
    "R1-RAMEXT": 2,
    "R2-SPECIAL": 3,
    "R3-SC-SPLIT": 3,
    "R3-RPS-SPLIT": 3,
    "R4-RAMCHI": 2,
    "R5-JOINT": 2,
}

Task = Callable[[], List[CheckRecord]]


@dataclass(frozen=True)
class Prepared:
    descriptor: Descriptor
    case: Optional[CaseSpec] = None
    error: Optional[str] = None


def errors_of(oracle: complex, closed: complex) -> Tuple[float, float]:
    """(|oracle - closed|, the same relative to |closed|, absolute when closed is zero)."""
    abs_err = abs(complex(oracle) - complex(closed))
    scale = abs(complex(closed))
    return abs_err, abs_err / scale if scale > ZERO_SCALE else abs_err


def compared(descriptor: Descriptor, kind: str, oracle: complex, closed: complex, tol: float, **point) -> CheckRecord:
    abs_err, rel_err = errors_of(oracle, closed)
    return CheckRecord(
        descriptor.name,
        kind,
        oracle=complex(oracle),
        closed=complex(closed),
        abs_err=abs_err,
        rel_err=rel_err,
        passed=rel_err < tol,
        **point,
    )


def random_chars(tag: str, seed: int, index: int) -> Tuple[complex, ...]:
    """Unit-modulus character values drawn from (seed, descriptor index)."""
    rng = np.random.default_rng([seed, index])
    phases = rng.random(CHAR_COUNTS.get(tag, 2))
    return tuple(complex(cmath.exp(2j * math.pi * round(float(t), 12))) for t in phases)


def resolve_params(descriptor: Descriptor, seed: int, index: int, precision: Optional[int]) -> Dict[str, object]:
    params = dict(descriptor.params)
    if params.get("chars") == RANDOM:
        params["chars"] = random_chars(descriptor.tag, seed, index)
    if precision is not None:
        params.setdefault("precision", precision)
    return params


def prepare(config: SuiteConfig, precision: Optional[int] = None) -> List[Prepared]:
    """Construct every case before any computation; failures become per-descriptor errors."""
    prepared = []
    for index, descriptor in enumerate(config.descriptors):
        if descriptor.is_lemma:
            prepared.append(Prepared(descriptor))
            continue
        try:
            params = resolve_params(descriptor, config.seed, index, precision)
            prepared.append(Prepared(descriptor, case=build_case(descriptor.tag, **params)))
        except LocalPeriodsError as exc:
            prepared.append(Prepared(descriptor, error=str(exc)))
    return prepared


def _numeric(value) -> complex:
    if isinstance(value, SymbolicValue):
        return value.pruned(C1_TOL).to_complex()
    return complex(value)


def _alpha(case: CaseSpec, v: int) -> TruncatedElement:
    return TruncatedElement(case.ctx.p, v, 1, v + EXACT)


# -- case checks ----------------------------------------------------------------
def check_oracle_P(descriptor: Descriptor, case: CaseSpec, s: complex, w: complex, depth: int, tol: float) -> List[CheckRecord]:
    point = EvalPoint(s, w, depth, descriptor.tail_mode)
    closed = closed_P(case, s, w)
    value = oracle_P(case, point)
    c1 = c1_coefficient(value)
    record = compared(descriptor, "oracle-P", _numeric(value), closed, tol, s=s, w=w)
    if c1 >= C1_TOL:
        record = replace(record, passed=False, error=f"C1 coefficient {c1:.3g} survives")
    return [record]


def check_oracle_I(descriptor: Descriptor, case: CaseSpec, s: complex, v: int, tol: float) -> List[CheckRecord]:
    alpha = _alpha(case, v)
    closed = closed_I(case, alpha, s)
    return [compared(descriptor, "oracle-I", oracle_I(case, alpha, s), closed, tol, s=s, v=v)]


def check_delta_I(descriptor: Descriptor, case: CaseSpec, s: complex, v: int, tol: float) -> List[CheckRecord]:
    alpha = _alpha(case, v)
    gap = oracle_I(case, alpha, s) - oracle_I(case, alpha, s, shortcut=True)
    return [compared(descriptor, "delta-I", gap, delta_I(character_values(case, s), v), tol, s=s, v=v)]


def check_P0(descriptor: Descriptor, case: CaseSpec, s: complex, tol: float) -> List[CheckRecord]:
    return [compared(descriptor, "P0", normalized_P0(case, s), p0_table_value(case, s), tol, s=s, w=0.5)]


def check_denominator(descriptor: Descriptor, case: CaseSpec) -> List[CheckRecord]:
    result = denominator_check(case)
    return [
        CheckRecord(
            descriptor.name,
            "denominator",
            oracle=complex(result.residual),
            closed=0j,
            abs_err=result.residual,
            rel_err=result.residual,
            passed=result.passed,
        )
    ]


def check_vanishing(descriptor: Descriptor, case: CaseSpec, s: complex) -> List[CheckRecord]:
    records = []
    for i, beta, v, value in vanishing_report(case, s, descriptor.valuations):
        records.append(
            CheckRecord(
                f"{descriptor.name} i={i} beta={beta}",
                "vanishing",
                s=s,
                v=v,
                oracle=complex(value),
                closed=0j,
                abs_err=abs(value),
                rel_err=abs(value),
                passed=abs(value) < VANISHING_TOL,
            )
        )
    return records


def check_matrix_coefficient(descriptor: Descriptor, case: CaseSpec) -> List[CheckRecord]:
    p, c = case.ctx.p, case.rep.level
    result = matrix_coeff_integral(p, c)
    expected = Fraction(0) if c % 2 else matrix_coefficient_value(case.q, c)
    exact = result.value == expected
    return [
        CheckRecord(
            descriptor.name,
            "matrix-coefficient",
            oracle=complex(result.value),
            closed=complex(expected),
            abs_err=float(abs(result.value - expected)),
            rel_err=0.0 if exact else float(abs(result.value - expected)),
            passed=exact and (result.passed or result.vanishes_by_parity),
        )
    ]


# -- lemma checks ----------------------------------------------------------------
def check_decomp(descriptor: Descriptor) -> List[CheckRecord]:
    q, c = descriptor.params["q"], descriptor.params["c"]
    coefficients = decomp_coefficients(q, c)
    total = sum(coefficients, Fraction(0))
    records = [
        CheckRecord(
            descriptor.name, "decomp", oracle=complex(total), closed=1 + 0j,
            abs_err=float(abs(total - 1)), rel_err=float(abs(total - 1)), passed=total == 1,
        )
    ]
    tails = tail_volumes(q, c)
    for j in range(1, c + 1):
        diff = abs(tails[j] - k0_volume(q, j))
        records.append(
            CheckRecord(
                f"{descriptor.name} j={j}", "decomp", oracle=complex(tails[j]), closed=complex(k0_volume(q, j)),
                abs_err=float(diff), rel_err=float(diff / k0_volume(q, j)), passed=diff == 0,
            )
        )
    return records


def check_gauss_shift(descriptor: Descriptor, tol: float) -> List[CheckRecord]:
    p, k = descriptor.params["p"], descriptor.params["k"]
    ctx = make_field_context(p, 12, "split", 1)
    mu = find_character(ctx, k)
    return [
        compared(descriptor, "gauss-shift", gauss_shift_integral(ctx, mu, i), gauss_shift_rule(p, k, i), tol, v=i)
        for i in descriptor.params["i"]
    ]


def check_weil_level(descriptor: Descriptor, tol: float) -> List[CheckRecord]:
    p, c = descriptor.params["p"], descriptor.params["c"]
    f = level_function(p, c)
    records = []
    for j in range(c + 1):
        n = Fraction(p ** j)
        deviation, _ = max_deviation(weil_apply(n_lower_word(n), f), predicted_image(p, "K1-level-c", {"c": c, "n": n}))
        records.append(
            CheckRecord(
                descriptor.name, "weil-level", v=j, oracle=complex(deviation), closed=0j,
                abs_err=deviation, rel_err=deviation, passed=deviation < tol,
            )
        )
    return records


def verdict(name: str, kind: str, passed: bool, deviation: float = 0.0, **point) -> CheckRecord:
    """A structural check: ``deviation`` is the mismatch that should be zero."""
    return CheckRecord(
        name, kind, oracle=complex(deviation), closed=0j,
        abs_err=float(deviation), rel_err=float(deviation), passed=passed, **point,
    )


def torus_rule(c: int, i: int) -> int:
    if i == c:
        return 1
    return -1 if i == c - 1 else 0


def check_torus_sum(descriptor: Descriptor, tol: float) -> List[CheckRecord]:
    p, c = descriptor.params["p"], descriptor.params["c"]
    ctx = make_field_context(p, 12, "inert", default_discriminant(p, "inert"))
    chi = find_character(ctx, c, field="E", predicate=trivial_on_f_units)
    if c == 1:
        return [compared(descriptor, "torus-sum", torus_full_sum(ctx, chi), 0j, tol)]
    records = [
        compared(descriptor, "torus-sum", torus_character_sum(ctx, chi, i), torus_rule(c, i), tol, v=i)
        for i in range(c + 1)
    ]
    # b + sqrt D = sqrt D (1 + (b / D) sqrt D)
    root = eval_character(chi, make_extension_element(ctx, 0, 1))
    for i in range(1, c + 1):
        record = compared(descriptor, "torus-sum", torus_character_sum(ctx, chi, i, "b2"), root * torus_rule(c, i), tol, v=i)
        records.append(replace(record, case=f"{descriptor.name} b2"))
    return records


def check_square_level(descriptor: Descriptor) -> List[CheckRecord]:
    p, n = descriptor.params["p"], descriptor.params["c"]
    if n < 2:
        raise ContextError("squaring keeps the level only from level 2 on")
    ctx = make_field_context(p, 12, "inert", default_discriminant(p, "inert"))
    kept = total = 0
    for k in range((p - 1) * p ** (n - 1)):
        try:
            chi = make_unit_character(ctx, n, (k,))
        except ContextError:
            continue
        total += 1
        kept += character_square_level(chi) == n
    return [
        CheckRecord(
            descriptor.name, "square-level", oracle=complex(kept), closed=complex(total),
            abs_err=float(total - kept), rel_err=float(total - kept), passed=total > 0 and kept == total,
        )
    ]


def check_weil_relations(descriptor: Descriptor, tol: float) -> List[CheckRecord]:
    p, c = descriptor.params["p"], descriptor.params["c"]
    exotic = exotic_function(p, c, Fraction(1), Fraction(2))
    records = []
    for label, f in (("level", level_function(p, c)), ("exotic", exotic)):
        deviation, _ = max_deviation(weil_apply(omega_word() @ omega_word(), f), weil_apply(minus_one_word(), f))
        records.append(verdict(f"{descriptor.name} omega^2 {label}", "weil-relations", deviation < tol, deviation))
    for j in range(c + 1):
        n = Fraction(p ** j)
        image = predicted_image(p, "exotic-b1b2", {"c": c, "n": n, "b1": 1, "b2": 2})
        deviation, _ = max_deviation(weil_apply(n_lower_word(n), exotic), image)
        records.append(verdict(f"{descriptor.name} exotic", "weil-relations", deviation < tol, deviation, v=j))
    return records


def _profile_mismatch(left, right, exact: bool) -> int:
    shells = set(left) | set(right)
    if exact:
        return sum(1 for n in shells if left.get(n) != right.get(n))
    return sum(1 for n in shells if n not in left or n not in right or not left[n] <= right[n])


def _largest_coefficient(value: SymbolicValue) -> float:
    return max((abs(x) for x in value.terms().values()), default=0.0)


def _at_unit_constants(value: SymbolicValue) -> complex:
    return value.substitute({name: 1 for name in value.symbols}).to_complex()


def check_kirillov_relations(descriptor: Descriptor) -> List[CheckRecord]:
    p, c = descriptor.params["p"], descriptor.params["c"]
    params = SupercuspidalParams(p, c, z0=1.1)
    records = []
    for n in range(-2, 3):
        # on negative shells the left levels only need to sit inside the right ones
        mismatch = _profile_mismatch(*relation_profiles(params, n), exact=n >= 0)
        records.append(verdict(f"{descriptor.name} braid", "kirillov-relations", mismatch == 0, mismatch, v=n))
    for key in ((0, 0), (0, -1), (0, 2)):
        twice = omega_act(params, omega_act(params, KirillovVector.basis(*key)))
        gap = twice + KirillovVector.basis(*key).scale(-params.w0_at_minus_one())
        deviation = max((_largest_coefficient(value) for _, value in gap), default=0.0)
        records.append(verdict(f"{descriptor.name} omega^2", "kirillov-relations", deviation < 1e-9, deviation, v=key[1]))
    for i in range(c + 2):
        expected = c if 2 * i <= c else 2 * i
        level = twist_level(c, i, p)
        records.append(
            CheckRecord(
                f"{descriptor.name} twist", "kirillov-relations", v=i, oracle=complex(level), closed=complex(expected),
                abs_err=float(abs(level - expected)), rel_err=float(abs(level - expected)), passed=level == expected,
            )
        )
    return records


def check_kirillov_moment(descriptor: Descriptor, tol: float) -> List[CheckRecord]:
    """Kirillov-engine moments against the tabulated ones; values are shown with every formal constant set to 1."""
    p, c = descriptor.params["p"], descriptor.params["c"]
    central = descriptor.params["central"]
    params = SupercuspidalParams(p, c, z0=central)
    rep = supercuspidal_rep(p, c, central_value=central)
    records = []
    for i in range(c + 1):
        for kind in ("const", "psi"):
            engine = SymbolicValue.number(0) + kirillov_moment(params, i, kind)
            table = SymbolicValue.number(0) + whittaker_moment(rep, i, kind)
            deviation = _largest_coefficient(engine - table)
            records.append(
                CheckRecord(
                    f"{descriptor.name} {kind}", "kirillov-moment", v=i,
                    oracle=_at_unit_constants(engine), closed=_at_unit_constants(table),
                    abs_err=deviation, rel_err=deviation, passed=deviation < tol,
                )
            )
    return records


# -- assembly ---------------------------------------------------------------------
def _guard(descriptor: Descriptor, kind: str, task: Task, **point) -> Task:
    def run() -> List[CheckRecord]:
        start = time.perf_counter()
        try:
            records = task()
        except LocalPeriodsError as exc:
            records = [CheckRecord(descriptor.name, kind, error=f"{type(exc).__name__}: {exc}", **point)]
        elapsed = time.perf_counter() - start
        share = elapsed / max(1, len(records))
        return [replace(record, wall_time=share) for record in records]

    return run


def plan(
    item: Prepared,
    config: SuiteConfig,
    depth_override: Optional[int] = None,
    tol_override: Optional[float] = None,
    default_tol: float = DEFAULT_TOL,
) -> List[Task]:
    """The checks of one descriptor, in report order."""
    d = item.descriptor
    tol = tol_override or d.tol or config.tol or default_tol
    depth = depth_override or d.depth or config.depth
    if item.error is not None:
        record = CheckRecord(d.name, "construct", error=item.error)
        return [lambda: [record]]
    if d.is_lemma:
        lemmas: Dict[str, Callable[[], List[CheckRecord]]] = {
            "decomp": lambda: check_decomp(d),
            "gauss-shift": lambda: check_gauss_shift(d, tol),
            "weil-level": lambda: check_weil_level(d, tol),
            "torus-sum": lambda: check_torus_sum(d, tol),
            "square-level": lambda: check_square_level(d),
            "weil-relations": lambda: check_weil_relations(d, tol),
            "kirillov-relations": lambda: check_kirillov_relations(d),
            "kirillov-moment": lambda: check_kirillov_moment(d, tol),
        }
        return [_guard(d, d.tag, lemmas[d.tag])]
    case = item.case
    tasks: List[Task] = []
    for kind in d.checks:
        if kind == "oracle-P":
            for s in d.s:
                for w in d.w:
                    tasks.append(_guard(d, kind, lambda s=s, w=w: check_oracle_P(d, case, s, w, depth, tol), s=s, w=w))
        elif kind in ("oracle-I", "delta-I"):
            check = check_oracle_I if kind == "oracle-I" else check_delta_I
            for s in d.s:
                for v in d.valuations:
                    tasks.append(_guard(d, kind, lambda s=s, v=v, check=check: check(d, case, s, v, tol), s=s, v=v))
        elif kind == "P0":
            for s in d.s:
                tasks.append(_guard(d, kind, lambda s=s: check_P0(d, case, s, tol), s=s, w=0.5))
        elif kind == "vanishing":
            for s in d.s:
                tasks.append(_guard(d, kind, lambda s=s: check_vanishing(d, case, s), s=s))
        elif kind == "denominator":
            tasks.append(_guard(d, kind, lambda: check_denominator(d, case)))
        else:
            tasks.append(_guard(d, kind, lambda: check_matrix_coefficient(d, case)))
    return tasks


def run_suite(
    config: SuiteConfig,
    workers: int = 1,
    precision: Optional[int] = None,
    depth_override: Optional[int] = None,
    tol_override: Optional[float] = None,
    default_tol: float = DEFAULT_TOL,
    on_record: Optional[Callable[[CheckRecord], None]] = None,
) -> Report:
    """Run every check of ``config``; the record order never depends on ``workers``."""
    tasks: List[Task] = []
    for item in prepare(config, precision):
        tasks.extend(plan(item, config, depth_override, tol_override, default_tol))
    records: List[CheckRecord] = []
    with ThreadPoolExecutor(max_workers=max(1, workers), thread_name_prefix="localperiods-check") as pool:
        for batch in pool.map(lambda task: task(), tasks):
            for record in batch:
                records.append(record)
                if on_record is not None:
                    on_record(record)
    return Report(config.name, config.seed, tuple(records))


__all__ = [
    "CHAR_COUNTS",
    "Prepared",
    "errors_of",
    "plan",
    "prepare",
    "random_chars",
    "resolve_params",
    "run_suite",
]
