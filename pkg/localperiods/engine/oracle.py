"""Brute-force evaluation of I(alpha, f, Phi_s) and of the P integral.

I is summed over Borel coordinates b = (a1 m; 0 a2) with n = v(a1),
l = v(a2), n + l = v(alpha) (torus elements are units), and
additive shells of m.  Each shell is sampled at residue resolution given by
the coset's ``Resolution``; the additive tail closes as soon as the integrand
is constant on it.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..characters import eval_character
from ..errors import ContextError, DivergentPoint, TailNotGeometric, UnsupportedCase
from ..kirillov import C1, SupercuspidalParams, SymbolicValue, kirillov_moment
from ..padic import (
    ExtensionElement,
    FieldContext,
    Mat2,
    TruncatedElement,
    additive_shell_measure,
    embed,
    make_extension_element,
    n_lower,
    pairwise_sum,
    psi,
    quadratic_coset_reps,
    unit_shell,
)
from ..sections import SectionSpec, eval_section, eval_split_borel
from ..whittaker import newform_base, shell_moment, support_shell, whittaker_oracle
from .closed import case_roots
from .matrix_coeff import matrix_coeff_integral
from .models import CaseSpec, CosetTerm, EvalPoint
from .tails import BOUNDED_RATIO, close_series

TAIL_TOL = 1e-12
FIT_RESIDUAL = 1e-8
MAX_EXTRA_SHELLS = 48
EXACT = 64
WHITTAKER_ZERO = 1e-12
MOMENT_ZERO = 1e-9

Value = Union[complex, SymbolicValue]


def _shell_points(ctx: FieldContext, v: int, r: int) -> Tuple[List[TruncatedElement], Fraction]:
    """Sample points of p^v O* at relative resolution r, one point when r <= 0."""
    if r <= 0:
        return [TruncatedElement(ctx.p, v, 1, v + ctx.precision)], Fraction(1)
    return unit_shell(ctx, v, r)


def _tweaked_points(ctx: FieldContext, v: int, r: int, bump: int) -> Tuple[List[TruncatedElement], Fraction]:
    """Shell points with units u (1 + p^bump), which never equal a sampled a2."""
    points, weight = _shell_points(ctx, v, r)
    shift = ctx.p ** bump
    return [TruncatedElement(ctx.p, v, x.unit * (1 + shift), v + ctx.precision) for x in points], weight


def torus_representatives(case: CaseSpec) -> List[ExtensionElement]:
    """O_E* modulo O_F* (1 + p^c O_E) for R4, all of (O_E / p^c)* for R5."""
    ctx, c = case.ctx, case.level
    if case.tag == "R4-RAMCHI":
        return quadratic_coset_reps(ctx, c)
    modulus = ctx.p ** c
    return [
        make_extension_element(ctx, a, b)
        for a in range(modulus)
        for b in range(modulus)
        if a % ctx.p or b % ctx.p
    ]


@dataclass
class BorelIntegrand:
    """f(g, alpha / det g) Phi_s(gamma_0 g) in Borel coordinates of one coset."""

    case: CaseSpec
    term: CosetTerm
    section: SectionSpec
    alpha: TruncatedElement
    shortcut: bool = False

    def __post_init__(self) -> None:
        ctx = self.case.ctx
        self.zero = TruncatedElement.zero_ball(ctx.p, EXACT)
        self.frame: Optional[Mat2] = None
        self.root2: Optional[TruncatedElement] = None
        if self.case.route == "split-borel":
            self.frame = n_lower(ctx, ctx.sqrt_d)
            self.root2 = TruncatedElement.from_rational(ctx.p, 2 * ctx.sqrt_d, ctx.precision + EXACT)

    @property
    def t_coordinates(self) -> bool:
        """Split places integrate over t = a2 + 2 sqrt D m instead of m."""
        return self.case.route == "split-borel" and not self.shortcut

    def m_from(self, a2: TruncatedElement, x: TruncatedElement) -> TruncatedElement:
        if self.t_coordinates:
            return (x - a2) / self.root2
        return x

    def value(self, a1: TruncatedElement, x: TruncatedElement, a2: TruncatedElement,
              rep: Optional[ExtensionElement] = None) -> complex:
        m = self.m_from(a2, x)
        b = Mat2(a1, m, self.zero, a2)
        f = self.term.function
        route = self.case.route
        if route == "torus":
            g = embed(self.case.ctx, rep) @ b
            u = self.alpha / g.det()
            head = f.evaluate(g, u)
            return head * eval_section(self.section, g) if head != 0 else 0j
        u = self.alpha / (a1 * a2)
        if route == "split-borel":
            head = f.evaluate(self.frame @ b, u)
            if head == 0:
                return 0j
            return head * eval_split_borel(self.section, a1, m, a2, self.shortcut)
        head = f.evaluate(b, u)
        return head * eval_section(self.section, b) if head != 0 else 0j


def _agree(values: Sequence[complex]) -> bool:
    first = values[0]
    scale = max(1.0, abs(first))
    return all(abs(v - first) <= TAIL_TOL * scale for v in values[1:])


def _additive_integral(
    integrand: BorelIntegrand,
    a1: TruncatedElement,
    a2: TruncatedElement,
    rep: Optional[ExtensionElement],
    n: int,
    l: int,
) -> complex:
    """Integral over the third coordinate (m, or t at split places) from its floor."""
    ctx, q = integrand.case.ctx, integrand.case.q
    res = integrand.term.resolution
    floor = integrand.term.floors[2]
    start = max(floor, res.m, max(n, l) + 1)

    def points(k: int, r: int) -> Tuple[List[TruncatedElement], Fraction]:
        if integrand.t_coordinates:
            return _tweaked_points(ctx, k, r, max(r, res.a2, 1) + 1)
        return _shell_points(ctx, k, r)

    def resolution(k: int) -> int:
        return max(res.m - k, res.m_rel, 0)

    def shell(k: int) -> Tuple[List[complex], Fraction]:
        pts, weight = points(k, resolution(k))
        return [integrand.value(a1, x, a2, rep) for x in pts], weight

    parts: List[complex] = []
    for k in range(floor, start):
        values, weight = shell(k)
        parts.append(pairwise_sum(values) * float(weight * additive_shell_measure(q, k)))
    k = start
    while True:
        values, weight = shell(k)
        further = [integrand.value(a1, points(j, 0)[0][0], a2, rep) for j in (k + 1, k + 2)]
        if _agree(values + further):
            parts.append(values[0] * float(q) ** (-k))
            break
        parts.append(pairwise_sum(values) * float(weight * additive_shell_measure(q, k)))
        k += 1
        if k - start > MAX_EXTRA_SHELLS:
            raise TailNotGeometric(f"additive tail not constant by shell {k} (n={n}, l={l})")
    return pairwise_sum(parts)


def coset_I(
    case: CaseSpec,
    term: CosetTerm,
    alpha: TruncatedElement,
    s: complex,
    shortcut: bool = False,
) -> complex:
    """I(alpha, f_i, Phi_s) for one coset function f_i, group weight included."""
    ctx, q = case.ctx, case.q
    if alpha.is_zero_ball:
        raise ContextError("alpha must be nonzero")
    integrand = BorelIntegrand(case, term, case.section(s, shortcut=shortcut), alpha, shortcut)
    v = alpha.require_valuation()
    floor_n, floor_l, _ = term.floors
    res = term.resolution
    reps: Sequence[Optional[ExtensionElement]] = (
        torus_representatives(case) if case.route == "torus" else [None]
    )
    parts: List[complex] = []
    for rep in reps:
        for n in range(floor_n, v - floor_l + 1):
            l = v - n
            haar = float(q) ** (l if case.route == "torus" else n)
            a1s, w1 = _shell_points(ctx, n, res.a1)
            a2s, w2 = _shell_points(ctx, l, res.a2)
            weight = haar * float(w1 * w2)
            for a1 in a1s:
                for a2 in a2s:
                    parts.append(weight * _additive_integral(integrand, a1, a2, rep, n, l))
    return float(case.group_weight) * pairwise_sum(parts)


def oracle_I(
    case: CaseSpec,
    alpha: TruncatedElement,
    s: complex,
    index: Optional[int] = None,
    shortcut: bool = False,
) -> complex:
    """I(alpha, f, Phi_s) by direct summation, at the coset ``index`` (default: identity)."""
    if case.route == "kirillov":
        raise UnsupportedCase("the matrix-coefficient case has no I integral")
    return coset_I(case, case.coset(index), alpha, s, shortcut)


def phi_inverse(case: CaseSpec, alpha: TruncatedElement) -> complex:
    """Phi_s(alpha)^-1 on the diagonal: 1 / prod chi(alpha), unshifted."""
    total = 1.0 + 0j
    for chi in case.chars:
        total *= eval_character(chi, alpha)
    return 1 / total


class WhittakerShells:
    """W_i(alpha) from the induced-model oracle, one evaluation per residue class.

    W_i is invariant under alpha -> alpha (1 + p^c O); values are keyed by
    (i, v(alpha), unit mod p^c).
    """

    def __init__(self, case: CaseSpec) -> None:
        self.rep = case.rep
        self.modulus = case.rep.p ** case.rep.level
        self._base: Optional[complex] = None
        self._values: Dict[Tuple[int, int, int], complex] = {}
        self._lock = threading.Lock()

    @property
    def base(self) -> complex:
        with self._lock:
            if self._base is None:
                self._base = newform_base(self.rep)
            return self._base

    def value(self, alpha: TruncatedElement, i: int) -> complex:
        key = (i, alpha.require_valuation(), alpha.unit % self.modulus)
        with self._lock:
            cached = self._values.get(key)
        if cached is None:
            cached = whittaker_oracle(self.rep, alpha, i, normalize=False) / self.base
            with self._lock:
                self._values[key] = cached
        return cached


def _alpha_shell(case: CaseSpec, term: CosetTerm, v: int, point: EvalPoint, whittaker: WhittakerShells) -> complex:
    pts, weight = _shell_points(case.ctx, v, term.resolution.alpha)
    total = []
    for alpha in pts:
        w = whittaker.value(alpha, term.index)
        if abs(w) < WHITTAKER_ZERO:
            continue
        total.append(w * phi_inverse(case, alpha) * coset_I(case, term, alpha, point.s))
    return float(term.weight * weight) * point.alpha_weight(case.q, v) * pairwise_sum(total)


def shell_terms(case: CaseSpec, point: EvalPoint, workers: int = 1) -> Tuple[int, List[complex]]:
    """(v_min, [P shell term at v_min, v_min + 1, ...]) up to the point's depth."""
    v_min = min(term.v_min for term in case.cosets)
    jobs = [(term, v) for v in range(v_min, v_min + point.depth) for term in case.cosets if v >= term.v_min]
    whittaker = WhittakerShells(case)

    def run(job: Tuple[CosetTerm, int]) -> complex:
        term, v = job
        return _alpha_shell(case, term, v, point, whittaker)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]
    terms = [0j] * point.depth
    for (_, v), value in zip(jobs, results):
        terms[v - v_min] += value
    return v_min, terms


def _fit_const_psi(values: np.ndarray, phases: np.ndarray) -> Tuple[complex, complex]:
    """values = a + b phases on the shell; b = 0 when the phases are constant."""
    if np.max(np.abs(phases - phases[0])) < TAIL_TOL:
        return complex(np.mean(values)), 0j
    design = np.stack([np.ones_like(phases), phases], axis=1)
    (a, b), *_ = np.linalg.lstsq(design, values, rcond=None)
    scale = max(1.0, float(np.max(np.abs(values))))
    if float(np.max(np.abs(design @ np.array([a, b]) - values))) > FIT_RESIDUAL * scale:
        raise UnsupportedCase("I is not a combination of 1 and psi(p^-i alpha) on the Whittaker support")
    return complex(a), complex(b)


def moment_P(case: CaseSpec, point: EvalPoint) -> Value:
    """P for representations known through W_i shell moments (the level-c split cases)."""
    rep, ctx, q = case.rep, case.ctx, case.q
    total: Value = SymbolicValue.zero() if rep.kind == "supercuspidal" else 0j
    for term in case.cosets:
        i = term.index
        v = support_shell(rep, i)
        m_const = numeric_moment(case, i, v, "const")
        m_psi = numeric_moment(case, i, v, "psi")
        if _moment_is_zero(m_const) and _moment_is_zero(m_psi):
            continue
        pts, _ = _shell_points(ctx, v, max(1, i - v))
        twist = TruncatedElement(ctx.p, -i, 1, EXACT)
        values = np.array([phi_inverse(case, a) * coset_I(case, term, a, point.s) for a in pts], dtype=complex)
        phases = np.array([psi(a * twist) for a in pts], dtype=complex)
        a, b = _fit_const_psi(values, phases)
        factor = float(term.weight) * point.alpha_weight(q, v)
        total = total + m_const * (a * factor) + m_psi * (b * factor)
    return total


def numeric_moment(case: CaseSpec, i: int, v: int, kind: str) -> Value:
    """Shell moment of W_i: Kirillov engine for supercuspidals, induced-model oracle otherwise."""
    rep = case.rep
    if rep.kind == "supercuspidal":
        if rep.central_level != 0:
            raise UnsupportedCase("Kirillov moments need an unramified central character")
        params = SupercuspidalParams(rep.p, rep.level, z0=rep.central_character)
        return kirillov_moment(params, i, kind)
    return shell_moment(rep, i, v, kind)


def _moment_is_zero(value: Value) -> bool:
    if isinstance(value, SymbolicValue):
        return value.is_zero(MOMENT_ZERO)
    return abs(value) < MOMENT_ZERO


def c1_coefficient(value: Value) -> float:
    """Total modulus of the monomials carrying C1 (0 for numeric values)."""
    if not isinstance(value, SymbolicValue):
        return 0.0
    return sum(abs(coef) for monomial, coef in value.terms().items() if any(name == C1 for name, _ in monomial))


def check_convergence(case: CaseSpec, point: EvalPoint) -> float:
    ratio = case_roots(case, point)
    if point.tail_mode == "bounded-truncation" and ratio > BOUNDED_RATIO:
        raise DivergentPoint(f"convergence ratio {ratio:.4g} exceeds {BOUNDED_RATIO} at s={point.s}, w={point.w}")
    if ratio >= 1.0:
        raise DivergentPoint(f"P series diverges at s={point.s}, w={point.w} (ratio {ratio:.4g})")
    return ratio


def oracle_P(case: CaseSpec, point: EvalPoint, workers: int = 1) -> Value:
    """P(s, w, f, Phi_s) from oracle I values, numeric Whittaker values and a closed tail."""
    if case.route == "kirillov":
        return complex(matrix_coeff_integral(case.ctx.p, case.rep.level).value)
    ratio = check_convergence(case, point)
    if case.uses_moments:
        return moment_P(case, point)
    _, terms = shell_terms(case, point, workers)
    return close_series(terms, transient=case.level + 1, mode=point.tail_mode, ratio=ratio)


def vanishing_report(case: CaseSpec, s: complex, valuations: Sequence[int]) -> List[Tuple[int, int, int, complex]]:
    """(i, beta, v, I) over the cosets whose I vanishes identically."""
    out = []
    for term in case.vanishing_cosets:
        for v in valuations:
            alpha = TruncatedElement(case.ctx.p, v, 1, v + EXACT)
            out.append((term.index, term.beta, v, coset_I(case, term, alpha, s)))
    return out


__all__ = [
    "BorelIntegrand",
    "c1_coefficient",
    "check_convergence",
    "coset_I",
    "moment_P",
    "numeric_moment",
    "oracle_I",
    "oracle_P",
    "phi_inverse",
    "shell_terms",
    "torus_representatives",
    "vanishing_report",
    "WhittakerShells",
]
