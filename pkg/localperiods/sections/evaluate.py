"""Evaluation of induced vectors and of Phi_s(gamma_0 g)."""
from __future__ import annotations

from typing import Sequence, Tuple, Union

from ..characters import MultChar, ShiftedChar, eval_character
from ..errors import ContextError, PrecisionShortfall
from ..padic import ExtensionElement, FieldContext, Mat2, TruncatedElement
from .iwasawa import PIVOT_C, PIVOT_D, route_bottom_row, uniformizer_power
from .models import InducedVector, SectionSpec

Entry = Union[TruncatedElement, ExtensionElement]


def _divide(x: Entry, y: Entry) -> Entry:
    if isinstance(y, ExtensionElement):
        return y.inverse() * x
    if isinstance(x, ExtensionElement):
        return x * y.inverse()
    return x / y


def eval_induced(vector: InducedVector, C: Entry, D: Entry, det: Entry) -> complex:
    """phi at any matrix with bottom row (C, D) and determinant det."""
    index, pivot = route_bottom_row(C, D, vector.level)
    weight = vector.support_value(index)
    if weight == 0:
        return 0j
    if pivot == PIVOT_C:
        a2 = C
        a1 = _divide(det, C)
    elif pivot == PIVOT_D:
        a2 = D
        a1 = _divide(det, D)
    else:
        a2 = D
        a1 = _divide(det * uniformizer_power(C.p, index), C)
    return weight * eval_character(vector.char1, a1) * eval_character(vector.char2, a2)


def evaluate_matrix(vector: InducedVector, g: Mat2) -> complex:
    return eval_induced(vector, g.c, g.d, g.det())


def gamma_zero_rows(ctx: FieldContext, g: Mat2) -> Tuple[ExtensionElement, ExtensionElement]:
    """Bottom row (c + sqrt D a, d + sqrt D b) of gamma_0 g, gamma_0 = n_lower(sqrt D)."""
    kind = ctx.extension_kind
    if kind == "split":
        raise ContextError("split sections are evaluated place by place")
    return ExtensionElement(kind, ctx.D, g.c, g.a), ExtensionElement(kind, ctx.D, g.d, g.b)


def split_root(ctx: FieldContext, g: Mat2) -> TruncatedElement:
    if ctx.sqrt_d is None:
        raise ContextError("split sections need a split context")
    prec = max(x.prec for x in (g.a, g.b, g.c, g.d))
    return TruncatedElement.from_rational(ctx.p, ctx.sqrt_d, max(prec, ctx.precision))


def _k_tilde_value(spec: SectionSpec, g: Mat2) -> complex:
    """Supported on B (0 1; -1 -sqrt D / D) K~, K~-invariant, unramified characters."""
    C, D = gamma_zero_rows(spec.ctx, g)
    root = ExtensionElement(C.kind, C.D, TruncatedElement.zero_ball(C.p, C.first.prec + 64),
                            TruncatedElement(C.p, 0, 1, C.first.prec + 64))
    shifted = C * root.inverse() - D
    v_c, exact = C.valuation_bound()
    if not exact:
        raise PrecisionShortfall("bottom row entry C undecided", int(v_c) + 1)
    if not shifted.valuation_at_least(v_c + spec.k_tilde_level):
        return 0j
    vector = spec.vector
    return eval_character(vector.char1, _divide(g.det(), C)) * eval_character(vector.char2, C)


def eval_section(spec: SectionSpec, g: Mat2) -> complex:
    """Phi_s(gamma_0 g) for g in GL2(F)."""
    if spec.kind == "split":
        root = split_root(spec.ctx, g)
        det = g.det()
        first, second = spec.vectors
        value = eval_induced(first, g.c + root * g.a, g.d + root * g.b, det)
        if value == 0:
            return 0j
        return value * eval_induced(second, g.c - root * g.a, g.d - root * g.b, det)
    if spec.kind == "k-tilde":
        return _k_tilde_value(spec, g)
    C, D = gamma_zero_rows(spec.ctx, g)
    return eval_induced(spec.vector, C, D, g.det())


def _unramified_power_value(vector: InducedVector, v_det: int, v_a2: int) -> complex:
    return vector.char1.value_at_uniformizer ** (v_det - v_a2) * vector.char2.value_at_uniformizer ** v_a2


def eval_split_borel(
    spec: SectionSpec,
    a1: TruncatedElement,
    m: TruncatedElement,
    a2: TruncatedElement,
    shortcut: bool = False,
) -> complex:
    """Phi^(1)(n_lower(2 sqrt D) b) Phi^(2)(b) for b = (a1 m; 0 a2).

    This is Phi_s(gamma_0 n_lower(sqrt D) b). With ``shortcut`` the first
    place pretends v(a2 + 2 sqrt D m) = min(v(a2), v(m)).
    """
    if spec.kind != "split":
        raise ContextError("substituted Borel evaluation is for split sections")
    first, second = spec.vectors
    det = a1 * a2
    zero = TruncatedElement.zero_ball(a1.p, max(a2.prec, a1.prec) + 64)
    tail = eval_induced(second, zero, a2, det)
    if tail == 0:
        return 0j
    root = TruncatedElement.from_rational(a1.p, 2 * spec.ctx.sqrt_d, max(a1.prec, a2.prec, spec.ctx.precision))
    C = root * a1
    if not (shortcut or spec.shortcut_min_valuation):
        return tail * eval_induced(first, C, a2 + root * m, det)
    if first.level != 0:
        raise ContextError("the min-valuation shortcut is defined for spherical places")
    v_a2 = a2.require_valuation()
    m_bound, m_exact = m.valuation_bound()
    if m_exact:
        v_d = min(v_a2, int(m_bound))
    elif m_bound >= v_a2:
        v_d = v_a2
    else:
        raise PrecisionShortfall("v(m) undecided below v(a2)", v_a2)
    v_c = C.require_valuation()
    v_det = det.require_valuation()
    pivot = v_c if v_c <= v_d else v_d
    return tail * _unramified_power_value(first, v_det, pivot)


def omega_character(spec: SectionSpec, t: ExtensionElement) -> complex:
    """Omega(t) = chi1(conj t) chi2(t) on O_E*."""
    if spec.kind == "split":
        first, second = spec.vectors
        t1, t2 = t.first, t.second
        return (
            eval_character(first.char1, t2)
            * eval_character(first.char2, t1)
            * eval_character(second.char1, t1)
            * eval_character(second.char2, t2)
        )
    vector = spec.vector
    return eval_character(vector.char1, t.conjugate()) * eval_character(vector.char2, t)


# -- builders -------------------------------------------------------------
def induced_vector(
    chi1: MultChar,
    chi2: MultChar,
    s: complex,
    level: int = 0,
    support: Sequence[Tuple[int, complex]] = ((0, 1.0),),
) -> InducedVector:
    """The vector of Ind(chi1 |.|^(s+1/2), chi2 |.|^(-s-1/2))."""
    return InducedVector(
        char1=ShiftedChar(chi1, s, 1),
        char2=ShiftedChar(chi2, s, -1),
        level=level,
        support=tuple((int(i), complex(v)) for i, v in support),
    )


def _check_e_characters(ctx: FieldContext, *chars: MultChar) -> None:
    for chi in chars:
        if chi.field != "E" or chi.extension_kind != ctx.extension_kind:
            raise ContextError(f"{chi.name} is not a character of E* for a {ctx.extension_kind} extension")


def full_k_section(ctx: FieldContext, chi1, chi2, s: complex, label: str = "spherical") -> SectionSpec:
    """The normalized right K-invariant section; split places take pairs (chi^(1), chi^(2))."""
    if ctx.extension_kind == "split":
        vectors = tuple(induced_vector(c1, c2, s) for c1, c2 in zip(chi1, chi2))
        return SectionSpec(ctx, "split", vectors, s=s, label=label)
    _check_e_characters(ctx, chi1, chi2)
    return SectionSpec(ctx, "full-k", (induced_vector(chi1, chi2, s),), s=s, label=label)


def newform_section(
    ctx: FieldContext,
    chi1: MultChar,
    chi2: MultChar,
    s: complex,
    c: int,
    support: Sequence[Tuple[int, complex]] = ((0, 1.0),),
    label: str = "newform",
) -> SectionSpec:
    """K1(p^c)-invariant section of E-characters with the declared coset support."""
    if ctx.extension_kind != "inert":
        raise ContextError("level sections over E are modelled for the inert extension")
    _check_e_characters(ctx, chi1, chi2)
    return SectionSpec(ctx, "newform", (induced_vector(chi1, chi2, s, c, support),), s=s, label=label)


def k_tilde_section(ctx: FieldContext, chi1: MultChar, chi2: MultChar, s: complex, k: int) -> SectionSpec:
    if ctx.extension_kind != "inert":
        raise ContextError("the K~-invariant section needs an inert extension")
    _check_e_characters(ctx, chi1, chi2)
    if chi1.level or chi2.level:
        raise ContextError("the K~-invariant section is built from unramified characters")
    return SectionSpec(ctx, "k-tilde", (induced_vector(chi1, chi2, s),), s=s, k_tilde_level=k, label=f"k-tilde-{k}")


def split_section(
    ctx: FieldContext,
    places: Tuple[InducedVector, InducedVector],
    s: complex,
    shortcut_min_valuation: bool = False,
    label: str = "split",
) -> SectionSpec:
    if ctx.extension_kind != "split":
        raise ContextError("split sections need a split context")
    return SectionSpec(ctx, "split", tuple(places), s=s, shortcut_min_valuation=shortcut_min_valuation, label=label)


__all__ = [
    "eval_induced",
    "eval_section",
    "eval_split_borel",
    "evaluate_matrix",
    "full_k_section",
    "gamma_zero_rows",
    "induced_vector",
    "k_tilde_section",
    "newform_section",
    "omega_character",
    "split_root",
    "split_section",
]
