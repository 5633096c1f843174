"""GL2 = B n_lower(p^i) K1(p^c): the bottom-row routing and the coset volumes."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, List, Tuple, Union

from ..errors import ContextError, PrecisionShortfall
from ..padic import ExtensionElement, Mat2, TruncatedElement
from .models import IwasawaDecomposition

Entry = Union[TruncatedElement, ExtensionElement]

PIVOT_C = "C"
PIVOT_D = "D"
PIVOT_KAPPA = "kappa"


def route_bottom_row(C: Entry, D: Entry, c: int) -> Tuple[int, str]:
    """Coset index i of a matrix with bottom row (C, D), and which entry becomes a2.

    i = 0 when v(C) <= v(D), i = c when v(C) - v(D) >= c, else i = v(C) - v(D).
    Ties go to i = c, so B K1(p^c) is always index c.
    """
    vc, c_exact = C.valuation_bound()
    vd, d_exact = D.valuation_bound()
    if c_exact and d_exact:
        gap = vc - vd
        if gap <= 0:
            return 0, PIVOT_C
        if c == 0 or gap >= c:
            return c, PIVOT_D
        if gap.denominator != 1:
            raise ContextError("half-integral Iwasawa gap: level sections need an unramified extension")
        return int(gap), PIVOT_KAPPA
    if d_exact and (vc - vd > 0 if c == 0 else vc - vd >= c):
        return c, PIVOT_D
    if c_exact and vc - vd <= 0:
        return 0, PIVOT_C
    needed = int(math.ceil(max(vc, vd))) + max(c, 1) + 1
    raise PrecisionShortfall("bottom row does not decide its Iwasawa cell", needed)


def support_index(C: Entry, D: Entry, c: int) -> int:
    return route_bottom_row(C, D, c)[0]


def uniformizer_power(p: int, i: int, relative: int = 64) -> TruncatedElement:
    return TruncatedElement(p, i, 1, i + relative)


def decompose_iwasawa(g: Mat2, c: int) -> IwasawaDecomposition:
    """g = b n_lower(p^i) k with k in K1(p^c), i in 0..c."""
    if c < 1:
        raise ContextError("Iwasawa decomposition needs level c >= 1")
    p = g.a.p
    det = g.det()
    if det.is_zero_ball:
        raise ContextError("singular matrix")
    index, pivot = route_bottom_row(g.c, g.d, c)
    rel = max(x.prec for x in (g.a, g.b, g.c, g.d)) + 2 * c + 8
    one = TruncatedElement(p, 0, 1, rel)
    zero = TruncatedElement.zero_ball(p, rel)
    step = uniformizer_power(p, index, rel)
    if pivot == PIVOT_C:
        k = Mat2(one, g.d / g.c - 1, zero, one)
    elif pivot == PIVOT_D:
        k = Mat2(one, zero, g.c / g.d - step, one)
    else:
        kappa = g.c / (g.d * step)
        k = Mat2(kappa, zero, zero, one)
    borel = g @ k.inverse() @ Mat2(one, zero, -step, one)
    width = min(index, c - index)
    beta = k.det().unit_residue(width) if width > 0 else None
    return IwasawaDecomposition(borel=borel, index=index, k=k, c=c, beta=beta)


def reassemble(decomposition: IwasawaDecomposition) -> Mat2:
    b = decomposition.borel
    p = b.a.p
    rel = b.a.prec + 2 * decomposition.c + 8
    one = TruncatedElement(p, 0, 1, rel)
    zero = TruncatedElement.zero_ball(p, rel)
    n_i = Mat2(one, zero, uniformizer_power(p, decomposition.index, rel), one)
    return b @ n_i @ decomposition.k


def in_k1(k: Mat2, c: int) -> bool:
    """k in GL2(O) with lower-left in p^c O and lower-right in 1 + p^c O."""
    if not k.in_gl2_o():
        return False
    return k.c.valuation_at_least(c) and (k.d - 1).valuation_at_least(c)


def unit_count(q: int, m: int) -> int:
    """#(O/p^m)*."""
    if m <= 0:
        return 1
    return (q - 1) * q ** (m - 1)


def decomp_coefficients(q: int, c: int) -> List[Fraction]:
    """Volumes A_0..A_c of the cells B n_lower(p^i) K1(p^c) inside K, vol(K) = 1."""
    if c < 1:
        raise ContextError("decomposition coefficients need c >= 1")
    coefficients = [Fraction(q, q + 1)]
    coefficients.extend(Fraction(q - 1, (q + 1) * q ** i) for i in range(1, c))
    coefficients.append(Fraction(1, (q + 1) * q ** (c - 1)))
    return coefficients


def k0_volume(q: int, j: int) -> Fraction:
    """vol K0(p^j) = 1 / [K : K0(p^j)]."""
    if j <= 0:
        return Fraction(1)
    return Fraction(1, (q + 1) * q ** (j - 1))


def tail_volumes(q: int, c: int) -> List[Fraction]:
    """sum_{i >= j} A_i for j = 0..c."""
    coefficients = decomp_coefficients(q, c)
    return [sum(coefficients[j:], Fraction(0)) for j in range(c + 1)]


def beta_coefficients(q: int, c: int) -> Dict[Tuple[int, int], Fraction]:
    """A_{i, beta} for the K1^1(p^c) cells B n_lower(p^i) diag(beta, 1) K1^1(p^c)."""
    out: Dict[Tuple[int, int], Fraction] = {}
    for i, a_i in enumerate(decomp_coefficients(q, c)):
        width = min(i, c - i)
        count = unit_count(q, width)
        betas = [1] if width == 0 else [b for b in range(1, q ** width) if b % q]
        for beta in betas:
            out[(i, beta)] = a_i / count
    return out


__all__ = [
    "PIVOT_C",
    "PIVOT_D",
    "PIVOT_KAPPA",
    "beta_coefficients",
    "decomp_coefficients",
    "decompose_iwasawa",
    "in_k1",
    "k0_volume",
    "reassemble",
    "route_bottom_row",
    "support_index",
    "tail_volumes",
    "unit_count",
    "uniformizer_power",
]
