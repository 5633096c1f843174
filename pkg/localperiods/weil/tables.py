"""Table arithmetic for the product-form Schwartz functions.

A ``PairTable`` axis with window (lo, hi) has p^(hi-lo) cells; cell t is the
coset p^lo t + p^hi O.  The Fourier transform uses numpy's FFT along each axis
followed by the index scaling t' -> s u t' forced by the pairing.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContextError
from ..padic import TruncatedElement, p_adic_valuation, psi, psi_rational
from .models import (
    Block,
    EntryWindow,
    PairTable,
    ProductTerm,
    unit_class_index,
    unit_classes,
)


def rational_valuation(p: int, x: Fraction) -> float:
    x = Fraction(x)
    if x == 0:
        return float("inf")
    return p_adic_valuation(p, x.numerator) - p_adic_valuation(p, x.denominator)


def unit_part_mod(p: int, x: Fraction, modulus: int) -> int:
    """u mod ``modulus`` where x = p^v(x) u."""
    x = Fraction(x)
    v = int(rational_valuation(p, x))
    scaled = x / Fraction(p) ** v
    return (scaled.numerator * pow(scaled.denominator, -1, modulus)) % modulus


def _at_least(p: int, x: Fraction, k: int) -> bool:
    return rational_valuation(p, x) >= k


# -- reshaping ------------------------------------------------------------
def refine_axis(pt: PairTable, axis: int, hi: int) -> PairTable:
    window = pt.first if axis == 0 else pt.second
    if hi <= window.hi:
        return pt
    old, new = window.size(pt.p), pt.p ** (hi - window.lo)
    values = np.take(pt.values, np.arange(new) % old, axis=axis)
    target = EntryWindow(window.lo, hi)
    if axis == 0:
        return PairTable(pt.p, target, pt.second, pt.u_level, values)
    return PairTable(pt.p, pt.first, target, pt.u_level, values)


def extend_axis(pt: PairTable, axis: int, lo: int) -> PairTable:
    """Enlarge the support window down to p^lo O, zero outside the old support."""
    window = pt.first if axis == 0 else pt.second
    if lo >= window.lo:
        return pt
    step = pt.p ** (window.lo - lo)
    shape = list(pt.values.shape)
    shape[axis] = pt.p ** (window.hi - lo)
    values = np.zeros(shape, dtype=complex)
    index = [slice(None)] * 3
    index[axis] = slice(0, shape[axis], step)
    values[tuple(index)] = pt.values
    target = EntryWindow(lo, window.hi)
    if axis == 0:
        return PairTable(pt.p, target, pt.second, pt.u_level, values)
    return PairTable(pt.p, pt.first, target, pt.u_level, values)


def refine_u(pt: PairTable, level: int) -> PairTable:
    if level <= pt.u_level:
        return pt
    lookup = unit_class_index(pt.p, pt.u_level)
    modulus = pt.p ** pt.u_level
    index = [0 if pt.u_level == 0 else lookup[u % modulus] for u in unit_classes(pt.p, level)]
    return PairTable(pt.p, pt.first, pt.second, level, np.take(pt.values, index, axis=2))


def align_pair(pt: PairTable, first: EntryWindow, second: EntryWindow, u_level: int) -> PairTable:
    """Re-tabulate on windows containing the current ones."""
    if first.lo > pt.first.lo or second.lo > pt.second.lo:
        raise ContextError("target windows must contain the table support")
    pt = extend_axis(extend_axis(pt, 0, first.lo), 1, second.lo)
    pt = refine_axis(refine_axis(pt, 0, first.hi), 1, second.hi)
    return refine_u(pt, u_level)


# -- Weil generators on one pair ----------------------------------------------
def fourier_pair(pt: PairTable, sign: int) -> PairTable:
    """(x_a, x_b) -> integral of f(y_a, y_b) psi(sign u (x_a y_b + x_b y_a)) dy_a dy_b."""
    p = pt.p
    a, b = pt.first, pt.second
    size_a, size_b = a.size(p), b.size(p)
    pt = refine_u(pt, max(pt.u_level, a.hi - a.lo, b.hi - b.lo))
    units = unit_classes(p, pt.u_level)
    out = np.empty((size_b, size_a, len(units)), dtype=complex)
    new_a = np.arange(size_b)
    new_b = np.arange(size_a)
    for iu, u in enumerate(units):
        summed_b = np.fft.ifft(pt.values[:, :, iu], axis=1) * size_b
        summed_b = summed_b[:, (sign * u * new_a) % size_b]
        summed_ab = np.fft.ifft(summed_b, axis=0) * size_a
        out[:, :, iu] = summed_ab[(sign * u * new_b) % size_a, :].T
    volume = float(p) ** (-(a.hi + b.hi))
    return PairTable(p, EntryWindow(-b.hi, -b.lo), EntryWindow(-a.hi, -a.lo), pt.u_level, out * volume)


def phase_pair(pt: PairTable, beta: Fraction, sign: int) -> PairTable:
    """Multiply by psi(sign * u * beta * x_a * x_b)."""
    beta = Fraction(beta)
    if beta == 0:
        return pt
    p = pt.p
    v_beta = int(rational_valuation(p, beta))
    pt = refine_axis(pt, 0, max(pt.first.hi, -v_beta - pt.second.lo))
    pt = refine_axis(pt, 1, max(pt.second.hi, -v_beta - pt.first.lo))
    depth = -(v_beta + pt.first.lo + pt.second.lo)
    if depth <= 0:
        return pt
    pt = refine_u(pt, max(pt.u_level, depth))
    modulus = p ** depth
    unit_beta = unit_part_mod(p, beta, modulus)
    ta = np.arange(pt.first.size(p), dtype=np.int64) % modulus
    tb = np.arange(pt.second.size(p), dtype=np.int64) % modulus
    grid = np.outer(ta, tb) % modulus
    values = pt.values.copy()
    for iu, u in enumerate(unit_classes(p, pt.u_level)):
        factor = (sign * u * unit_beta) % modulus
        phase = np.exp(2j * np.pi * ((grid * factor) % modulus) / modulus)
        values[:, :, iu] *= phase
    return PairTable(p, pt.first, pt.second, pt.u_level, values)


def dilate_pair(pt: PairTable, alpha: Fraction) -> PairTable:
    """(x_a, x_b, u) -> f(alpha x_a, alpha x_b, u), without the |alpha| factors."""
    p = pt.p
    alpha = Fraction(alpha)
    v = int(rational_valuation(p, alpha))
    windows = []
    values = pt.values
    for axis, window in enumerate((pt.first, pt.second)):
        size = window.size(p)
        if size > 1:
            unit = unit_part_mod(p, alpha, size)
            values = np.take(values, (unit * np.arange(size)) % size, axis=axis)
        windows.append(EntryWindow(window.lo - v, window.hi - v))
    return PairTable(p, windows[0], windows[1], pt.u_level, values)


def twist_u(pt: PairTable, delta: Fraction) -> PairTable:
    """(x, u) -> f(x, u / delta) for a unit delta."""
    p = pt.p
    if rational_valuation(p, Fraction(delta)) != 0:
        raise ContextError("u-twists by non-units leave the O* support")
    if pt.u_level == 0:
        return pt
    modulus = p ** pt.u_level
    inv = pow(unit_part_mod(p, delta, modulus), -1, modulus)
    lookup = unit_class_index(p, pt.u_level)
    index = [lookup[(inv * u) % modulus] for u in unit_classes(p, pt.u_level)]
    return PairTable(p, pt.first, pt.second, pt.u_level, np.take(pt.values, index, axis=2))


def restrict_u(pt: PairTable, center: int, level: int) -> PairTable:
    """Multiply by char(center + p^level O)(u)."""
    if level <= 0:
        return pt
    pt = refine_u(pt, level)
    modulus = pt.p ** level
    mask = np.array([(u - center) % modulus == 0 for u in unit_classes(pt.p, pt.u_level)])
    return PairTable(pt.p, pt.first, pt.second, pt.u_level, pt.values * mask[None, None, :])


def scale_pair(pt: PairTable, factor: complex) -> PairTable:
    return PairTable(pt.p, pt.first, pt.second, pt.u_level, pt.values * factor)


# -- blocks -------------------------------------------------------------------
def _support_window(p: int, center: Fraction, level: int) -> int:
    v = rational_valuation(p, center)
    return level if v >= level else int(v)


def _pair_from_block(p: int, block: Block, a: int, b: int, shifts: Tuple[Fraction, Fraction], sign: int, phased: bool) -> PairTable:
    centers = (Fraction(block.centers[a]), Fraction(block.centers[b]))
    levels = (block.levels[a], block.levels[b])
    lows = [_support_window(p, centers[k], levels[k]) for k in range(2)]
    highs = list(levels)
    u_level = block.u_level if a == 0 else 0
    kappa = block.phase.kappa if phased else Fraction(0)
    if phased and kappa != 0:
        v_kappa = int(rational_valuation(p, kappa))
        depth = [min(levels[k], int(min(rational_valuation(p, centers[k] - shifts[k]), levels[k]))) for k in range(2)]
        highs[0] = max(highs[0], -v_kappa - depth[1])
        highs[1] = max(highs[1], -v_kappa - depth[0])
        u_level = max(u_level, -(v_kappa + depth[0] + depth[1]))
    windows = [EntryWindow(lows[k], max(highs[k], lows[k])) for k in range(2)]
    units = unit_classes(p, u_level)
    points = [[Fraction(p) ** windows[k].lo * t for t in range(windows[k].size(p))] for k in range(2)]
    inside = [[_at_least(p, x - centers[k], levels[k]) for x in points[k]] for k in range(2)]
    values = np.zeros((len(points[0]), len(points[1]), len(units)), dtype=complex)
    for ia, xa in enumerate(points[0]):
        if not inside[0][ia]:
            continue
        for ib, xb in enumerate(points[1]):
            if not inside[1][ib]:
                continue
            if not phased or kappa == 0:
                values[ia, ib, :] = 1.0
                continue
            product = sign * kappa * (xa - shifts[0]) * (xb - shifts[1])
            values[ia, ib, :] = [psi_rational(p, u * product) for u in units]
    pt = PairTable(p, windows[0], windows[1], u_level, values)
    if a == 0:
        pt = restrict_u(pt, block.u_center, block.u_level)
    return pt


def block_to_term(p: int, block: Block) -> ProductTerm:
    phase = block.phase
    b1 = phase.b1 if phase else Fraction(0)
    b2 = phase.b2 if phase else Fraction(0)
    pair14 = _pair_from_block(p, block, 0, 3, (b1, Fraction(0)), 1, bool(phase and phase.with_x1x4))
    pair23 = _pair_from_block(p, block, 1, 2, (Fraction(0), b2), -1, phase is not None)
    return ProductTerm(scale_pair(pair14, block.scale), pair23)


def evaluate_block(p: int, block: Block, entries: Sequence[TruncatedElement], u: TruncatedElement) -> complex:
    if u.require_valuation() != 0:
        return 0j
    if block.u_level > 0 and (u.unit_residue(block.u_level) - block.u_center) % p ** block.u_level:
        return 0j
    for x, center, level in zip(entries, block.centers, block.levels):
        if not (x - Fraction(center)).valuation_at_least(level):
            return 0j
    value = complex(block.scale)
    phase = block.phase
    if phase is not None and phase.kappa != 0:
        x1, x2, x3, x4 = entries
        inner = -(x2 * (x3 - phase.b2))
        if phase.with_x1x4:
            inner = inner + (x1 - phase.b1) * x4
        value *= psi(u * inner * phase.kappa)
    return value


def common_windows(pairs: List[PairTable]) -> Tuple[EntryWindow, EntryWindow, int]:
    first = EntryWindow(min(pt.first.lo for pt in pairs), max(pt.first.hi for pt in pairs))
    second = EntryWindow(min(pt.second.lo for pt in pairs), max(pt.second.hi for pt in pairs))
    return first, second, max(pt.u_level for pt in pairs)


def merge_pairs(pairs: List[PairTable]) -> Optional[PairTable]:
    if not pairs:
        return None
    first, second, u_level = common_windows(pairs)
    aligned = [align_pair(pt, first, second, u_level) for pt in pairs]
    return PairTable(aligned[0].p, first, second, u_level, sum(pt.values for pt in aligned))


__all__ = [
    "align_pair",
    "block_to_term",
    "common_windows",
    "dilate_pair",
    "evaluate_block",
    "extend_axis",
    "fourier_pair",
    "merge_pairs",
    "phase_pair",
    "rational_valuation",
    "refine_axis",
    "refine_u",
    "restrict_u",
    "scale_pair",
    "twist_u",
    "unit_part_mod",
]
