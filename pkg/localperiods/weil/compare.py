"""Equality of Schwartz functions on a common evaluation grid."""
from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from ..errors import ContextError
from ..padic import Mat2, TruncatedElement
from .blocks import to_table
from .models import (
    BlockFunction,
    EntryWindow,
    SchwartzFunction,
    TableFunction,
    TranslatedFunction,
    unit_classes,
)
from .tables import align_pair, common_windows

Windows = Tuple[List[EntryWindow], int]

MAX_POINTWISE_CELLS = 250_000


@dataclass
class Comparison:
    """Outcome of a grid comparison; truthy when the functions agree."""

    equal: bool
    deviation: float
    argmax: Optional[Tuple[Tuple[Fraction, ...], int]] = None

    def __bool__(self) -> bool:
        return self.equal


def _table_windows(table: TableFunction) -> Windows:
    pairs14 = [term.pair14 for term in table.terms]
    pairs23 = [term.pair23 for term in table.terms]
    w1, w4, u14 = common_windows(pairs14)
    w2, w3, u23 = common_windows(pairs23)
    return [w1, w2, w3, w4], max(u14, u23)


def _min_valuation(g: Mat2) -> int:
    return min(int(x.valuation()) for x in (g.a, g.b, g.c, g.d) if not x.is_zero_ball)


def _mix(windows: List[EntryWindow], groups, spread: int, blur: int) -> List[EntryWindow]:
    out = list(windows)
    for group in groups:
        lo = min(windows[k].lo for k in group) + min(0, spread)
        hi = max(windows[k].hi for k in group) - min(0, blur)
        for k in group:
            out[k] = EntryWindow(lo, max(hi, lo))
    return out


def sample_windows(f: SchwartzFunction) -> Windows:
    """Support and constancy windows per entry (x1, x2, x3, x4) and the u resolution."""
    if isinstance(f, TranslatedFunction):
        windows, u_level = sample_windows(f.base)
        g = f.g
        # rows of x g mix; x = (x g) g^-1
        windows = _mix(windows, ((0, 1), (2, 3)), _min_valuation(g.inverse()), _min_valuation(g))
    else:
        windows, u_level = _table_windows(to_table(f) if not isinstance(f, TableFunction) else f)
    if f.frame is not None:
        h = f.frame
        # columns of h^-1 x mix; x = h (h^-1 x)
        windows = _mix(windows, ((0, 2), (1, 3)), _min_valuation(h), _min_valuation(h.inverse()))
    return windows, u_level


def _union(a: Windows, b: Windows) -> Windows:
    windows = [EntryWindow(min(x.lo, y.lo), max(x.hi, y.hi)) for x, y in zip(a[0], b[0])]
    return windows, max(a[1], b[1])


def _tabulable(f: SchwartzFunction) -> bool:
    return isinstance(f, (TableFunction, BlockFunction))


def max_deviation(f: SchwartzFunction, g: SchwartzFunction) -> Tuple[float, Optional[Tuple[Tuple[Fraction, ...], int]]]:
    """Largest |f - g| over the joint grid, with the cell (entry representatives, u) where it occurs."""
    if f.p != g.p:
        raise ContextError("functions over different residue fields")
    windows, u_level = _union(sample_windows(f), sample_windows(g))
    if _tabulable(f) and _tabulable(g) and _same_frame(f.frame, g.frame):
        left, right = to_table(f), to_table(g)
        worst, where = 0.0, None
        units = unit_classes(f.p, u_level)
        # one u-class at a time keeps the dense arrays small
        for iu, u in enumerate(units):
            diff = np.abs(_dense_slice(left, windows, u_level, iu) - _dense_slice(right, windows, u_level, iu))
            if not diff.size:
                continue
            flat = int(np.argmax(diff))
            if diff.flat[flat] > worst:
                worst = float(diff.flat[flat])
                cell = np.unravel_index(flat, diff.shape)
                where = (tuple(Fraction(f.p) ** w.lo * int(t) for w, t in zip(windows, cell)), u)
        return worst, where
    return _pointwise_deviation(f, g, windows, u_level)


def _dense_slice(table: TableFunction, windows: List[EntryWindow], u_level: int, iu: int) -> np.ndarray:
    total = np.zeros(tuple(w.size(table.p) for w in windows), dtype=complex)
    for term in table.terms:
        pair14 = align_pair(term.pair14, windows[0], windows[3], u_level)
        pair23 = align_pair(term.pair23, windows[1], windows[2], u_level)
        total += np.einsum("ad,bc->abcd", pair14.values[:, :, iu], pair23.values[:, :, iu])
    return total


def _same_frame(h1: Optional[Mat2], h2: Optional[Mat2]) -> bool:
    if h1 is None or h2 is None:
        return h1 is None and h2 is None
    return all(x.agrees_with(y) for x, y in zip((h1.a, h1.b, h1.c, h1.d), (h2.a, h2.b, h2.c, h2.d)))


def _pointwise_deviation(f: SchwartzFunction, g: SchwartzFunction, windows: List[EntryWindow], u_level: int):
    p = f.p
    units = unit_classes(p, u_level)
    cells = len(units)
    for w in windows:
        cells *= w.size(p)
    if cells > MAX_POINTWISE_CELLS:
        raise ContextError(f"comparison grid has {cells} cells; compare tabulated forms instead")
    prec = max(w.hi for w in windows) + max(u_level, 1) + 40
    axes = [
        [TruncatedElement.from_rational(p, Fraction(p) ** w.lo * t, prec) for t in range(w.size(p))]
        for w in windows
    ]
    u_points = [TruncatedElement(p, 0, u, prec) for u in units]
    worst, where = 0.0, None
    for x1, x2, x3, x4 in itertools.product(*axes):
        x = Mat2(x1, x2, x3, x4)
        for u, u_point in zip(units, u_points):
            gap = abs(f.evaluate(x, u_point) - g.evaluate(x, u_point))
            if gap > worst:
                worst = gap
                where = (tuple(e.to_fraction() for e in (x1, x2, x3, x4)), u)
    return worst, where


def schwartz_equal(f: SchwartzFunction, g: SchwartzFunction, tolerance: float = 1e-9) -> Comparison:
    deviation, where = max_deviation(f, g)
    return Comparison(deviation <= tolerance, deviation, where)


__all__ = ["MAX_POINTWISE_CELLS", "Comparison", "max_deviation", "sample_windows", "schwartz_equal"]
