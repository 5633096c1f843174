"""Schwartz functions on M2(F) x F* and Weil words.

Every function here is a finite sum of product terms
``T14(x1, x4, u) * T23(x2, x3, u)``: the quadratic form det and the pairing
(x, y) never couple the (x1, x4) entries with the (x2, x3) entries, so the
Weil representation acts on each pair separately.  u is always supported on
O* and resolved modulo p^u_level.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContextError
from ..padic import Mat2, TruncatedElement

PAIR_14 = (0, 3)
PAIR_23 = (1, 2)


@lru_cache(maxsize=None)
def unit_classes(p: int, r: int) -> Tuple[int, ...]:
    if r <= 0:
        return (1,)
    return tuple(x for x in range(1, p ** r) if x % p)


@lru_cache(maxsize=None)
def unit_class_index(p: int, r: int) -> Dict[int, int]:
    return {u: i for i, u in enumerate(unit_classes(p, r))}


@dataclass(frozen=True)
class EntryWindow:
    """x in p^lo O, constant on cosets of p^hi O (hi >= lo)."""

    lo: int
    hi: int

    def size(self, p: int) -> int:
        return p ** (self.hi - self.lo)


@dataclass
class PairTable:
    """Values of one factor on cells (p^lo_a t_a + p^hi_a O) x (p^lo_b t_b + p^hi_b O) x u-class."""

    p: int
    first: EntryWindow
    second: EntryWindow
    u_level: int
    values: np.ndarray

    def copy(self) -> "PairTable":
        return PairTable(self.p, self.first, self.second, self.u_level, self.values.copy())

    def cell_index(self, window: EntryWindow, x: TruncatedElement) -> Optional[int]:
        if not x.valuation_at_least(window.lo):
            return None
        residue = x.residue(window.hi) / Fraction(self.p) ** window.lo
        return int(residue) % window.size(self.p)

    def u_index(self, u: TruncatedElement) -> Optional[int]:
        if u.require_valuation() != 0:
            return None
        if self.u_level <= 0:
            return 0
        return unit_class_index(self.p, self.u_level)[u.unit_residue(self.u_level)]

    def evaluate(self, xa: TruncatedElement, xb: TruncatedElement, u: TruncatedElement) -> complex:
        ia = self.cell_index(self.first, xa)
        if ia is None:
            return 0j
        ib = self.cell_index(self.second, xb)
        if ib is None:
            return 0j
        iu = self.u_index(u)
        if iu is None:
            return 0j
        return complex(self.values[ia, ib, iu])


@dataclass
class ProductTerm:
    pair14: PairTable
    pair23: PairTable

    def evaluate(self, x: Sequence[TruncatedElement], u: TruncatedElement) -> complex:
        head = self.pair14.evaluate(x[0], x[3], u)
        if head == 0:
            return 0j
        return head * self.pair23.evaluate(x[1], x[2], u)


@dataclass(frozen=True)
class Phase:
    """psi(u * kappa * [with_x1x4 * (x1 - b1) x4 - x2 (x3 - b2)])."""

    kappa: Fraction
    b1: Fraction = Fraction(0)
    b2: Fraction = Fraction(0)
    with_x1x4: bool = True


@dataclass(frozen=True)
class Block:
    """scale * prod_j char(center_j + p^level_j O)(x_j) * char(u_center + p^u_level O)(u) * phase."""

    centers: Tuple[Fraction, Fraction, Fraction, Fraction]
    levels: Tuple[int, int, int, int]
    u_center: int = 1
    u_level: int = 0
    phase: Optional[Phase] = None
    scale: complex = 1.0


class SchwartzFunction:
    """Base class: f(x, u) on M2(F) x F*, optionally framed by a left SL2(O) translation."""

    p: int
    frame: Optional[Mat2]

    def _framed(self, x: Mat2) -> Mat2:
        if self.frame is None:
            return x
        return self.frame.inverse() @ x

    def evaluate(self, x: Mat2, u: TruncatedElement) -> complex:
        raise NotImplementedError

    def __call__(self, x: Mat2, u: TruncatedElement) -> complex:
        return self.evaluate(x, u)


@dataclass
class BlockFunction(SchwartzFunction):
    """Closed block form: a finite sum of ``Block``s."""

    p: int
    blocks: List[Block]
    frame: Optional[Mat2] = None
    label: str = ""

    def evaluate(self, x: Mat2, u: TruncatedElement) -> complex:
        from .tables import evaluate_block

        y = self._framed(x)
        entries = (y.a, y.b, y.c, y.d)
        return complex(sum(evaluate_block(self.p, block, entries, u) for block in self.blocks))


@dataclass
class TableFunction(SchwartzFunction):
    """Explicit value tables, a finite sum of product terms."""

    p: int
    terms: List[ProductTerm]
    frame: Optional[Mat2] = None
    label: str = ""

    def evaluate(self, x: Mat2, u: TruncatedElement) -> complex:
        y = self._framed(x)
        entries = (y.a, y.b, y.c, y.d)
        return complex(sum(term.evaluate(entries, u) for term in self.terms))


@dataclass
class TranslatedFunction(SchwartzFunction):
    """(x, u) -> base(x g, u / det g)."""

    base: SchwartzFunction
    g: Mat2
    p: int = 0
    frame: Optional[Mat2] = None

    def __post_init__(self) -> None:
        self.p = self.base.p
        det = self.g.det()
        if det.is_zero_ball:
            raise ContextError("right translation by a singular matrix")
        if det.require_valuation() != 0:
            raise ContextError("right translation must keep u inside O* (det g a unit)")

    def evaluate(self, x: Mat2, u: TruncatedElement) -> complex:
        y = self._framed(x)
        return self.base.evaluate(y @ self.g, u / self.g.det())


@dataclass(frozen=True)
class WeilLetter:
    name: str
    param: Fraction = Fraction(0)


@dataclass(frozen=True)
class WeilWord:
    """Product g1 g2 ... gk of generators; r'(word) applies gk first.

    ``gamma`` is the Weil index, +1 for the matrix algebra.
    """

    letters: Tuple[WeilLetter, ...] = ()
    gamma: int = 1

    def __matmul__(self, other: "WeilWord") -> "WeilWord":
        return WeilWord(self.letters + other.letters, self.gamma * other.gamma)


__all__ = [
    "PAIR_14",
    "PAIR_23",
    "Block",
    "BlockFunction",
    "EntryWindow",
    "PairTable",
    "Phase",
    "ProductTerm",
    "SchwartzFunction",
    "TableFunction",
    "TranslatedFunction",
    "WeilLetter",
    "WeilWord",
    "unit_classes",
    "unit_class_index",
]
