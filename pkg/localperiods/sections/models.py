"""Induced vectors, section specifications and Iwasawa decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

from ..characters import MultChar, ShiftedChar
from ..padic import FieldContext, Mat2

Character = Union[MultChar, ShiftedChar]

SECTION_KINDS = ("full-k", "newform", "k-tilde", "split")


@dataclass(frozen=True)
class InducedVector:
    """phi(b n_lower(p^i) k) = char1(a1) char2(a2) support[i] for k in K1(p^level).

    ``level == 0`` is the spherical vector, right K-invariant with phi(1) = 1.
    """

    char1: Character
    char2: Character
    level: int = 0
    support: Tuple[Tuple[int, complex], ...] = ((0, 1.0),)

    def support_value(self, i: int) -> complex:
        if self.level == 0:
            return 1.0 + 0.0j
        for index, value in self.support:
            if index == i:
                return complex(value)
        return 0j

    def support_map(self) -> Dict[int, complex]:
        return {i: self.support_value(i) for i in range(self.level + 1)}


@dataclass(frozen=True)
class SectionSpec:
    """An Eisenstein section Phi_s, evaluated at gamma_0 g for g in GL2(F).

    ``vectors`` holds one E-vector (inert, ramified) or the two F-vectors of
    the split places. ``k_tilde_level`` is k for the K~-invariant section of
    conductor 2k.
    """

    ctx: FieldContext
    kind: str
    vectors: Tuple[InducedVector, ...]
    s: complex = 0.0
    k_tilde_level: int = 0
    shortcut_min_valuation: bool = False
    label: str = ""

    @property
    def vector(self) -> InducedVector:
        return self.vectors[0]

    def to_dict(self) -> Dict[str, object]:
        return {
            "kind": self.kind,
            "extensionKind": self.ctx.extension_kind,
            "s": [complex(self.s).real, complex(self.s).imag],
            "levels": [v.level for v in self.vectors],
            "label": self.label,
        }


@dataclass(frozen=True)
class IwasawaDecomposition:
    """g = borel @ n_lower(p^index) @ k with k in K1(p^c); beta indexes the K1^1 refinement."""

    borel: Mat2
    index: int
    k: Mat2
    c: int
    beta: Optional[int] = None

    @property
    def a1(self):
        return self.borel.a

    @property
    def m(self):
        return self.borel.b

    @property
    def a2(self):
        return self.borel.d


__all__ = ["Character", "InducedVector", "IwasawaDecomposition", "SECTION_KINDS", "SectionSpec"]
