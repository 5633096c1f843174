"""Representations of GL2(F) whose newform Whittaker functions we tabulate."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..characters import MultChar, ShiftedChar
from ..errors import ContextError
from ..sections import InducedVector
from ..sections.models import Character

REP_KINDS = ("unramified", "special", "ramified-principal", "supercuspidal", "joint")

CENTRAL_TOL = 1e-9


@dataclass(frozen=True)
class RepSpec:
    """pi = pi(mu1, mu2) (or its special quotient), or a supercuspidal of level c.

    The newform lives in the induced model of (mu1^-1, mu2^-1).  For the
    supercuspidal kind only the level and the central character are known:
    ``central_value`` is w_pi(p) and ``central_level`` is 0 or 1.
    """

    kind: str
    p: int
    level: int
    mu1: Optional[MultChar] = None
    mu2: Optional[MultChar] = None
    central_value: complex = 1.0
    central_level: int = 0
    label: str = ""

    def __post_init__(self) -> None:
        if self.kind not in REP_KINDS:
            raise ContextError(f"unknown representation kind {self.kind!r}")
        if self.kind != "supercuspidal" and (self.mu1 is None or self.mu2 is None):
            raise ContextError(f"{self.kind} representations need mu1 and mu2")

    @property
    def q(self) -> int:
        return self.p

    @property
    def half_level(self) -> int:
        return self.level // 2

    @property
    def central_character(self) -> complex:
        """w_pi(p)."""
        if self.kind == "supercuspidal":
            return complex(self.central_value)
        return complex(self.mu1.value_at_uniformizer * self.mu2.value_at_uniformizer)

    def satisfies_central_condition(self, chi_product_at_p: complex) -> bool:
        """w_pi (chi1 chi2)|F* = 1 at the uniformizer."""
        return abs(self.central_character * chi_product_at_p - 1) < CENTRAL_TOL

    def newform_vector(self) -> InducedVector:
        """The K1(p^c)-invariant vector of Ind(mu1^-1 |.|^(1/2), mu2^-1 |.|^(-1/2))."""
        if self.kind == "supercuspidal":
            raise ContextError("supercuspidal newforms live in the Kirillov model")
        char1: Character = ShiftedChar(self.mu1.inverse(), 0.0, 1)
        char2: Character = ShiftedChar(self.mu2.inverse(), 0.0, -1)
        return InducedVector(char1, char2, self.level, self._support())

    def _support(self) -> Tuple[Tuple[int, complex], ...]:
        if self.kind == "unramified":
            return ((0, 1.0),)
        if self.kind == "special":
            return ((1, 1.0), (0, -1.0 / self.q))
        if self.kind == "ramified-principal":
            return ((self.half_level, 1.0),)
        return ((self.level, 1.0),)

    def to_dict(self) -> Dict[str, object]:
        w = self.central_character
        return {
            "kind": self.kind,
            "p": self.p,
            "level": self.level,
            "centralValue": [w.real, w.imag],
            "label": self.label,
        }


def unramified_rep(p: int, mu1: complex, mu2: complex, label: str = "unramified") -> RepSpec:
    return RepSpec(
        "unramified",
        p,
        0,
        MultChar(p, value_at_uniformizer=complex(mu1), name="mu1"),
        MultChar(p, value_at_uniformizer=complex(mu2), name="mu2"),
        label=label,
    )


def special_rep(p: int, mu1: complex, label: str = "special") -> RepSpec:
    """The unramified twist of Steinberg with mu1^-1 mu2 = |.|."""
    mu1 = complex(mu1)
    return RepSpec(
        "special",
        p,
        1,
        MultChar(p, value_at_uniformizer=mu1, name="mu1"),
        MultChar(p, value_at_uniformizer=mu1 / p, name="mu2"),
        label=label,
    )


def ramified_principal_rep(mu1: MultChar, mu2: MultChar, label: str = "ramified-principal") -> RepSpec:
    """pi(mu1, mu2) with both characters of level k >= 1; conductor 2k."""
    if mu1.field != "F" or mu2.field != "F":
        raise ContextError("principal series are built from characters of F*")
    if mu1.level < 1 or mu1.level != mu2.level:
        raise ContextError("both characters must have the same positive level")
    return RepSpec("ramified-principal", mu1.p, 2 * mu1.level, mu1, mu2, label=label)


def joint_rep(mu1: MultChar, mu2: MultChar, label: str = "joint") -> RepSpec:
    """pi(mu1, mu2) with mu1 unramified and mu2 of level c >= 1."""
    if mu1.level != 0 or mu2.level < 1:
        raise ContextError("joint ramification needs mu1 unramified and mu2 ramified")
    return RepSpec("joint", mu1.p, mu2.level, mu1, mu2, label=label)


def supercuspidal_rep(
    p: int,
    c: int,
    central_value: complex = 1.0,
    central_level: int = 0,
    label: str = "supercuspidal",
) -> RepSpec:
    if c < 2:
        raise ContextError("supercuspidal representations have level >= 2")
    if central_level not in (0, 1):
        raise ContextError("only unramified or level-1 central characters are supported")
    return RepSpec(
        "supercuspidal",
        p,
        c,
        central_value=complex(central_value),
        central_level=central_level,
        label=label,
    )


__all__ = [
    "REP_KINDS",
    "RepSpec",
    "joint_rep",
    "ramified_principal_rep",
    "special_rep",
    "supercuspidal_rep",
    "unramified_rep",
]
