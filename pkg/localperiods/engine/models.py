"""Case descriptions and evaluation points for the local-period engine."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from ..characters import MultChar
from ..errors import ContextError
from ..padic import FieldContext
from ..sections import (
    SectionSpec,
    full_k_section,
    induced_vector,
    k_tilde_section,
    newform_section,
    split_section,
)
from ..weil import SchwartzFunction
from ..whittaker import RepSpec

CASE_TAGS = (
    "U-INERT",
    "U-SPLIT",
    "R1-RAMEXT",
    "R2-SPECIAL",
    "R3-SC-SPLIT",
    "R3-RPS-SPLIT",
    "R4-RAMCHI",
    "R5-JOINT",
    "MC-SC-INERT",
)

# borel: Borel coordinates over GL2(O) = B K; split-borel: the same after
# g -> n_lower(sqrt D) g; torus: GL2 = O_E* B; kirillov: pairing route.
ROUTES = ("borel", "split-borel", "torus", "kirillov")

TAIL_MODES = ("analytic-geometric", "bounded-truncation")

SPLIT_TAGS = ("U-SPLIT", "R2-SPECIAL", "R3-SC-SPLIT", "R3-RPS-SPLIT")
MOMENT_TAGS = ("R3-SC-SPLIT", "R3-RPS-SPLIT")

CENTRAL_TOL = 1e-9


@dataclass(frozen=True)
class Resolution:
    """Residue refinement for the Borel coordinates.

    ``a1``/``a2`` are relative resolutions on their shells (0 means one
    representative per shell), ``m`` is the absolute level below which
    additive shells are refined, ``m_rel`` a relative floor for every
    explicit additive shell, ``alpha`` the relative resolution of the alpha
    shells in the P sum.
    """

    a1: int = 0
    a2: int = 0
    m: int = 0
    m_rel: int = 0
    alpha: int = 0


@dataclass(frozen=True)
class CosetTerm:
    """One piece of the coset decomposition of the P integral.

    ``weight`` is A_i (or A_{i,beta}); ``function`` is r'(n_lower(p^i)) f (or
    its beta twist); ``floors`` bound v(a1), v(a2), v(m) from below on the
    support of the integrand.
    """

    index: int
    weight: Fraction
    function: SchwartzFunction
    beta: int = 1
    floors: Tuple[int, int, int] = (0, 0, 0)
    resolution: Resolution = Resolution()
    v_min: int = 0

    def to_dict(self) -> Dict[str, object]:
        return {
            "index": self.index,
            "weight": str(self.weight),
            "beta": self.beta,
            "floors": list(self.floors),
        }


@dataclass(frozen=True)
class CaseSpec:
    """A case tag with its field, representation, characters and (f, Phi_s) choice.

    ``chars`` is (chi1, chi2) for inert and ramified E, and
    (chi1^(1), chi2^(1), chi1^(2), chi2^(2)) for split E.
    """

    tag: str
    ctx: FieldContext
    rep: RepSpec
    chars: Tuple[MultChar, ...]
    f: Optional[SchwartzFunction]
    level: int = 0
    route: str = "borel"
    cosets: Tuple[CosetTerm, ...] = ()
    vanishing_cosets: Tuple[CosetTerm, ...] = ()
    group_weight: Fraction = Fraction(1)
    label: str = ""

    def __post_init__(self) -> None:
        if self.tag not in CASE_TAGS:
            raise ContextError(f"unknown case tag {self.tag!r}")
        if self.route not in ROUTES:
            raise ContextError(f"unknown integration route {self.route!r}")
        expected = 4 if self.tag in SPLIT_TAGS else 2
        if len(self.chars) != expected:
            raise ContextError(f"{self.tag} takes {expected} characters, got {len(self.chars)}")
        if not self.rep.satisfies_central_condition(self.chi_product_at_p()):
            raise ContextError(
                f"central condition fails: w_pi(p) * (chi1 chi2)(p) = "
                f"{self.rep.central_character * self.chi_product_at_p()!r}"
            )

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def is_split(self) -> bool:
        return self.tag in SPLIT_TAGS

    @property
    def uses_moments(self) -> bool:
        return self.tag in MOMENT_TAGS

    def chi_product_at_p(self) -> complex:
        """(chi1 chi2)|F*(p); ramified E characters are valued at sqrt D = p^(1/2)."""
        total = 1.0 + 0.0j
        for chi in self.chars:
            value = complex(chi.value_at_uniformizer)
            if chi.field == "E" and chi.extension_kind == "ramified":
                value = value ** 2
            total *= value
        return total

    def section(self, s: complex, shortcut: bool = False) -> SectionSpec:
        """Phi_s as the case prescribes it."""
        ctx, c = self.ctx, self.level
        if self.tag in ("U-INERT", "R1-RAMEXT"):
            return full_k_section(ctx, self.chars[0], self.chars[1], s, label=self.tag)
        if self.is_split:
            c11, c21, c12, c22 = self.chars
            first = induced_vector(c11, c21, s)
            if self.tag == "U-SPLIT":
                second = induced_vector(c12, c22, s)
            else:
                second = induced_vector(c12, c22, s, level=c, support=((c, 1.0),))
            return split_section(ctx, (first, second), s, shortcut_min_valuation=shortcut, label=self.tag)
        if self.tag in ("R4-RAMCHI", "R5-JOINT"):
            return newform_section(ctx, self.chars[0], self.chars[1], s, c, support=((0, 1.0),), label=self.tag)
        return k_tilde_section(ctx, self.chars[0], self.chars[1], s, c // 2)

    def coset(self, index: Optional[int] = None) -> CosetTerm:
        """The coset term with the given index (default: the identity coset i = c)."""
        target = self.rep.level if index is None else index
        for term in self.cosets + self.vanishing_cosets:
            if term.index == target:
                return term
        raise ContextError(f"{self.tag} has no coset term with index {target}")

    def to_dict(self) -> Dict[str, object]:
        return {
            "tag": self.tag,
            "field": self.ctx.to_dict(),
            "rep": self.rep.to_dict(),
            "level": self.level,
            "route": self.route,
            "cosets": [term.to_dict() for term in self.cosets],
            "label": self.label,
        }


@dataclass(frozen=True)
class EvalPoint:
    """(s, w) with the truncation depth V_max and the P-tail mode."""

    s: complex
    w: complex = 0.5
    depth: int = 24
    tail_mode: str = "analytic-geometric"

    def __post_init__(self) -> None:
        if self.tail_mode not in TAIL_MODES:
            raise ContextError(f"unknown tail mode {self.tail_mode!r}")
        if self.depth < 4:
            raise ContextError("truncation depth must be at least 4 shells")

    def delta(self, q: int) -> complex:
        """q^-(w/2 + 1/4)."""
        return q ** (-(self.w / 2 + 0.25))

    def alpha_weight(self, q: int, v: int) -> complex:
        """|alpha|^(w/2 - 1/4) on the shell v(alpha) = v."""
        return q ** (-v * (self.w / 2 - 0.25))

    def to_dict(self) -> Dict[str, object]:
        s, w = complex(self.s), complex(self.w)
        return {
            "s": [s.real, s.imag],
            "w": [w.real, w.imag],
            "depth": self.depth,
            "tailMode": self.tail_mode,
        }


__all__ = [
    "CASE_TAGS",
    "CENTRAL_TOL",
    "MOMENT_TAGS",
    "ROUTES",
    "SPLIT_TAGS",
    "TAIL_MODES",
    "CaseSpec",
    "CosetTerm",
    "EvalPoint",
    "Resolution",
]
