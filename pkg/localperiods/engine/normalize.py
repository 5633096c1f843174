"""Expected local L-factors, the normalized P0 and the denominator check."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..characters import eval_character
from ..errors import PoleError
from ..padic import sqrt_d
from ..sections import k0_volume
from .closed import POLE_TOL, character_values, closed_P, matrix_coefficient_value, ramified_phi_numerator
from .models import CaseSpec, EvalPoint

POLY_TOL = 1e-8


@dataclass(frozen=True)
class EulerFactor:
    """L = 1 / (1 - coefficient q^(-s_degree s))."""

    label: str
    coefficient: complex
    s_degree: int = 0

    def inverse(self, q: int, s: complex) -> complex:
        return 1 - self.coefficient * q ** (-self.s_degree * s)

    def value(self, q: int, s: complex) -> complex:
        inverse = self.inverse(q, s)
        if abs(inverse) < POLE_TOL:
            raise PoleError(f"L({self.label})", inverse)
        return 1 / inverse

    def to_dict(self) -> Dict[str, object]:
        c = complex(self.coefficient)
        return {"label": self.label, "coefficient": [c.real, c.imag], "sDegree": self.s_degree}


@dataclass(frozen=True)
class LFactorTable:
    """L(eta, 1) L^E(chi, 2s+1) over L(Pi x Omega, 1/2) L(pi x chi1|F*, 2s+1/2), factor by factor."""

    tag: str
    numerator: Tuple[EulerFactor, ...]
    denominator: Tuple[EulerFactor, ...]

    def evaluate(self, q: int, s: complex) -> complex:
        total = 1.0 + 0j
        for factor in self.numerator:
            total *= factor.value(q, s)
        for factor in self.denominator:
            total /= factor.value(q, s)
        return total

    def denominator_inverse(self, q: int, s: complex) -> complex:
        """prod over the denominator factors of 1 / L."""
        total = 1.0 + 0j
        for factor in self.denominator:
            total *= factor.inverse(q, s)
        return total

    def to_dict(self) -> Dict[str, object]:
        return {
            "tag": self.tag,
            "numerator": [f.to_dict() for f in self.numerator],
            "denominator": [f.to_dict() for f in self.denominator],
        }


def _eta(inert: bool, q: int) -> EulerFactor:
    return EulerFactor("eta", (-1.0 if inert else 1.0) / q, 0)


def _split_values(case: CaseSpec) -> Tuple[complex, ...]:
    return tuple(complex(chi.value_at_uniformizer) for chi in case.chars)


def l_factor_table(case: CaseSpec) -> LFactorTable:
    q = case.q
    mus: List[complex] = []
    if case.rep.mu1 is not None:
        mus = [complex(case.rep.mu1.value_at_uniformizer), complex(case.rep.mu2.value_at_uniformizer)]
    root_q = math.sqrt(q)
    num: List[EulerFactor] = []
    den: List[EulerFactor] = []
    tag = case.tag
    if tag in ("U-INERT", "R4-RAMCHI", "R5-JOINT"):
        chi1, chi2 = _split_values(case)
        num.append(_eta(True, q))
        if tag == "U-INERT":
            num.append(EulerFactor("chi^E", chi1 / chi2 / q ** 2, 4))
            for i, mu in enumerate(mus, 1):
                den.append(EulerFactor(f"Pi x Omega, mu{i}", mu * mu * chi1 * chi2 / q, 0))
        active = [(2, mus[1])] if tag == "R5-JOINT" else list(enumerate(mus, 1))
        for i, mu in active:
            den.append(EulerFactor(f"pi x chi1, mu{i}", mu * chi1 / root_q, 2))
    elif tag == "R1-RAMEXT":
        r1, r2 = _split_values(case)
        num.append(EulerFactor("chi^E", r1 / r2 / q, 2))
        for i, mu in enumerate(mus, 1):
            den.append(EulerFactor(f"Pi x Omega, mu{i}", mu * r1 * r2 / root_q, 0))
            den.append(EulerFactor(f"pi x chi1, mu{i}", mu * r1 * r1 / root_q, 2))
    elif case.is_split:
        c11, c21, c12, c22 = _split_values(case)
        num.append(_eta(False, q))
        num.append(EulerFactor("chi^E(1)", c11 / c21 / q, 2))
        num.append(EulerFactor("chi^E(2)", c12 / c22 / q, 2))
        if tag in ("U-SPLIT", "R2-SPECIAL"):
            active = list(enumerate(mus, 1)) if tag == "U-SPLIT" else [(2, mus[1])]
            for i, mu in active:
                den.append(EulerFactor(f"Pi x Omega(1), mu{i}", mu * c21 * c12 / root_q, 0))
                den.append(EulerFactor(f"Pi x Omega(2), mu{i}", mu * c11 * c22 / root_q, 0))
                den.append(EulerFactor(f"pi x chi1, mu{i}", mu * c11 * c12 / root_q, 2))
    return LFactorTable(tag, tuple(num), tuple(den))


def normalized_P0(case: CaseSpec, s: complex) -> complex:
    """P0(s, 1/2, f, Phi_s): closed P at w = 1/2 times the L-factor quotient."""
    return l_factor_table(case).evaluate(case.q, s) * closed_P(case, s, 0.5)


def p0_table_value(case: CaseSpec, s: complex) -> complex:
    """The tabulated P0 of each case, written independently of normalized_P0."""
    q, c = case.q, case.level
    tag = case.tag
    if tag in ("U-INERT", "U-SPLIT", "R1-RAMEXT"):
        return 1.0 + 0j
    if tag == "MC-SC-INERT":
        return 0j if case.rep.level % 2 else complex(matrix_coefficient_value(q, case.rep.level))
    values = character_values(case, s)
    if tag in ("R2-SPECIAL", "R3-SC-SPLIT", "R3-RPS-SPLIT"):
        scale = (q + 1) ** 2 * q ** (2 * c - 2) if tag != "R2-SPECIAL" else (q + 1) ** 2
        return 1 / (scale * (1 - values.x2 / values.y2))
    if tag == "R4-RAMCHI":
        point = EvalPoint(s=s)
        numerator = ramified_phi_numerator(case, values, point.delta(q))
        return float(k0_volume(q, c)) * numerator / (1 + 1 / q)
    root = eval_character(case.chars[0], sqrt_d(case.ctx))
    return 1 / ((q - 1) ** 2 * (q + 1) ** 3 * q ** (4 * c - 5) * root)


@dataclass(frozen=True)
class DenominatorCheck:
    """closed P x prod 1/L over the expected denominator, fitted in X = q^-2s."""

    tag: str
    exponents: Tuple[int, ...]
    coefficients: Tuple[complex, ...]
    residual: float

    @property
    def passed(self) -> bool:
        return self.residual < POLY_TOL

    def to_dict(self) -> Dict[str, object]:
        return {
            "tag": self.tag,
            "exponents": list(self.exponents),
            "coefficients": [[complex(c).real, complex(c).imag] for c in self.coefficients],
            "residual": self.residual,
            "passed": self.passed,
        }


def _exponent_range(case: CaseSpec) -> Tuple[int, ...]:
    if case.tag == "R4-RAMCHI":
        c = case.level
        return tuple(range(-(c + 1), 2 * c + 2))
    return (0, 1, 2)


def check_points(q: int, count: int, real: float = 0.25) -> List[complex]:
    """s with X = q^-2s evenly spread on the circle |X| = q^(-2 real)."""
    step = math.pi / (count * math.log(q))
    return [complex(real, step * j) for j in range(count)]


def denominator_check(case: CaseSpec, points: Optional[Sequence[complex]] = None) -> DenominatorCheck:
    """Fit closed_P(s, 1/2) / prod L(denominator) by a Laurent polynomial in q^-2s."""
    q = case.q
    exponents = _exponent_range(case)
    if points is None:
        points = check_points(q, len(exponents) + 3)
    table = l_factor_table(case)
    xs = np.array([cmath.exp(-2 * s * math.log(q)) for s in points], dtype=complex)
    values = np.array([closed_P(case, s, 0.5) * table.denominator_inverse(q, s) for s in points], dtype=complex)
    design = np.stack([xs ** e for e in exponents], axis=1)
    coefficients, *_ = np.linalg.lstsq(design, values, rcond=None)
    scale = max(float(np.max(np.abs(values))), 1e-300)
    residual = float(np.max(np.abs(design @ coefficients - values))) / scale
    return DenominatorCheck(case.tag, exponents, tuple(complex(c) for c in coefficients), residual)


__all__ = [
    "DenominatorCheck",
    "EulerFactor",
    "LFactorTable",
    "check_points",
    "denominator_check",
    "l_factor_table",
    "normalized_P0",
    "p0_table_value",
]
