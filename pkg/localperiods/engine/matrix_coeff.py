"""The matrix-coefficient route for a supercuspidal pi at an inert place.

With Phi_s K-tilde invariant the local integral reduces to
vol{v(m) >= k, a1 = 1 mod p^k} * <F1, F> for Kirillov vectors F1, F of
support -k and character levels <= k (c = 2k).  Both pointwise identities
behind that reduction are checked on the modeled vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from ..errors import ContextError
from ..kirillov import KirillovVector, SupercuspidalParams, borel_act, is_congruence_invariant
from .closed import matrix_coefficient_value

TOL = 1e-12


@dataclass(frozen=True)
class MatrixCoefficientResult:
    p: int
    c: int
    value: Fraction
    vanishes_by_parity: bool = False
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "c": self.c,
            "value": str(self.value),
            "vanishesByParity": self.vanishes_by_parity,
            "checks": dict(self.checks),
        }


def level_exponent(params: SupercuspidalParams, level: int) -> int:
    """An exponent whose character of O* has exact level ``level``."""
    if level == 0:
        return 0
    exponent = params.order // ((params.p - 1) * params.p ** (level - 1))
    if params.level_of(exponent) != level:
        raise ContextError(f"no character of level {level} at ambient level {params.ambient_level}")
    return exponent


def pairing(params: SupercuspidalParams, left: KirillovVector, right: KirillovVector) -> complex:
    """<F1, F> = integral of F1(x) F(-x) d*x with vol(O*) = 1."""
    total = 0j
    for (k1, n1), a in left:
        for (k2, n2), b in right:
            if n1 != n2 or (k1 + k2) % params.order:
                continue
            total += a.to_complex() * b.to_complex() * params.char_value(k2, -1)
    return total


def _vectors_equal(left: KirillovVector, right: KirillovVector) -> bool:
    keys = set(left.terms) | set(right.terms)
    return all(
        abs(left.coefficient(*key).to_complex() - right.coefficient(*key).to_complex()) < TOL for key in keys
    )


def _domain_samples(p: int, k: int, depth: int) -> List[Tuple[Fraction, Fraction]]:
    """(a1, m) with a1 = 1 mod p^k and v(m) >= k."""
    step = Fraction(p) ** k
    out = []
    for j in range(depth):
        a1 = 1 + step * (j + 1)
        m = step * Fraction(j + 1, 2)
        out.append((a1, m))
    return out


def matrix_coeff_integral(p: int, c: int, depth: int = 4) -> MatrixCoefficientResult:
    """The K-tilde reduced integral for level c; odd c vanishes by parity."""
    if c < 1:
        raise ContextError("matrix-coefficient route needs a positive level")
    if c % 2:
        return MatrixCoefficientResult(p, c, Fraction(0), vanishes_by_parity=True)
    k = c // 2
    params = SupercuspidalParams(p, c)
    e = level_exponent(params, k)
    vector = KirillovVector.basis(e, -k)
    dual = KirillovVector.basis(-e % params.order, -k).scale(1 / params.char_value(e, -1))
    checks = {
        "profile": is_congruence_invariant(params, vector, k),
        "normalized": abs(pairing(params, dual, vector) - 1) < TOL,
        "unipotent": all(
            _vectors_equal(borel_act(params, (1, m, 1), vector), vector)
            for _, m in _domain_samples(p, k, depth)
        ),
        "diagonal": all(
            _vectors_equal(borel_act(params, (a1, 0, 1), vector), vector)
            for a1, _ in _domain_samples(p, k, depth)
        ),
    }
    if not all(checks.values()):
        failed = ", ".join(name for name, ok in checks.items() if not ok)
        raise ContextError(f"Kirillov vectors fail the reduction identities: {failed}")
    # vol(1 + p^k O; d*a1) * vol(p^k O; dm)
    volume = Fraction(1, (p - 1) * p ** (k - 1)) * Fraction(1, p ** k)
    if volume != matrix_coefficient_value(p, c):
        raise ContextError("volume bookkeeping disagrees with 1/((q-1) q^(c-1))")
    return MatrixCoefficientResult(p, c, volume, checks=checks)


__all__ = [
    "MatrixCoefficientResult",
    "level_exponent",
    "matrix_coeff_integral",
    "pairing",
]
