"""Kirillov-model vectors 1_{nu,n} and the data fixing a supercuspidal's omega-action."""
from __future__ import annotations

import cmath
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Set, Tuple

from ..characters import exponent_level, f_unit_group, shell_fourier_coefficients
from ..errors import ContextError, PrecisionShortfall
from ..padic import p_adic_valuation, psi_rational
from .symbolic import C1, SymbolicValue

Key = Tuple[int, int]  # (character exponent, support n)


@dataclass(frozen=True)
class SupercuspidalParams:
    """Level c = -n_1 >= 2 and central character w with w(p) = z0, w|O* = w0.

    Characters nu of O* are exponents against the fixed generator of
    (O/p^L)*, L = ``ambient_level``.  ``w0_exponent`` must give a character of
    level <= 1.
    """

    p: int
    c: int
    z0: complex = 1.0
    w0_exponent: int = 0
    ambient_level: int = 0

    def __post_init__(self) -> None:
        if self.p == 2:
            raise ContextError("p = 2 is outside the level law")
        if self.c < 2:
            raise ContextError("supercuspidal level must be >= 2")
        if self.ambient_level == 0:
            object.__setattr__(self, "ambient_level", self.c + 4)
        if self.ambient_level < self.c:
            raise ContextError("ambient character level must cover the representation level")
        if self.level_of(self.w0_exponent) > 1:
            raise ContextError("central characters of level > 1 are not supported")

    @property
    def order(self) -> int:
        return (self.p - 1) * self.p ** (self.ambient_level - 1)

    @property
    def modulus(self) -> int:
        return self.p ** self.ambient_level

    def level_of(self, k: int) -> int:
        return exponent_level(self.p, self.ambient_level, k % self.order)

    def n_law(self, k: int) -> int:
        """n_nu = min(-c, -2 i) for nu of level i."""
        return min(-self.c, -2 * self.level_of(k))

    def char_value(self, k: int, u: int) -> complex:
        if k % self.order == 0:
            return 1.0 + 0.0j
        group = f_unit_group(self.p, self.ambient_level)
        (e,) = group.log((u % self.modulus,))
        return cmath.exp(2j * math.pi * ((k * e) % self.order) / self.order)

    def w0_at_minus_one(self) -> complex:
        return self.char_value(self.w0_exponent, -1)

    def central_value(self, x: Fraction) -> complex:
        v, u = split_rational(self.p, x, self.modulus)
        return complex(self.z0) ** v * self.char_value(self.w0_exponent, u)

    def symbol_name(self, k: int) -> str:
        k %= self.order
        return C1 if k == 0 else f"C[{k}]"

    def symbol(self, k: int) -> SymbolicValue:
        return SymbolicValue.symbol(self.symbol_name(k))

    def reduce(self, value: SymbolicValue) -> SymbolicValue:
        """Apply C_nu C_{nu^-1 w0^-1} = w0(-1) z0^(n_nu) to every monomial."""
        out: Dict[Tuple[Tuple[str, int], ...], complex] = defaultdict(complex)
        for monomial, coefficient in value.terms().items():
            powers = dict(monomial)
            coefficient *= self._collapse(powers)
            out[tuple(sorted((k, e) for k, e in powers.items() if e))] += coefficient
        return SymbolicValue.from_terms(out.items()).pruned()

    def _collapse(self, powers: Dict[str, int]) -> complex:
        factor = 1.0 + 0.0j
        sign = self.w0_at_minus_one()
        changed = True
        while changed:
            changed = False
            for name in sorted(powers):
                if powers.get(name, 0) <= 0:
                    continue
                k = self._exponent_of(name)
                partner = self.symbol_name(-k - self.w0_exponent)
                needed = 2 if partner == name else 1
                have = powers[name] if partner == name else min(powers[name], powers.get(partner, 0))
                if have < needed:
                    continue
                powers[name] -= 1
                powers[partner] -= 1
                factor *= sign * complex(self.z0) ** self.n_law(k)
                changed = True
        return factor

    def _exponent_of(self, name: str) -> int:
        return 0 if name == C1 else int(name[2:-1])

    def gauss_expansion(self, a: Fraction) -> Dict[int, complex]:
        """psi(a u) = sum_k g_k nu_k(u) on u in O*."""
        return _gauss_expansion(self.p, self.ambient_level, Fraction(a))


def split_rational(p: int, x: Fraction, modulus: int) -> Tuple[int, int]:
    """(v(x), unit part of x mod modulus)."""
    x = Fraction(x)
    if x == 0:
        raise ContextError("0 has no unit part")
    v = p_adic_valuation(p, x.numerator) - p_adic_valuation(p, x.denominator)
    unit = x / Fraction(p) ** v
    return v, (unit.numerator * pow(unit.denominator, -1, modulus)) % modulus


@lru_cache(maxsize=4096)
def _gauss_expansion(p: int, level: int, a: Fraction) -> Dict[int, complex]:
    if a == 0:
        return {0: 1.0 + 0.0j}
    v = p_adic_valuation(p, a.numerator) - p_adic_valuation(p, a.denominator)
    if v >= 0:
        return {0: 1.0 + 0.0j}
    if -v > level:
        raise PrecisionShortfall(f"psi on this shell has level {-v} above the ambient level {level}", -v)
    group = f_unit_group(p, level)
    (g,) = group.generators[0]
    modulus = p ** level
    values = []
    u = 1
    for _ in range(group.orders[0]):
        values.append(psi_rational(p, a * u))
        u = (u * g) % modulus
    return shell_fourier_coefficients(p, level, values)


@dataclass(frozen=True)
class KirillovVector:
    """Finite combination sum c_{nu,n} 1_{nu,n}; keys are (exponent of nu, n)."""

    terms: Dict[Key, SymbolicValue] = field(default_factory=dict)

    @classmethod
    def basis(cls, k: int = 0, n: int = 0) -> "KirillovVector":
        return cls({(k, n): SymbolicValue.number(1)})

    @classmethod
    def collect(cls, pairs: Iterable[Tuple[Key, SymbolicValue]]) -> "KirillovVector":
        out: Dict[Key, SymbolicValue] = {}
        for key, value in pairs:
            out[key] = out[key] + value if key in out else value
        pruned = {key: value.pruned() for key, value in out.items()}
        return cls({key: value for key, value in pruned.items() if not value.is_zero()})

    def __iter__(self) -> Iterator[Tuple[Key, SymbolicValue]]:
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "KirillovVector") -> "KirillovVector":
        return KirillovVector.collect(list(self.terms.items()) + list(other.terms.items()))

    def scale(self, factor) -> "KirillovVector":
        return KirillovVector.collect((key, value * factor) for key, value in self.terms.items())

    def coefficient(self, k: int, n: int) -> SymbolicValue:
        return self.terms.get((k, n), SymbolicValue.zero())

    def supports(self) -> Set[int]:
        return {n for _, n in self.terms}

    def is_zero(self) -> bool:
        return not self.terms


__all__ = ["Key", "KirillovVector", "SupercuspidalParams", "split_rational"]
