"""Truncated p-adic numbers (balls) with exact valuation bookkeeping.

A ``TruncatedElement`` stands for the ball ``p^valuation * unit + p^precision Z_p``.
Values built at the working precision of a context are treated as exact; the
integration engine also builds genuinely coarse balls and relies on
``PrecisionShortfall`` to know when to refine them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Tuple, Union

from ..errors import PrecisionShortfall

Number = Union[int, Fraction]


def p_adic_valuation(p: int, n: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class TruncatedElement:
    p: int
    val: int
    unit: int
    prec: int

    # -- construction -----------------------------------------------------
    @classmethod
    def normalize(cls, p: int, val: int, raw: int, prec: int) -> "TruncatedElement":
        """Build ``p^val * raw`` known modulo ``p^prec``; ``raw`` may be divisible by p."""
        if prec <= val:
            return cls.zero_ball(p, prec)
        raw %= p ** (prec - val)
        if raw == 0:
            return cls.zero_ball(p, prec)
        while raw % p == 0:
            raw //= p
            val += 1
        return cls(p=p, val=val, unit=raw % p ** (prec - val), prec=prec)

    @classmethod
    def zero_ball(cls, p: int, prec: int) -> "TruncatedElement":
        return cls(p=p, val=prec, unit=0, prec=prec)

    @classmethod
    def from_rational(cls, p: int, value: Number, prec: int) -> "TruncatedElement":
        value = Fraction(value)
        if value == 0:
            return cls.zero_ball(p, prec)
        num, den = value.numerator, value.denominator
        v_num = p_adic_valuation(p, num)
        v_den = p_adic_valuation(p, den)
        val = v_num - v_den
        if prec <= val:
            return cls.zero_ball(p, prec)
        modulus = p ** (prec - val)
        unit = (num // p ** v_num) * pow(den // p ** v_den, -1, modulus)
        return cls(p=p, val=val, unit=unit % modulus, prec=prec)

    @classmethod
    def from_unit(cls, p: int, val: int, unit: int, prec: int) -> "TruncatedElement":
        if unit % p == 0:
            raise ValueError(f"{unit} is not a unit mod {p}")
        return cls.normalize(p, val, unit, prec)

    # -- inspection -------------------------------------------------------
    @property
    def is_zero_ball(self) -> bool:
        return self.unit == 0

    @property
    def relative_precision(self) -> int:
        return 0 if self.is_zero_ball else self.prec - self.val

    def valuation(self) -> float:
        """Exact valuation, ``math.inf`` for a zero ball."""
        return math.inf if self.is_zero_ball else self.val

    def require_valuation(self) -> int:
        if self.is_zero_ball:
            raise PrecisionShortfall(f"value is 0 mod p^{self.prec}; valuation undecided", self.prec + 1)
        return self.val

    def valuation_at_least(self, k: int) -> bool:
        if not self.is_zero_ball:
            return self.val >= k
        if self.prec >= k:
            return True
        raise PrecisionShortfall(f"cannot decide v(x) >= {k} at precision {self.prec}", k)

    def valuation_bound(self) -> Tuple[Fraction, bool]:
        """(v, True) when the valuation is known, else (lower bound, False)."""
        if self.is_zero_ball:
            return Fraction(self.prec), False
        return Fraction(self.val), True

    def unit_residue(self, r: int) -> int:
        """Unit part modulo p^r."""
        if r <= 0:
            return 0
        if self.is_zero_ball:
            raise PrecisionShortfall("zero ball has no unit part", self.prec + 1)
        if self.prec - self.val < r:
            raise PrecisionShortfall(
                f"unit part needed mod p^{r}, known mod p^{self.prec - self.val}", self.val + r
            )
        return self.unit % self.p ** r

    def residue(self, k: int) -> Fraction:
        """Representative of the class of x modulo p^k O (a rational number)."""
        if self.is_zero_ball or self.val >= k:
            if self.is_zero_ball and self.prec < k:
                raise PrecisionShortfall(f"x mod p^{k} undecided", k)
            return Fraction(0)
        if self.prec < k:
            raise PrecisionShortfall(f"x mod p^{k} needs precision {k}, have {self.prec}", k)
        width = k - self.val
        return Fraction(self.unit % self.p ** width) * Fraction(self.p) ** self.val

    def fractional_part(self) -> Fraction:
        """The p-adic fractional part {x}_p in [0, 1)."""
        return self.residue(0)

    def to_fraction(self) -> Fraction:
        if self.is_zero_ball:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def abs(self) -> float:
        if self.is_zero_ball:
            return 0.0
        return float(self.p) ** (-self.val)

    def agrees_with(self, other: "TruncatedElement") -> bool:
        """Equality at the shared precision."""
        shared = min(self.prec, other.prec)
        return (self - other).valuation_at_least(shared)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other: object) -> "TruncatedElement":
        if isinstance(other, TruncatedElement):
            if other.p != self.p:
                raise ValueError("mixing elements of different residue characteristic")
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedElement.from_rational(self.p, other, max(self.prec, 0) + 2 * abs(self.val) + 64)
        raise TypeError(f"cannot combine TruncatedElement with {type(other).__name__}")

    def __add__(self, other: object) -> "TruncatedElement":
        y = self._coerce(other)
        prec = min(self.prec, y.prec)
        low = min(self.val, y.val)
        if low >= prec:
            return TruncatedElement.zero_ball(self.p, prec)
        raw = self.unit * self.p ** (self.val - low) + y.unit * self.p ** (y.val - low)
        return TruncatedElement.normalize(self.p, low, raw, prec)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedElement":
        if self.is_zero_ball:
            return self
        return TruncatedElement(self.p, self.val, (-self.unit) % self.p ** (self.prec - self.val), self.prec)

    def __sub__(self, other: object) -> "TruncatedElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: object) -> "TruncatedElement":
        return self._coerce(other) - self

    def __mul__(self, other: object) -> "TruncatedElement":
        y = self._coerce(other)
        prec = min(self.prec + y.val, y.prec + self.val)
        if self.is_zero_ball or y.is_zero_ball:
            return TruncatedElement.zero_ball(self.p, prec)
        return TruncatedElement.normalize(self.p, self.val + y.val, self.unit * y.unit, prec)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedElement":
        if self.is_zero_ball:
            raise PrecisionShortfall("cannot invert a ball containing 0", self.prec + 1)
        rel = self.prec - self.val
        modulus = self.p ** rel
        return TruncatedElement(self.p, -self.val, pow(self.unit, -1, modulus), self.prec - 2 * self.val)

    def __truediv__(self, other: object) -> "TruncatedElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: object) -> "TruncatedElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> "TruncatedElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return TruncatedElement(self.p, 0, 1, max(self.relative_precision, 1))
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    # -- balls ------------------------------------------------------------
    def children(self) -> Iterator["TruncatedElement"]:
        """The p sub-balls of radius p^-(prec+1)."""
        step = self.p ** (self.prec - self.val) if not self.is_zero_ball else 0
        for t in range(self.p):
            if self.is_zero_ball:
                if t == 0:
                    yield TruncatedElement.zero_ball(self.p, self.prec + 1)
                else:
                    yield TruncatedElement(self.p, self.prec, t, self.prec + 1)
            else:
                yield TruncatedElement(self.p, self.val, self.unit + t * step, self.prec + 1)

    def with_precision(self, prec: int) -> "TruncatedElement":
        if prec >= self.prec:
            return self
        return TruncatedElement.normalize(self.p, self.val, self.unit, prec)

    def __repr__(self) -> str:
        if self.is_zero_ball:
            return f"O({self.p}^{self.prec})"
        return f"{self.p}^{self.val}*{self.unit} + O({self.p}^{self.prec})"


def psi(x: TruncatedElement) -> complex:
    """Unramified additive character exp(2 pi i {x}_p)."""
    if not x.is_zero_ball and x.val >= 0:
        return 1.0 + 0.0j
    frac = x.fractional_part()
    if frac == 0:
        return 1.0 + 0.0j
    return cmath.exp(2j * math.pi * (frac.numerator % frac.denominator) / frac.denominator)


def psi_rational(p: int, y: Number) -> complex:
    """psi at an exact rational, through its p-adic fractional part."""
    y = Fraction(y)
    den = y.denominator
    e = 0
    while den % p == 0:
        den //= p
        e += 1
    if e == 0:
        return 1.0 + 0.0j
    modulus = p ** e
    r = (y.numerator * pow(den, -1, modulus)) % modulus
    return cmath.exp(2j * math.pi * r / modulus)


def valuation(x) -> float:
    """Valuation of an F- or E-element; ``math.inf`` for zero."""
    return x.valuation()


__all__ = ["TruncatedElement", "psi", "psi_rational", "valuation", "p_adic_valuation"]
