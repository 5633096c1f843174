"""Elements of the quadratic algebra E = F(sqrt D) in its three geometries."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union

from ..errors import ContextError, PrecisionShortfall
from .element import TruncatedElement
from .field import FieldContext

Scalar = Union[int, Fraction, TruncatedElement]


def to_element(ctx: FieldContext, value: Scalar) -> TruncatedElement:
    if isinstance(value, TruncatedElement):
        return value
    return TruncatedElement.from_rational(ctx.p, value, ctx.precision)


@dataclass(frozen=True)
class ExtensionElement:
    """``first + second*sqrt(D)`` (inert, ramified) or the pair ``(x, y)`` (split)."""

    kind: str
    D: int
    first: TruncatedElement
    second: TruncatedElement
    sqrt_d: int = 0

    @property
    def p(self) -> int:
        return self.first.p

    # -- arithmetic -------------------------------------------------------
    def _like(self, first: TruncatedElement, second: TruncatedElement) -> "ExtensionElement":
        return ExtensionElement(self.kind, self.D, first, second, self.sqrt_d)

    def __add__(self, other: "ExtensionElement") -> "ExtensionElement":
        return self._like(self.first + other.first, self.second + other.second)

    def __sub__(self, other: "ExtensionElement") -> "ExtensionElement":
        return self._like(self.first - other.first, self.second - other.second)

    def __neg__(self) -> "ExtensionElement":
        return self._like(-self.first, -self.second)

    def __mul__(self, other: Union["ExtensionElement", TruncatedElement, int]) -> "ExtensionElement":
        if not isinstance(other, ExtensionElement):
            return self._like(self.first * other, self.second * other)
        if self.kind == "split":
            return self._like(self.first * other.first, self.second * other.second)
        a1, b1, a2, b2 = self.first, self.second, other.first, other.second
        return self._like(a1 * a2 + b1 * b2 * self.D, a1 * b2 + a2 * b1)

    __rmul__ = __mul__

    def conjugate(self) -> "ExtensionElement":
        if self.kind == "split":
            return self._like(self.second, self.first)
        return self._like(self.first, -self.second)

    def norm(self) -> TruncatedElement:
        if self.kind == "split":
            return self.first * self.second
        return self.first * self.first - self.second * self.second * self.D

    def inverse(self) -> "ExtensionElement":
        if self.kind == "split":
            return self._like(self.first.inverse(), self.second.inverse())
        n_inv = self.norm().inverse()
        conj = self.conjugate()
        return self._like(conj.first * n_inv, conj.second * n_inv)

    def __truediv__(self, other: Union["ExtensionElement", TruncatedElement, int, Fraction]) -> "ExtensionElement":
        if isinstance(other, (int, Fraction)):
            other = TruncatedElement.from_rational(self.p, other, self.first.prec + 64)
        return self * other.inverse()

    # -- valuation ----------------------------------------------------------
    def _terms(self) -> Tuple[Tuple[TruncatedElement, Fraction], ...]:
        shift = Fraction(1, 2) if self.kind == "ramified" else Fraction(0)
        return ((self.first, Fraction(0)), (self.second, shift))

    def valuation(self) -> Union[Fraction, float]:
        """F-normalized valuation; half-integers occur in the ramified case.

        For the split algebra this is the smaller of the two place valuations.
        """
        exact = [Fraction(x.val) + shift for x, shift in self._terms() if not x.is_zero_ball]
        if not exact:
            return math.inf
        low = min(exact)
        for x, shift in self._terms():
            if x.is_zero_ball and Fraction(x.prec) + shift < low:
                raise PrecisionShortfall("extension valuation undecided", x.prec + 1)
        return low

    def valuation_bound(self) -> Tuple[Fraction, bool]:
        """(v, True) when decided, else (lower bound, False); inert and ramified terms never cancel."""
        exact = [Fraction(x.val) + shift for x, shift in self._terms() if not x.is_zero_ball]
        bounds = [Fraction(x.prec) + shift for x, shift in self._terms() if x.is_zero_ball]
        if exact and (not bounds or min(exact) <= min(bounds)):
            return min(exact), True
        return min(bounds), False

    def valuation_at_least(self, k: Union[int, Fraction]) -> bool:
        bound, exact = self.valuation_bound()
        if exact or bound >= k:
            return bound >= k
        raise PrecisionShortfall(f"cannot decide v(x) >= {k}", int(math.ceil(k)))

    def require_valuation(self) -> Fraction:
        v = self.valuation()
        if v == math.inf:
            raise PrecisionShortfall("extension element is a zero ball", None)
        return Fraction(v)

    def place_valuations(self) -> Tuple[int, int]:
        if self.kind != "split":
            raise ContextError("place valuations exist only for split algebras")
        return self.first.require_valuation(), self.second.require_valuation()

    def unit_residue(self, r: int) -> Tuple[int, int]:
        """Inert case: (a', b') mod p^r with x = p^v (a' + b' sqrt D), v = valuation."""
        if self.kind != "inert":
            raise ContextError("unit residues of E are modelled for the inert extension only")
        v = int(self.require_valuation())
        out = []
        for x in (self.first, self.second):
            if x.is_zero_ball:
                if x.prec < v + r:
                    raise PrecisionShortfall("extension unit residue undecided", v + r)
                out.append(0)
                continue
            if x.prec < v + r:
                raise PrecisionShortfall("extension unit residue undecided", v + r)
            out.append((x.unit * x.p ** (x.val - v)) % x.p ** r)
        return out[0], out[1]

    def as_ab(self) -> Tuple[TruncatedElement, TruncatedElement]:
        """Coordinates (a, b) with the element equal to a + b sqrt D."""
        if self.kind != "split":
            return self.first, self.second
        half = Fraction(1, 2)
        a = (self.first + self.second) * half
        b = (self.first - self.second) * half / self.sqrt_d
        return a, b


def make_extension_element(ctx: FieldContext, a: Scalar, b: Scalar = 0) -> ExtensionElement:
    """The element a + b sqrt D of E, in the representation of ``ctx.extension_kind``."""
    a_el = to_element(ctx, a)
    b_el = to_element(ctx, b)
    if ctx.extension_kind == "split":
        root = to_element(ctx, ctx.sqrt_d)
        return ExtensionElement("split", ctx.D, a_el + b_el * root, a_el - b_el * root, ctx.sqrt_d or 0)
    return ExtensionElement(ctx.extension_kind, ctx.D, a_el, b_el)


def sqrt_d(ctx: FieldContext) -> ExtensionElement:
    return make_extension_element(ctx, 0, 1)


def valuation(x: Union[TruncatedElement, ExtensionElement]) -> Union[Fraction, float]:
    return x.valuation()


__all__ = ["ExtensionElement", "make_extension_element", "sqrt_d", "to_element", "valuation"]
