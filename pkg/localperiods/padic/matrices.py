"""2x2 matrices over F (or E) with the standard named elements."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple, Union

from ..errors import ContextError
from .element import TruncatedElement
from .extension import ExtensionElement, Scalar, to_element
from .field import FieldContext

Entry = Union[TruncatedElement, ExtensionElement]


@dataclass(frozen=True)
class Mat2:
    a: Entry
    b: Entry
    c: Entry
    d: Entry

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self) -> Entry:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mat2":
        det = self.det()
        if isinstance(det, TruncatedElement) and det.is_zero_ball:
            raise ContextError("singular matrix")
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def rows(self) -> Tuple[Tuple[Entry, Entry], Tuple[Entry, Entry]]:
        return (self.a, self.b), (self.c, self.d)

    def is_upper_triangular(self) -> bool:
        return isinstance(self.c, TruncatedElement) and self.c.is_zero_ball

    def in_gl2_o(self) -> bool:
        entries_integral = all(x.valuation() >= 0 for x in (self.a, self.b, self.c, self.d))
        return entries_integral and self.det().valuation() == 0


def matrix(ctx: FieldContext, a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Mat2:
    return Mat2(*(to_element(ctx, x) for x in (a, b, c, d)))


def identity(ctx: FieldContext) -> Mat2:
    return matrix(ctx, 1, 0, 0, 1)


def n_upper(ctx: FieldContext, beta: Scalar) -> Mat2:
    return matrix(ctx, 1, beta, 0, 1)


def n_lower(ctx: FieldContext, x: Scalar) -> Mat2:
    return matrix(ctx, 1, 0, x, 1)


def diag(ctx: FieldContext, a: Scalar, d: Scalar) -> Mat2:
    return matrix(ctx, a, 0, 0, d)


def omega(ctx: FieldContext) -> Mat2:
    return matrix(ctx, 0, 1, -1, 0)


def borel(ctx: FieldContext, a1: Scalar, m: Scalar, a2: Scalar) -> Mat2:
    return matrix(ctx, a1, m, 0, a2)


def embed(ctx: FieldContext, t: ExtensionElement) -> Mat2:
    """E* -> GL2(F), sqrt D -> (0 1; D 0)."""
    a, b = t.as_ab()
    return Mat2(a, b, b * ctx.D, a)


__all__ = [
    "Mat2",
    "matrix",
    "identity",
    "n_upper",
    "n_lower",
    "diag",
    "omega",
    "borel",
    "embed",
]
