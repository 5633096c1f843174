"""Polynomials in the formal constants C_nu with complex coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Tuple, Union

import sympy

from ..errors import ContextError

Scalar = Union[int, float, complex]
ZERO_TOL = 1e-12

C1 = "C1"


def to_sympy(value: Union[Scalar, sympy.Expr]) -> sympy.Expr:
    if isinstance(value, sympy.Basic):
        return value
    if isinstance(value, int):
        return sympy.Integer(value)
    z = complex(value)
    if z.imag == 0:
        return sympy.Float(z.real)
    return sympy.Float(z.real) + sympy.I * sympy.Float(z.imag)


@dataclass(frozen=True)
class SymbolicValue:
    """A value that may carry formal constants; arithmetic goes through sympy."""

    expr: sympy.Expr

    @classmethod
    def number(cls, value: Union[Scalar, sympy.Expr]) -> "SymbolicValue":
        return cls(to_sympy(value))

    @classmethod
    def symbol(cls, name: str) -> "SymbolicValue":
        return cls(sympy.Symbol(name))

    @classmethod
    def zero(cls) -> "SymbolicValue":
        return cls(sympy.Integer(0))

    # -- arithmetic -------------------------------------------------------
    def _other(self, other: object) -> sympy.Expr:
        if isinstance(other, SymbolicValue):
            return other.expr
        if isinstance(other, (int, float, complex, sympy.Basic)):
            return to_sympy(other)
        raise TypeError(f"cannot combine SymbolicValue with {type(other).__name__}")

    def __add__(self, other: object) -> "SymbolicValue":
        return SymbolicValue(self.expr + self._other(other))

    __radd__ = __add__

    def __neg__(self) -> "SymbolicValue":
        return SymbolicValue(-self.expr)

    def __sub__(self, other: object) -> "SymbolicValue":
        return SymbolicValue(self.expr - self._other(other))

    def __rsub__(self, other: object) -> "SymbolicValue":
        return SymbolicValue(self._other(other) - self.expr)

    def __mul__(self, other: object) -> "SymbolicValue":
        return SymbolicValue(self.expr * self._other(other))

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "SymbolicValue":
        return SymbolicValue(self.expr / self._other(other))

    # -- inspection -------------------------------------------------------
    @property
    def symbols(self) -> FrozenSet[str]:
        return frozenset(s.name for s in self.expr.free_symbols)

    @property
    def is_numeric(self) -> bool:
        return not self.expr.free_symbols

    def depends_on(self, name: str) -> bool:
        return name in self.symbols

    def terms(self) -> Dict[Tuple[Tuple[str, int], ...], complex]:
        """Monomial (sorted (symbol, power) pairs) -> complex coefficient."""
        expanded = sympy.expand(self.expr)
        syms = sorted(expanded.free_symbols, key=lambda s: s.name)
        if not syms:
            value = complex(expanded)
            return {(): value} if value != 0 else {}
        out: Dict[Tuple[Tuple[str, int], ...], complex] = {}
        for powers, coefficient in sympy.Poly(expanded, *syms).terms():
            key = tuple((s.name, int(e)) for s, e in zip(syms, powers) if e)
            out[key] = out.get(key, 0j) + complex(coefficient)
        return out

    def pruned(self, tol: float = ZERO_TOL) -> "SymbolicValue":
        return SymbolicValue.from_terms((k, v) for k, v in self.terms().items() if abs(v) > tol)

    @classmethod
    def from_terms(cls, terms: Iterable[Tuple[Tuple[Tuple[str, int], ...], complex]]) -> "SymbolicValue":
        expr = sympy.Integer(0)
        for monomial, coefficient in terms:
            term = to_sympy(coefficient)
            for name, power in monomial:
                term = term * sympy.Symbol(name) ** power
            expr = expr + term
        return cls(expr)

    def is_zero(self, tol: float = ZERO_TOL) -> bool:
        return all(abs(v) <= tol for v in self.terms().values())

    def close_to(self, other: object, tol: float = 1e-9) -> bool:
        return (self - SymbolicValue(self._other(other))).is_zero(tol)

    def to_complex(self) -> complex:
        if not self.is_numeric:
            raise ContextError(f"value {self} still carries formal constants {sorted(self.symbols)}")
        return complex(self.expr)

    def substitute(self, values: Dict[str, Scalar]) -> "SymbolicValue":
        mapping = {sympy.Symbol(k): to_sympy(v) for k, v in values.items()}
        return SymbolicValue(self.expr.subs(mapping))

    def to_dict(self) -> Dict[str, object]:
        return {"expr": str(self), "symbols": sorted(self.symbols)}

    def __str__(self) -> str:
        return str(self.expr)


__all__ = ["C1", "SymbolicValue", "ZERO_TOL", "to_sympy"]
