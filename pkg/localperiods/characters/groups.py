"""Unit groups (O/p^c)* and (O_E/p^c O_E)* with fixed generators and discrete-log tables."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from sympy import factorint, primitive_root

from ..errors import ContextError

Residue = Tuple[int, ...]


@dataclass(frozen=True)
class UnitGroup:
    """A finite abelian unit group as a product of cyclic factors."""

    p: int
    c: int
    field: str
    D: int
    generators: Tuple[Residue, ...]
    orders: Tuple[int, ...]
    dlog: Dict[Residue, Tuple[int, ...]]

    @property
    def order(self) -> int:
        total = 1
        for n in self.orders:
            total *= n
        return total

    def multiply(self, x: Residue, y: Residue) -> Residue:
        return _multiply(self.field, self.p ** self.c, self.D, x, y)

    def power(self, x: Residue, e: int) -> Residue:
        return _power(self.field, self.p ** self.c, self.D, x, e)

    def log(self, x: Residue) -> Tuple[int, ...]:
        try:
            return self.dlog[x]
        except KeyError as exc:
            raise ContextError(f"{x} is not a unit residue mod {self.p}^{self.c}") from exc


def _multiply(field: str, modulus: int, D: int, x: Residue, y: Residue) -> Residue:
    if field == "F":
        return ((x[0] * y[0]) % modulus,)
    a1, b1 = x
    a2, b2 = y
    return ((a1 * a2 + b1 * b2 * D) % modulus, (a1 * b2 + a2 * b1) % modulus)


def _power(field: str, modulus: int, D: int, x: Residue, e: int) -> Residue:
    result: Residue = (1,) if field == "F" else (1, 0)
    base = x
    while e > 0:
        if e & 1:
            result = _multiply(field, modulus, D, result, base)
        base = _multiply(field, modulus, D, base, base)
        e >>= 1
    return result


def _residue_field_generator(p: int, D: int) -> Residue:
    """A generator of F_{p^2}* = (Z/p)[sqrt D]*."""
    order = p * p - 1
    primes = list(factorint(order))
    for a in range(p):
        for b in range(1, p):
            x = (a, b)
            if all(_power("E", p, D, x, order // ell) != (1, 0) for ell in primes):
                return x
    raise ContextError(f"no generator of F_{p}^2* for D={D}")  # pragma: no cover


@lru_cache(maxsize=None)
def f_unit_group(p: int, c: int) -> UnitGroup:
    if c < 1:
        raise ContextError("unit group level must be >= 1")
    modulus = p ** c
    g = int(primitive_root(modulus))
    order = (p - 1) * p ** (c - 1)
    dlog: Dict[Residue, Tuple[int, ...]] = {}
    x = 1
    for e in range(order):
        dlog[(x,)] = (e,)
        x = (x * g) % modulus
    return UnitGroup(p=p, c=c, field="F", D=0, generators=((g,),), orders=(order,), dlog=dlog)


@lru_cache(maxsize=None)
def e_unit_group(p: int, D: int, c: int) -> UnitGroup:
    """(O_E/p^c)* for inert E: a cyclic part of order p^2-1 times (1+p)^Z x (1+p sqrt D)^Z."""
    if c < 1:
        raise ContextError("unit group level must be >= 1")
    modulus = p ** c
    D %= modulus
    torsion_order = p * p - 1
    gen_mod_p = _residue_field_generator(p, D % p)
    # x -> x^(q^(2c-2)) projects onto the prime-to-p torsion
    g0 = _power("E", modulus, D, gen_mod_p, p ** (2 * (c - 1)))
    one_plus_p = (1 + p) % modulus, 0
    one_plus_p_root = 1 % modulus, p % modulus
    pro_p_order = p ** (c - 1)
    generators = (g0, one_plus_p, one_plus_p_root)
    orders = (torsion_order, pro_p_order, pro_p_order)

    dlog: Dict[Residue, Tuple[int, ...]] = {}
    x1 = (1, 0)
    for e1 in range(pro_p_order):
        x2 = x1
        for e2 in range(pro_p_order):
            x0 = x2
            for e0 in range(torsion_order):
                dlog[x0] = (e0, e1, e2)
                x0 = _multiply("E", modulus, D, x0, g0)
            x2 = _multiply("E", modulus, D, x2, one_plus_p_root)
        x1 = _multiply("E", modulus, D, x1, one_plus_p)
    expected = torsion_order * pro_p_order * pro_p_order
    if len(dlog) != expected:
        raise ContextError(f"generator set of (O_E/{p}^{c})* is not independent")  # pragma: no cover
    return UnitGroup(p=p, c=c, field="E", D=D, generators=generators, orders=orders, dlog=dlog)


__all__ = ["UnitGroup", "f_unit_group", "e_unit_group"]
