"""Residue-class enumeration for O/p^c, O_E/p^c and the torus cosets."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from ..errors import ContextError
from .element import TruncatedElement
from .extension import ExtensionElement, make_extension_element
from .field import FieldContext


@lru_cache(maxsize=None)
def _unit_residues(p: int, c: int) -> Tuple[int, ...]:
    return tuple(x for x in range(1, p ** c) if x % p)


@lru_cache(maxsize=None)
def _inert_unit_residues(p: int, c: int) -> Tuple[Tuple[int, int], ...]:
    modulus = p ** c
    return tuple(
        (a, b) for a in range(modulus) for b in range(modulus) if a % p or b % p
    )


def _check_level(ctx: FieldContext, c: int) -> None:
    if c < 1:
        raise ContextError(f"level must be >= 1, got {c}")
    if c > ctx.precision:
        raise ContextError(f"level {c} exceeds working precision {ctx.precision}")


def enumerate_residues(ctx: FieldContext, c: int, field: str = "F") -> List:
    """Unit residues of (O/p^c)* as ints, or of (O_E/p^c O_E)* as (a, b) pairs (inert E)."""
    _check_level(ctx, c)
    if field == "F":
        return list(_unit_residues(ctx.p, c))
    if field == "E":
        if ctx.extension_kind != "inert":
            raise ContextError("E-residues are enumerated for the inert extension")
        return list(_inert_unit_residues(ctx.p, c))
    raise ContextError(f"unknown field tag {field!r}")


def quadratic_coset_reps(ctx: FieldContext, c: int) -> List[ExtensionElement]:
    """Representatives of (O_F^* + p^c O_E) \\ O_E^*: {1 + b sqrt D} then {b + sqrt D, b in pO}."""
    if ctx.extension_kind != "inert":
        raise ContextError("torus coset representatives need an inert extension")
    _check_level(ctx, c)
    modulus = ctx.p ** c
    reps = [make_extension_element(ctx, 1, b1) for b1 in range(modulus)]
    reps.extend(make_extension_element(ctx, b2, 1) for b2 in range(0, modulus, ctx.p))
    return reps


def unit_shell(ctx: FieldContext, v: int, r: int) -> Tuple[List[TruncatedElement], Fraction]:
    """Exact points p^v*u, u over (O/p^r)*, and the d*-weight of each residue ball."""
    r = max(1, r)
    if r > ctx.precision:
        raise ContextError(f"shell resolution {r} exceeds working precision {ctx.precision}")
    units = _unit_residues(ctx.p, r)
    points = [TruncatedElement(ctx.p, v, u, v + ctx.precision) for u in units]
    return points, Fraction(1, len(units))


def additive_shell_measure(q: int, k: int) -> Fraction:
    """dm-volume of p^k O*."""
    return Fraction(q - 1, q) * Fraction(q) ** (-k)


__all__ = [
    "enumerate_residues",
    "quadratic_coset_reps",
    "unit_shell",
    "additive_shell_measure",
]
