"""Named Schwartz functions in block form and the closed images of the Weil action."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional

from ..errors import ContextError
from ..padic import Mat2
from .models import Block, BlockFunction, Phase, SchwartzFunction, TableFunction
from .tables import block_to_term, rational_valuation

ZERO = Fraction(0)


def _block(centers=(ZERO, ZERO, ZERO, ZERO), levels=(0, 0, 0, 0), **kwargs) -> Block:
    return Block(tuple(Fraction(c) for c in centers), tuple(int(level) for level in levels), **kwargs)


def standard_function(p: int) -> BlockFunction:
    """char(M2(O)) x char(O*), K-invariant on both sides."""
    return BlockFunction(p, [_block()], label="standard")


def level_function(p: int, c: int, frame: Optional[Mat2] = None) -> BlockFunction:
    """char(O, O; p^c O, O) x char(O*)."""
    if c < 0:
        raise ContextError("level must be non-negative")
    return BlockFunction(p, [_block(levels=(0, 0, c, 0))], frame=frame, label=f"level-{c}")


def beta_level_function(p: int, c: int, beta: int, u_level: Optional[int] = None) -> BlockFunction:
    """char(O, O; p^c O, O) x char(beta + p^u_level O), u_level defaulting to c."""
    if beta % p == 0:
        raise ContextError("beta must be a unit")
    level = c if u_level is None else u_level
    return BlockFunction(
        p, [_block(levels=(0, 0, c, 0), u_center=beta % p ** max(level, 1), u_level=level)], label=f"level-{c}-beta-{beta}"
    )


def exotic_function(p: int, c: int, b1: Fraction, b2: Fraction, beta: Optional[int] = None) -> BlockFunction:
    """char(b1 + p^c O, O; b2 + p^c O, O) x char(O*) (or char(beta + p^c O))."""
    if rational_valuation(p, Fraction(b1)) < 0 or rational_valuation(p, Fraction(b2)) < 0:
        raise ContextError("b1 and b2 must be integral")
    extra = {} if beta is None else {"u_center": beta % p ** c, "u_level": c}
    return BlockFunction(p, [_block((b1, ZERO, b2, ZERO), (c, 0, c, 0), **extra)], label=f"exotic-{c}")


def mixed_level_function(p: int, j: int, c1: int, c2: int) -> BlockFunction:
    """char(p^-j O, p^(-j-c2) O; p^(j+c1+c2) O, p^(j+c1) O) x char(O*).

    Weil-invariant under K1(p^c1) and right-invariant under K1(p^c2).
    """
    return BlockFunction(p, [_block(levels=(-j, -j - c2, j + c1 + c2, j + c1))], label=f"mixed-{c1}-{c2}")


def lattice_function(p: int, k: int) -> BlockFunction:
    """char(p^-k M2(O)) x char(O*); dominates the |f| of every function used here for k large."""
    return BlockFunction(p, [_block(levels=(-k, -k, -k, -k))], label=f"lattice-{k}")


def predicted_image(p: int, case: str, params: Dict[str, Fraction]) -> SchwartzFunction:
    """Closed form of r'(g) f for the tabulated (function, g) pairs.

    ``std-K``: the standard function, fixed by all of K.
    ``K1-level-c``: r'(n_lower(n)) level_function(c), 0 <= v(n) <= c.
    ``exotic-b1b2``: r'(n_lower(n)) exotic_function(c, b1, b2), 0 <= v(n) <= c.
    ``K1-level-omega``: r'(omega) level_function(c).
    """
    if case == "std-K":
        return standard_function(p)
    c = int(params["c"])
    if case == "K1-level-omega":
        return BlockFunction(p, [_block(levels=(0, -c, 0, 0), scale=float(p) ** (-c))], label="K1-level-omega")
    n = Fraction(params["n"])
    j = int(rational_valuation(p, n))
    if not 0 <= j <= c:
        raise ContextError(f"v(n) = {j} outside [0, {c}]")
    if case == "K1-level-c":
        phase = Phase(kappa=1 / n, with_x1x4=False)
        block = _block(levels=(0, j - c, j, 0), phase=phase, scale=float(p) ** (j - c))
        return BlockFunction(p, [block], label="K1-level-c")
    if case == "exotic-b1b2":
        b1, b2 = Fraction(params.get("b1", 0)), Fraction(params.get("b2", 0))
        phase = Phase(kappa=1 / n, b1=b1, b2=b2)
        block = _block((b1, ZERO, b2, ZERO), (j, j - c, j, j - c), phase=phase, scale=float(p) ** (2 * (j - c)))
        return BlockFunction(p, [block], label="exotic-b1b2")
    raise ContextError(f"no closed image for {case!r}")


def to_table(f: SchwartzFunction) -> TableFunction:
    if isinstance(f, TableFunction):
        return f
    if isinstance(f, BlockFunction):
        terms = [block_to_term(f.p, block) for block in f.blocks]
        return TableFunction(f.p, terms, frame=f.frame, label=f.label)
    raise ContextError(f"{type(f).__name__} has no table form")


__all__ = [
    "beta_level_function",
    "exotic_function",
    "lattice_function",
    "level_function",
    "mixed_level_function",
    "predicted_image",
    "standard_function",
    "to_table",
]
