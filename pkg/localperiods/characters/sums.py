"""Additive-character integrals and the character-sum lemmas, by direct summation."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from ..errors import ContextError
from ..padic import FieldContext, TruncatedElement, make_extension_element, psi
from .groups import f_unit_group
from .models import MultChar, eval_character, trivial_on_f_units


def additive_psi_integral(q: int, j: int) -> complex:
    """Closed value of the integral of psi(m) dm over v(m) = j."""
    if j < -1:
        return 0j
    if j == -1:
        return -1 + 0j
    return complex(q ** (-j) * (1 - 1 / q))


def additive_psi_integral_direct(ctx: FieldContext, j: int) -> complex:
    """Same integral summed over the residue balls p^j(u + p^r O), r = max(1, -j)."""
    r = max(1, -j)
    modulus = ctx.p ** r
    ball = Fraction(ctx.p) ** (-j - r)
    total = 0j
    for u in range(1, modulus):
        if u % ctx.p == 0:
            continue
        total += psi(TruncatedElement(ctx.p, j, u, j + r))
    return complex(total * float(ball))


def psi_lattice_integral(ctx: FieldContext, x: TruncatedElement, k: int) -> complex:
    """Integral of psi(x*y) dy over p^k O by residue summation; equals q^-k char(p^-k O)(x)."""
    if x.is_zero_ball or x.val + k >= 0:
        return complex(ctx.p ** (-k))
    width = -(x.val + k)
    total = 0j
    for t in range(ctx.p ** width):
        if t == 0:
            total += 1
            continue
        y = TruncatedElement.normalize(ctx.p, k, t, k + ctx.precision)
        total += psi(x * y)
    return complex(total) * ctx.p ** (-k - width)


def gauss_shift_rule(q: int, k: int, i: int) -> complex:
    """Closed values of the integral over O* of mu(1 + p^i x) dx for mu of level k."""
    if i < k - 1:
        return 0j
    if i == k - 1:
        return complex(-1 / q)
    return complex(1 - 1 / q)


def gauss_shift_integral(ctx: FieldContext, mu: MultChar, i: int) -> complex:
    """Integral over O* of mu(1 + p^i x) dx, summed directly over residues of x."""
    k = mu.level
    if k < 1:
        raise ContextError("gauss_shift_integral needs a ramified character")
    p = ctx.p
    r = max(1, k - i) if i > 0 else k
    ball = 1.0 / p ** r
    total = 0j
    for x in range(1, p ** r):
        if x % p == 0:
            continue
        if i == 0 and (1 + x) % p == 0:
            continue
        y = TruncatedElement.from_rational(p, 1, ctx.precision) + TruncatedElement(p, i, x, i + ctx.precision)
        total += eval_character(mu, y) * ball
    if i == 0:
        # 1 + x in pO: shells v >= 1, each a full unit-character sum
        unit_average = sum(mu.restricted_unit_value(u) for u in range(1, p ** k) if u % p) / ((p - 1) * p ** (k - 1))
        ratio = mu.value_at_uniformizer / p
        total += unit_average * (1 - 1 / p) * ratio / (1 - ratio)
    return complex(total)


def torus_character_sum(ctx: FieldContext, chi: MultChar, i: int, branch: str = "b1") -> complex:
    """Sum over b mod p^c with v(b) = i of chi(1 + b sqrt D) (b1) or chi(b + sqrt D) (b2)."""
    if ctx.extension_kind != "inert" or chi.field != "E":
        raise ContextError("torus sums need an E-character of an inert extension")
    if not trivial_on_f_units(chi):
        raise ContextError(f"{chi.name} is ramified on F*; torus sums need chi|F* unramified")
    c = chi.level
    modulus = ctx.p ** c
    if branch == "b1":
        candidates = range(modulus)
    elif branch == "b2":
        candidates = range(0, modulus, ctx.p)
    else:
        raise ContextError(f"unknown branch {branch!r}")
    total = 0j
    for b in candidates:
        v = c if b == 0 else _valuation_below(ctx.p, b, c)
        if v != i:
            continue
        t = make_extension_element(ctx, 1, b) if branch == "b1" else make_extension_element(ctx, b, 1)
        total += eval_character(chi, t)
    return complex(total)


def torus_full_sum(ctx: FieldContext, chi: MultChar) -> complex:
    """Sum of chi over all (O_F* + p^c O_E) \\ O_E* coset representatives."""
    c = max(chi.level, 1)
    total = sum(torus_character_sum(ctx, chi, i, "b1") for i in range(0, c + 1))
    total += sum(torus_character_sum(ctx, chi, i, "b2") for i in range(1, c + 1))
    return complex(total)


def _valuation_below(p: int, b: int, cap: int) -> int:
    v = 0
    while b % p == 0 and v < cap:
        b //= p
        v += 1
    return v


def shell_fourier_coefficients(p: int, level: int, values: List[complex]) -> Dict[int, complex]:
    """Expand a function on (O/p^level)* (listed in generator-power order) in characters.

    Returns exponent k -> coefficient of the character g^e -> exp(2 pi i k e / order).
    """
    group = f_unit_group(p, level)
    order = group.orders[0]
    if len(values) != order:
        raise ContextError("value list does not match the unit group order")
    coefficients = np.fft.fft(np.asarray(values, dtype=complex)) / order
    return {k: complex(coefficients[k]) for k in range(order) if abs(coefficients[k]) > 1e-12}


def exponent_level(p: int, level: int, k: int) -> int:
    """Level of the character with exponent k on (O/p^level)*."""
    if k % ((p - 1) * p ** (level - 1)) == 0:
        return 0
    group = f_unit_group(p, level)
    order = group.orders[0]
    modulus = p ** level
    for j in range(1, level + 1):
        (e,) = group.log(((1 + p ** j) % modulus,))
        if (k * e) % order == 0:
            return j
    return level  # pragma: no cover


def character_square_level(chi: MultChar) -> int:
    return chi.squared().actual_level()


def unit_average(chi: MultChar, residues: List[Tuple[int, ...]]) -> complex:
    return complex(sum(chi.unit_value(r) for r in residues) / len(residues))


__all__ = [
    "additive_psi_integral",
    "additive_psi_integral_direct",
    "psi_lattice_integral",
    "gauss_shift_rule",
    "gauss_shift_integral",
    "torus_character_sum",
    "torus_full_sum",
    "shell_fourier_coefficients",
    "exponent_level",
    "character_square_level",
    "unit_average",
]
