"""Valuation tables for Phi_s(gamma_0 (a1 m; 0 a2)) with spherical sections.

With n = v(a1), k = v(m), l = v(a2), the value is chi_{1,s}(p)^e1 chi_{2,s}(p)^e2.
Exponents are in powers of p; in the ramified extension they are half-integers
and chi^(1/2) means the value at sqrt D.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Tuple

Exponents = Tuple[Fraction, Fraction]


def inert_phi_exponents(n: int, k: int, l: int) -> Exponents:
    total = n + l
    bottom = min(l, k)
    if bottom >= n:
        return Fraction(l), Fraction(n)
    return Fraction(total - bottom), Fraction(bottom)


def ramified_phi_exponents(n: int, k: int, l: int) -> Exponents:
    half = Fraction(1, 2)
    total = n + l
    bottom = min(Fraction(l), k + half)
    if bottom >= n + half:
        return l - half, n + half
    return total - bottom, bottom


def split_phi_exponents(n: int, k: int, l: int) -> Exponents:
    """First-place exponents under the min-valuation shortcut (the naive table)."""
    return inert_phi_exponents(n, k, l)


__all__ = ["Exponents", "inert_phi_exponents", "ramified_phi_exponents", "split_phi_exponents"]
