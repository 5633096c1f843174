"""Shell moments of W_i(alpha) = W(diag(alpha, 1) n_lower(p^i)).

The const moment integrates W_i over its support shell against d*alpha; the
psi moment integrates W_i(alpha) psi(p^-i alpha).
"""
from __future__ import annotations

from typing import Optional, Union

import numpy as np

from ..errors import ContextError, UnsupportedCase
from ..kirillov import C1, MOMENT_KINDS, SymbolicValue, moment_shell
from ..padic import TruncatedElement, psi
from .models import RepSpec
from .oracle import EXACT, newform_base, whittaker_oracle

MomentValue = Union[complex, SymbolicValue]


def support_shell(rep: RepSpec, i: int) -> int:
    """The only v(alpha) where W_i can be nonzero."""
    if rep.kind == "supercuspidal":
        return moment_shell(rep.level, i)
    if rep.kind == "ramified-principal":
        return 2 * i - rep.level if i < rep.half_level else 0
    raise UnsupportedCase(f"{rep.kind} newforms have no single support shell per coset")


def _check(rep: RepSpec, i: int, kind: str) -> None:
    if kind not in MOMENT_KINDS:
        raise ContextError(f"unknown moment kind {kind!r}")
    if not 0 <= i <= rep.level:
        raise ContextError(f"coset index {i} outside 0..{rep.level}")


def _supercuspidal_moment(rep: RepSpec, i: int, kind: str) -> SymbolicValue:
    if rep.central_level != 0:
        raise UnsupportedCase("closed supercuspidal moments need an unramified central character")
    q, c = rep.q, rep.level
    if kind == "const":
        if i >= c:
            return SymbolicValue.number(1)
        if i == c - 1:
            return SymbolicValue.number(-1.0 / (q - 1))
        return SymbolicValue.zero()
    if i == 0:
        return SymbolicValue.symbol(C1)
    if i == 1:
        return SymbolicValue.symbol(C1) * (-rep.central_character / (q - 1))
    return SymbolicValue.zero()


def _ramified_principal_moment(rep: RepSpec, i: int, kind: str) -> complex:
    q, c, k = rep.q, rep.level, rep.half_level
    sign = 1 / rep.mu1.restricted_unit_value(-1)
    if i == k:
        if k > 1:
            return 0j
        return -1.0 / (q - 1) * (1.0 if kind == "const" else sign)
    if i < k:
        if kind == "const":
            return 0j
        prefactor = rep.central_character ** (k - i) * sign
        if i == 0:
            return complex(prefactor)
        if i == 1:
            return -prefactor / (q - 1)
        return 0j
    if kind == "psi":
        return 0j
    if i == c:
        return 1.0 + 0.0j
    if i == c - 1:
        return -1.0 / (q - 1) + 0j
    return 0j


def whittaker_moment(rep: RepSpec, i: int, kind: str) -> MomentValue:
    _check(rep, i, kind)
    if rep.kind == "supercuspidal":
        return _supercuspidal_moment(rep, i, kind)
    if rep.kind == "ramified-principal":
        return _ramified_principal_moment(rep, i, kind)
    raise UnsupportedCase(f"no moment table for {rep.kind} representations")


def shell_moment(rep: RepSpec, i: int, v: int, kind: str, depth: Optional[int] = None) -> complex:
    """Numeric moment over v(alpha) = v from the Whittaker oracle.

    W_i is invariant under alpha -> alpha (1 + p^c O), psi(p^-i alpha) under
    units mod p^(i-v); one exact point per residue class suffices.
    """
    _check(rep, i, kind)
    r = max(rep.level, i - v, 1)
    p = rep.p
    base = newform_base(rep)
    values = []
    for u in range(1, p ** r):
        if u % p == 0:
            continue
        alpha = TruncatedElement(p, v, u, v + EXACT)
        w = whittaker_oracle(rep, alpha, i, depth, normalize=False) / base
        if kind == "psi":
            w *= psi(alpha * TruncatedElement(p, -i, 1, EXACT))
        values.append(w)
    return complex(np.mean(values))


__all__ = ["MomentValue", "shell_moment", "support_shell", "whittaker_moment"]
