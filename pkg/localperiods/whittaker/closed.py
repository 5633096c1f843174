"""Closed newform Whittaker values W(diag(alpha, 1) n_lower(p^i)), normalized W(1) = 1."""
from __future__ import annotations

from typing import Optional

from ..errors import UnsupportedCase
from ..padic import TruncatedElement, psi
from .models import RepSpec

DEGENERATE_TOL = 1e-12


def _unramified(rep: RepSpec, v: int) -> complex:
    q = rep.q
    x1 = 1 / complex(rep.mu1.value_at_uniformizer)
    x2 = 1 / complex(rep.mu2.value_at_uniformizer)
    if abs(x1 - x2) < DEGENERATE_TOL:
        return (v + 1) * x1 ** v * q ** (-v / 2)
    return q ** (-v / 2) * (x1 ** (v + 1) - x2 ** (v + 1)) / (x1 - x2)


def whittaker_closed(rep: RepSpec, alpha: TruncatedElement, i: Optional[int] = None) -> complex:
    """Tabulated values; 0 outside the stated supports.

    ``i`` defaults to the level (the identity coset).  Supported: unramified
    (i = 0), special (i in {0, 1}), and i = c for joint, ramified principal
    and supercuspidal newforms.
    """
    index = rep.level if i is None else i
    v = alpha.require_valuation()
    q = rep.q
    if rep.kind == "unramified" and index == 0:
        return _unramified(rep, v) if v >= 0 else 0j
    if rep.kind == "special" and index in (0, 1):
        mu1 = complex(rep.mu1.value_at_uniformizer)
        if index == 1:
            return mu1 ** (-v) * q ** (-v / 2) if v >= 0 else 0j
        if v < -1:
            return 0j
        return -mu1 ** (-v) * q ** (-v / 2) * psi(-alpha) / q
    if rep.kind == "joint" and index == rep.level:
        mu1 = complex(rep.mu1.value_at_uniformizer)
        return q ** (-v / 2) * mu1 ** (-v) if v >= 0 else 0j
    if rep.kind in ("ramified-principal", "supercuspidal") and index == rep.level:
        return 1.0 + 0.0j if v == 0 else 0j
    raise UnsupportedCase(f"no closed Whittaker table for {rep.kind} at coset index {index}")


__all__ = ["whittaker_closed"]
