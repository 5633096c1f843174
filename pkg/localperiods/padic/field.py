"""Truncated local field contexts: F = Q_p plus a quadratic extension descriptor."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from sympy import isprime, is_quad_residue, sqrt_mod

from ..errors import ContextError

EXTENSION_KINDS = ("inert", "split", "ramified")


@dataclass(frozen=True)
class FieldContext:
    p: int
    precision: int
    extension_kind: str
    D: int
    sqrt_d: Optional[int] = None

    @property
    def q(self) -> int:
        return self.p

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "precision": self.precision,
            "extensionKind": self.extension_kind,
            "D": self.D,
            "sqrtD": self.sqrt_d,
        }


def _split_root(p: int, precision: int, D: int) -> int:
    """Smallest nonnegative square root of D mod p^N (Hensel lift of the smallest root mod p)."""
    roots = sqrt_mod(D % p, p, all_roots=True)
    root = min(int(r) for r in roots)
    modulus = p
    for _ in range(1, precision):
        modulus *= p
        # Newton step r <- r - (r^2 - D) / (2r) mod p^k
        root = (root - (root * root - D) * pow(2 * root, -1, modulus)) % modulus
    return root % (p ** precision)


def make_field_context(p: int, N: int, kind: str, D: Optional[int] = None) -> FieldContext:
    """Validate the data of a truncated local field and its quadratic extension."""
    if p == 2 or not isprime(p):
        raise ContextError(f"p must be an odd prime, got {p}")
    if N < 1:
        raise ContextError(f"precision must be positive, got {N}")
    if kind not in EXTENSION_KINDS:
        raise ContextError(f"unknown extension kind {kind!r}")

    if kind == "ramified":
        # uniformizer of E squares to p exactly
        if D is not None and D != p:
            raise ContextError(f"ramified extensions are realized with D = p = {p}, got D={D}")
        return FieldContext(p=p, precision=N, extension_kind=kind, D=p)

    if D is None or D % p == 0:
        raise ContextError(f"D must be a unit of Z_{p}, got {D}")
    square = bool(is_quad_residue(D % p, p))
    if kind == "inert" and square:
        raise ContextError(f"D={D} is a square mod {p}; inert extension needs a non-square")
    if kind == "split" and not square:
        raise ContextError(f"D={D} is not a square mod {p}; split extension needs a square")
    sqrt_d = _split_root(p, N, D) if kind == "split" else None
    return FieldContext(p=p, precision=N, extension_kind=kind, D=D % (p ** N), sqrt_d=sqrt_d)


__all__ = ["FieldContext", "EXTENSION_KINDS", "make_field_context"]
