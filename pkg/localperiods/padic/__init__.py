"""Truncated p-adic arithmetic and the quadratic-extension geometries."""
from __future__ import annotations

from .element import TruncatedElement, p_adic_valuation, psi, psi_rational
from .extension import ExtensionElement, make_extension_element, sqrt_d, to_element, valuation
from .field import EXTENSION_KINDS, FieldContext, make_field_context
from .matrices import Mat2, borel, diag, embed, identity, matrix, n_lower, n_upper, omega
from .residues import additive_shell_measure, enumerate_residues, quadratic_coset_reps, unit_shell
from .shells import (
    ADDITIVE,
    MULTIPLICATIVE,
    BallIntegrator,
    ball_measure,
    pairwise_sum,
    psi_ball_integral,
    shell_balls,
)

__all__ = [
    "ADDITIVE",
    "MULTIPLICATIVE",
    "BallIntegrator",
    "ball_measure",
    "pairwise_sum",
    "psi_ball_integral",
    "shell_balls",
    "EXTENSION_KINDS",
    "ExtensionElement",
    "FieldContext",
    "Mat2",
    "TruncatedElement",
    "additive_shell_measure",
    "borel",
    "diag",
    "embed",
    "enumerate_residues",
    "identity",
    "make_extension_element",
    "make_field_context",
    "matrix",
    "n_lower",
    "n_upper",
    "omega",
    "p_adic_valuation",
    "psi",
    "psi_rational",
    "quadratic_coset_reps",
    "sqrt_d",
    "to_element",
    "unit_shell",
    "valuation",
]
