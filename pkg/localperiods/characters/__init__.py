"""Multiplicative/additive characters and the character-sum lemmas."""
from __future__ import annotations

from .groups import UnitGroup, e_unit_group, f_unit_group
from .models import (
    MultChar,
    ShiftedChar,
    eval_character,
    find_character,
    make_unit_character,
    trivial_on_f_units,
)
from .sums import (
    additive_psi_integral,
    additive_psi_integral_direct,
    character_square_level,
    exponent_level,
    gauss_shift_integral,
    gauss_shift_rule,
    psi_lattice_integral,
    shell_fourier_coefficients,
    torus_character_sum,
    torus_full_sum,
    unit_average,
)

__all__ = [
    "MultChar",
    "ShiftedChar",
    "UnitGroup",
    "additive_psi_integral",
    "additive_psi_integral_direct",
    "character_square_level",
    "e_unit_group",
    "eval_character",
    "exponent_level",
    "f_unit_group",
    "find_character",
    "gauss_shift_integral",
    "gauss_shift_rule",
    "make_unit_character",
    "psi_lattice_integral",
    "shell_fourier_coefficients",
    "torus_character_sum",
    "torus_full_sum",
    "trivial_on_f_units",
    "unit_average",
]
