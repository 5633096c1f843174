"""Symbolic Kirillov model of a supercuspidal representation."""
from __future__ import annotations

from .actions import (
    MOMENT_KINDS,
    Profile,
    borel_act,
    central_sign_act,
    is_congruence_invariant,
    kirillov_moment,
    lower_unipotent_act,
    moment_shell,
    newform,
    omega_act,
    relation_profiles,
    support_level_profile,
    twist_level,
    whittaker_vector,
)
from .models import KirillovVector, SupercuspidalParams, split_rational
from .symbolic import C1, SymbolicValue, to_sympy

__all__ = [
    "C1",
    "KirillovVector",
    "MOMENT_KINDS",
    "Profile",
    "SupercuspidalParams",
    "SymbolicValue",
    "borel_act",
    "central_sign_act",
    "is_congruence_invariant",
    "kirillov_moment",
    "lower_unipotent_act",
    "moment_shell",
    "newform",
    "omega_act",
    "relation_profiles",
    "split_rational",
    "support_level_profile",
    "to_sympy",
    "twist_level",
    "whittaker_vector",
]
