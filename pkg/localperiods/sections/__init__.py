"""Induced-representation sections Phi_s and the Iwasawa cells of GL2."""
from __future__ import annotations

from .evaluate import (
    eval_induced,
    eval_section,
    eval_split_borel,
    evaluate_matrix,
    full_k_section,
    gamma_zero_rows,
    induced_vector,
    k_tilde_section,
    newform_section,
    omega_character,
    split_root,
    split_section,
)
from .iwasawa import (
    beta_coefficients,
    decomp_coefficients,
    decompose_iwasawa,
    in_k1,
    k0_volume,
    reassemble,
    route_bottom_row,
    support_index,
    tail_volumes,
    unit_count,
    uniformizer_power,
)
from .models import SECTION_KINDS, InducedVector, IwasawaDecomposition, SectionSpec
from .tables import inert_phi_exponents, ramified_phi_exponents, split_phi_exponents

__all__ = [
    "InducedVector",
    "IwasawaDecomposition",
    "SECTION_KINDS",
    "SectionSpec",
    "beta_coefficients",
    "decomp_coefficients",
    "decompose_iwasawa",
    "eval_induced",
    "eval_section",
    "eval_split_borel",
    "evaluate_matrix",
    "full_k_section",
    "gamma_zero_rows",
    "in_k1",
    "induced_vector",
    "inert_phi_exponents",
    "k0_volume",
    "k_tilde_section",
    "newform_section",
    "omega_character",
    "ramified_phi_exponents",
    "reassemble",
    "route_bottom_row",
    "split_phi_exponents",
    "split_root",
    "split_section",
    "support_index",
    "tail_volumes",
    "unit_count",
    "uniformizer_power",
]
