"""The local-period engine: brute-force oracle, closed displays, normalization."""
from __future__ import annotations

from .cases import (
    BUILDERS,
    build_case,
    default_discriminant,
    joint_case,
    matrix_coefficient_case,
    ramified_extension_case,
    ramified_phi_case,
    ramified_principal_split_case,
    special_case,
    supercuspidal_split_case,
    u_inert_case,
    u_split_case,
)
from .closed import (
    CharacterValues,
    case_roots,
    character_values,
    closed_I,
    closed_P,
    delta_I,
    delta_I_shells,
    reduction_P,
    series_P,
    shortcut_I,
    special_coset_I,
    supercuspidal_coset_parts,
)
from .matrix_coeff import MatrixCoefficientResult, matrix_coeff_integral
from .models import CASE_TAGS, TAIL_MODES, CaseSpec, CosetTerm, EvalPoint, Resolution
from .normalize import (
    DenominatorCheck,
    EulerFactor,
    LFactorTable,
    denominator_check,
    l_factor_table,
    normalized_P0,
    p0_table_value,
)
from .oracle import c1_coefficient, check_convergence, oracle_I, oracle_P, vanishing_report
from .tails import TailFit, close_series, fit_recurrence

__all__ = [
    "BUILDERS",
    "CASE_TAGS",
    "TAIL_MODES",
    "CaseSpec",
    "CharacterValues",
    "CosetTerm",
    "DenominatorCheck",
    "EulerFactor",
    "EvalPoint",
    "LFactorTable",
    "MatrixCoefficientResult",
    "Resolution",
    "TailFit",
    "build_case",
    "c1_coefficient",
    "case_roots",
    "character_values",
    "check_convergence",
    "close_series",
    "closed_I",
    "closed_P",
    "default_discriminant",
    "delta_I",
    "delta_I_shells",
    "denominator_check",
    "fit_recurrence",
    "joint_case",
    "l_factor_table",
    "matrix_coeff_integral",
    "matrix_coefficient_case",
    "normalized_P0",
    "oracle_I",
    "oracle_P",
    "p0_table_value",
    "ramified_extension_case",
    "ramified_phi_case",
    "ramified_principal_split_case",
    "reduction_P",
    "series_P",
    "shortcut_I",
    "special_case",
    "special_coset_I",
    "supercuspidal_coset_parts",
    "supercuspidal_split_case",
    "u_inert_case",
    "u_split_case",
    "vanishing_report",
]
