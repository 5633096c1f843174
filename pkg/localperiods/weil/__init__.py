"""Schwartz functions on M2(F) x F* under the Weil representation and the right action."""
from __future__ import annotations

from .action import (
    a_word,
    d_word,
    diag_word,
    minus_one_word,
    n_lower_word,
    n_word,
    omega_word,
    right_translate,
    weil_apply,
    with_frame,
    word_for_matrix,
)
from .blocks import (
    beta_level_function,
    exotic_function,
    lattice_function,
    level_function,
    mixed_level_function,
    predicted_image,
    standard_function,
    to_table,
)
from .compare import Comparison, max_deviation, sample_windows, schwartz_equal
from .models import (
    Block,
    BlockFunction,
    EntryWindow,
    PairTable,
    Phase,
    ProductTerm,
    SchwartzFunction,
    TableFunction,
    TranslatedFunction,
    WeilLetter,
    WeilWord,
)

__all__ = [
    "Block",
    "BlockFunction",
    "Comparison",
    "EntryWindow",
    "PairTable",
    "Phase",
    "ProductTerm",
    "SchwartzFunction",
    "TableFunction",
    "TranslatedFunction",
    "WeilLetter",
    "WeilWord",
    "a_word",
    "beta_level_function",
    "d_word",
    "diag_word",
    "exotic_function",
    "lattice_function",
    "level_function",
    "max_deviation",
    "minus_one_word",
    "mixed_level_function",
    "n_lower_word",
    "n_word",
    "omega_word",
    "predicted_image",
    "right_translate",
    "sample_windows",
    "schwartz_equal",
    "standard_function",
    "to_table",
    "weil_apply",
    "with_frame",
    "word_for_matrix",
]
