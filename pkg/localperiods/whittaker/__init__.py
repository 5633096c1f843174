"""Newform Whittaker functions: closed tables, an induced-model oracle and shell moments."""
from __future__ import annotations

from .closed import whittaker_closed
from .models import (
    REP_KINDS,
    RepSpec,
    joint_rep,
    ramified_principal_rep,
    special_rep,
    supercuspidal_rep,
    unramified_rep,
)
from .moments import MomentValue, shell_moment, support_shell, whittaker_moment
from .oracle import default_depth, newform_base, whittaker_oracle

__all__ = [
    "MomentValue",
    "REP_KINDS",
    "RepSpec",
    "default_depth",
    "joint_rep",
    "newform_base",
    "ramified_principal_rep",
    "shell_moment",
    "special_rep",
    "supercuspidal_rep",
    "support_shell",
    "unramified_rep",
    "whittaker_closed",
    "whittaker_moment",
    "whittaker_oracle",
]
