"""Exception hierarchy shared by every localperiods subpackage."""
from __future__ import annotations

from typing import Optional


class LocalPeriodsError(ValueError):
    """Base class; callers may keep catching ``ValueError``."""


class ContextError(LocalPeriodsError):
    """Field context or input outside the hypotheses of an operation."""


class PrecisionShortfall(LocalPeriodsError):
    """A truncated value cannot decide a valuation, residue or support test."""

    def __init__(self, message: str, needed: Optional[int] = None) -> None:
        super().__init__(message)
        self.needed = needed


class PoleError(LocalPeriodsError):
    """A displayed denominator vanishes (within tolerance) at the requested point."""

    def __init__(self, factor: str, value: complex) -> None:
        super().__init__(f"pole: factor {factor} = {value!r} is too close to zero")
        self.factor = factor
        self.value = value


class DivergentPoint(LocalPeriodsError):
    """Evaluation point outside the convergence region of the shell sum."""


class TailNotGeometric(LocalPeriodsError):
    """Shell terms did not settle into a closable tail within the depth limit."""


class UnsupportedCase(LocalPeriodsError):
    """Requested combination (case, coset, representation kind) has no rule."""


class ConfigError(LocalPeriodsError):
    """Malformed suite configuration or settings file."""


__all__ = [
    "LocalPeriodsError",
    "ContextError",
    "PrecisionShortfall",
    "PoleError",
    "DivergentPoint",
    "TailNotGeometric",
    "UnsupportedCase",
    "ConfigError",
]
