"""Local period integrals at p-adic places: brute-force oracle against closed forms."""
from __future__ import annotations

from .errors import (
    ConfigError,
    ContextError,
    DivergentPoint,
    LocalPeriodsError,
    PoleError,
    PrecisionShortfall,
    TailNotGeometric,
    UnsupportedCase,
)

__version__ = "0.1.0"


def main(argv=None) -> int:
    from .harness.cli import main as cli_main

    return cli_main(argv)


__all__ = [
    "ConfigError",
    "ContextError",
    "DivergentPoint",
    "LocalPeriodsError",
    "PoleError",
    "PrecisionShortfall",
    "TailNotGeometric",
    "UnsupportedCase",
    "__version__",
    "main",
]
