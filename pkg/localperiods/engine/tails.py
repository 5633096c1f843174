"""Closing the v(alpha)-series of the P integral.

Shell terms of every case are, after a finite transient, a linear
recurrence with constant coefficients (sums of geometric sequences).  The
analytic mode fits the shortest such recurrence and sums it in closed form;
the bounded mode truncates and cross-checks two depths.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from ..errors import DivergentPoint, TailNotGeometric
from ..padic import pairwise_sum

MAX_ORDER = 6
FIT_TOL = 1e-9
BOUNDED_RATIO = 0.9
BOUNDED_TOL = 1e-8


@dataclass(frozen=True)
class TailFit:
    """Recurrence b_(j+d) = sum_i coefficients[i] b_(j+i) fitted from ``start``."""

    start: int
    coefficients: Tuple[complex, ...]
    roots: Tuple[complex, ...]
    residual: float

    @property
    def order(self) -> int:
        return len(self.coefficients)

    @property
    def spectral_radius(self) -> float:
        return max((abs(z) for z in self.roots), default=0.0)


def _fit_order(terms: np.ndarray, d: int) -> Tuple[np.ndarray, float]:
    rows = len(terms) - d
    hankel = np.array([terms[j : j + d] for j in range(rows)], dtype=complex)
    target = terms[d : d + rows]
    # the last two equations are held out
    train = rows - 2
    coefficients, *_ = np.linalg.lstsq(hankel[:train], target[:train], rcond=None)
    predicted = hankel @ coefficients
    scale = max(float(np.max(np.abs(terms))), 1e-300)
    residual = float(np.max(np.abs(predicted - target))) / scale
    return coefficients, residual


def fit_recurrence(terms: Sequence[complex], start: int = 0) -> TailFit:
    """Shortest recurrence (order <= 6) reproducing ``terms[start:]``."""
    tail = np.asarray(terms[start:], dtype=complex)
    if np.max(np.abs(tail), initial=0.0) == 0.0:
        return TailFit(start, (), (), 0.0)
    for d in range(1, MAX_ORDER + 1):
        if len(tail) < 2 * d + 3:
            break
        coefficients, residual = _fit_order(tail, d)
        if residual < FIT_TOL:
            # characteristic polynomial z^d - sum c_i z^i
            poly = np.concatenate(([1.0 + 0.0j], -coefficients[::-1]))
            roots = tuple(complex(z) for z in np.roots(poly))
            return TailFit(start, tuple(complex(c) for c in coefficients), roots, residual)
    raise TailNotGeometric(
        f"no linear recurrence of order <= {MAX_ORDER} fits {len(tail)} shell terms"
    )


def recurrence_sum(terms: Sequence[complex], fit: TailFit) -> complex:
    """sum_(j >= start) b_j = N(1) / Q(1) for the fitted generating function."""
    b = list(terms[fit.start :])
    d = fit.order
    if d == 0:
        return 0j
    if fit.spectral_radius >= 1.0:
        raise DivergentPoint(f"shell terms grow: spectral radius {fit.spectral_radius:.6g} >= 1")
    c = fit.coefficients
    # Q(x) = 1 - sum_i c_i x^(d - i)
    q_at_one = 1.0 - sum(c)
    numerator = []
    for j in range(d):
        value = b[j]
        for i in range(d):
            shift = d - i
            if shift <= j:
                value -= c[i] * b[j - shift]
        numerator.append(value)
    return complex(pairwise_sum(numerator) / q_at_one)


def close_series(
    terms: Sequence[complex],
    transient: int = 0,
    mode: str = "analytic-geometric",
    ratio: float = 0.0,
) -> complex:
    """Sum of the full series whose first shells are ``terms``."""
    transient = min(transient, len(terms))
    head = pairwise_sum(list(terms[:transient]))
    if mode == "bounded-truncation":
        if ratio > BOUNDED_RATIO:
            raise DivergentPoint(f"convergence ratio {ratio:.4g} exceeds {BOUNDED_RATIO}")
        full = pairwise_sum(list(terms))
        cut = max(transient, (len(terms) + transient) // 2)
        half = pairwise_sum(list(terms[:cut]))
        span = len(terms) - cut
        # geometric extrapolation of what the truncation left out
        remainder = abs(full - half) * ratio ** span / max(1e-300, 1 - ratio ** span)
        if remainder > BOUNDED_TOL * max(1.0, abs(full)):
            raise TailNotGeometric(
                f"depth {len(terms)} leaves an estimated tail of {remainder:.3g}; increase the depth"
            )
        return complex(full)
    fit = fit_recurrence(terms, transient)
    return complex(head + recurrence_sum(terms, fit))


def partial_sums(terms: Sequence[complex]) -> List[complex]:
    out, running = [], 0j
    for t in terms:
        running += t
        out.append(running)
    return out


__all__ = [
    "BOUNDED_RATIO",
    "MAX_ORDER",
    "TailFit",
    "close_series",
    "fit_recurrence",
    "partial_sums",
    "recurrence_sum",
]
