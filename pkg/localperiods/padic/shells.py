"""Adaptive integration over products of p-adic balls.

An integrand receives one ``TruncatedElement`` per axis.  A returned value is
taken to hold on the whole box; ``PrecisionShortfall`` means the box is too
coarse, and it is split along its least refined axis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ContextError, PrecisionShortfall
from .element import TruncatedElement, psi

Box = Tuple[TruncatedElement, ...]
Integrand = Callable[..., complex]
BoxWeight = Callable[[Box], complex]

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"


def ball_measure(ball: TruncatedElement, kind: str = ADDITIVE) -> float:
    """dx-volume (vol O = 1) or d*x-volume (vol O* = 1) of a ball."""
    q = ball.p
    if kind == ADDITIVE:
        return float(q) ** (-ball.prec)
    if ball.is_zero_ball:
        raise ContextError("multiplicative balls must avoid 0")
    return float(q) ** (ball.val - ball.prec + 1) / (q - 1)


def psi_ball_integral(ball: TruncatedElement) -> complex:
    """Integral of psi(x) dx over the ball; zero once the ball is wider than O."""
    if ball.prec < 0:
        return 0j
    return psi(ball) * float(ball.p) ** (-ball.prec)


def shell_balls(p: int, v: int, r: int = 1) -> List[TruncatedElement]:
    """The balls p^v u + p^(v+r) O for u over (O/p^r)*."""
    r = max(1, r)
    return [TruncatedElement(p, v, u, v + r) for u in range(1, p ** r) if u % p]


def pairwise_sum(values: Sequence[complex]) -> complex:
    if not values:
        return 0j
    return complex(np.sum(np.asarray(values, dtype=complex)))


@dataclass
class BallIntegrator:
    """Integrates over boxes of balls, refining where the integrand is undecided.

    ``kinds`` gives the measure of each axis.  ``weight`` replaces the product
    measure when the integrand carries a factor that is integrated exactly over
    each box (e.g. psi(m) dm).  ``depth_limit`` caps how many times a single
    axis may be split below its starting ball.
    """

    kinds: Tuple[str, ...]
    depth_limit: int = 24
    weight: Optional[BoxWeight] = None
    evaluations: int = field(default=0, init=False)

    def box_weight(self, box: Box) -> complex:
        if self.weight is not None:
            return self.weight(box)
        volume = 1.0
        for ball, kind in zip(box, self.kinds):
            volume *= ball_measure(ball, kind)
        return volume

    def _split(self, box: Box, floors: Sequence[int]) -> List[Box]:
        depths = [ball.prec - floor for ball, floor in zip(box, floors)]
        open_axes = [i for i, depth in enumerate(depths) if depth < self.depth_limit]
        if not open_axes:
            raise PrecisionShortfall(f"refinement limit {self.depth_limit} reached on every axis", None)
        axis = min(open_axes, key=lambda i: depths[i])
        out = []
        for child in box[axis].children():
            out.append(box[:axis] + (child,) + box[axis + 1:])
        return out

    def integrate(self, integrand: Integrand, boxes: Sequence[Box]) -> complex:
        if not boxes:
            return 0j
        if any(len(box) != len(self.kinds) for box in boxes):
            raise ContextError("box dimension does not match the integrator axes")
        floors = [min(box[i].prec for box in boxes) for i in range(len(self.kinds))]
        stack: List[Box] = list(reversed(boxes))
        parts: List[complex] = []
        while stack:
            box = stack.pop()
            self.evaluations += 1
            try:
                value = integrand(*box)
            except PrecisionShortfall:
                stack.extend(reversed(self._split(box, floors)))
                continue
            if value != 0:
                w = self.box_weight(box)
                if w != 0:
                    parts.append(value * w)
        return pairwise_sum(parts)


__all__ = [
    "ADDITIVE",
    "MULTIPLICATIVE",
    "BallIntegrator",
    "ball_measure",
    "pairwise_sum",
    "psi_ball_integral",
    "shell_balls",
]
