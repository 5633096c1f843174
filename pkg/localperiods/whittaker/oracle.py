"""W(g) = integral of phi(omega n(m) g) psi(m) dm, computed ball by ball."""
from __future__ import annotations

from typing import Optional

from ..errors import ContextError, PoleError, TailNotGeometric
from ..padic import ADDITIVE, BallIntegrator, TruncatedElement, psi_ball_integral, shell_balls
from ..sections import InducedVector, eval_induced, uniformizer_power
from .models import RepSpec

EXACT = 64
EDGE_TOL = 1e-12


def default_depth(rep: RepSpec, alpha: TruncatedElement, j: int) -> int:
    v = alpha.require_valuation()
    return rep.level + j + 3 + max(0, -v)


def _raw_whittaker(vector: InducedVector, alpha: TruncatedElement, j: int, depth: int) -> complex:
    """Unnormalized value at diag(alpha, 1) n_lower(p^j).

    omega n(m) diag(alpha, 1) n_lower(p^j) = (p^j 1; -alpha - m p^j, -m), det alpha.
    Shells v(m) < -depth are dropped; the shell v(m) = -depth must vanish.
    """
    p = alpha.p
    step = uniformizer_power(p, j, EXACT)

    def integrand(m: TruncatedElement) -> complex:
        return eval_induced(vector, -alpha - m * step, -m, alpha)

    limit = depth + abs(alpha.require_valuation()) + j + 2 * vector.level + 12
    integrator = BallIntegrator((ADDITIVE,), depth_limit=limit, weight=lambda box: psi_ball_integral(box[0]))
    body = integrator.integrate(integrand, [(TruncatedElement.zero_ball(p, -depth + 1),)])
    edge = integrator.integrate(integrand, [(ball,) for ball in shell_balls(p, -depth, 1)])
    if abs(edge) > EDGE_TOL * max(1.0, abs(body)):
        raise TailNotGeometric(f"Whittaker shell v(m) = {-depth} is {edge!r}; increase depth")
    return body + edge


def whittaker_oracle(
    rep: RepSpec,
    alpha: TruncatedElement,
    i: Optional[int] = None,
    depth: Optional[int] = None,
    normalize: bool = True,
) -> complex:
    """Numeric W(diag(alpha, 1) n_lower(p^i)) from the induced model.

    With ``normalize`` the value is divided by the computed W(1) at the
    identity coset, which absorbs every constant of the model.
    """
    j = rep.level if i is None else i
    if not 0 <= j <= rep.level:
        raise ContextError(f"coset index {j} outside 0..{rep.level}")
    vector = rep.newform_vector()
    raw = _raw_whittaker(vector, alpha, j, depth if depth is not None else default_depth(rep, alpha, j))
    if not normalize:
        return raw
    return raw / newform_base(rep)


def newform_base(rep: RepSpec) -> complex:
    """The raw W(1) at the identity coset; nonzero for every newform."""
    one = TruncatedElement(rep.p, 0, 1, EXACT)
    base = _raw_whittaker(rep.newform_vector(), one, rep.level, default_depth(rep, one, rep.level))
    if abs(base) < EDGE_TOL:
        raise PoleError("W(1)", base)
    return base


__all__ = ["default_depth", "newform_base", "whittaker_oracle"]
