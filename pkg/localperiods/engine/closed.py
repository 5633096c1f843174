"""Closed evaluations of I(alpha, f, Phi_s) and of the P integral, case by case.

Character values are taken at the uniformizer: ``x``/``y`` are the shifted
chi_{1,s}, chi_{2,s} (at p for inert E, at sqrt D for ramified E, per place
for split E).  Every displayed denominator is checked against ``POLE_TOL``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from ..characters import ShiftedChar, eval_character
from ..errors import ContextError, PoleError, UnsupportedCase
from ..padic import TruncatedElement, pairwise_sum, sqrt_d
from ..sections import decomp_coefficients, k0_volume
from ..whittaker import whittaker_closed
from .models import CaseSpec, EvalPoint

POLE_TOL = 1e-8

EXACT = 64


@dataclass(frozen=True)
class CharacterValues:
    """Uniformizer values of one case at one s.

    Split cases fill ``x1, y1, x2, y2``; inert and ramified ones ``x, y``
    (for ramified E, ``rx``/``ry`` are the values at sqrt D and x = rx^2).
    ``chi1`` is the unshifted chi1 at the uniformizer of F.
    """

    q: int
    x: complex = 0j
    y: complex = 0j
    rx: complex = 0j
    ry: complex = 0j
    x1: complex = 0j
    y1: complex = 0j
    x2: complex = 0j
    y2: complex = 0j
    chi1: complex = 0j
    mu1: Optional[complex] = None
    mu2: Optional[complex] = None


def character_values(case: CaseSpec, s: complex) -> CharacterValues:
    q = case.q
    mu1 = complex(case.rep.mu1.value_at_uniformizer) if case.rep.mu1 is not None else None
    mu2 = complex(case.rep.mu2.value_at_uniformizer) if case.rep.mu2 is not None else None
    if case.is_split:
        c11, c21, c12, c22 = case.chars
        return CharacterValues(
            q=q,
            x1=ShiftedChar(c11, s, 1).value_at_uniformizer,
            y1=ShiftedChar(c21, s, -1).value_at_uniformizer,
            x2=ShiftedChar(c12, s, 1).value_at_uniformizer,
            y2=ShiftedChar(c22, s, -1).value_at_uniformizer,
            chi1=complex(c11.value_at_uniformizer * c12.value_at_uniformizer),
            mu1=mu1,
            mu2=mu2,
        )
    chi1, chi2 = case.chars
    first = ShiftedChar(chi1, s, 1).value_at_uniformizer
    second = ShiftedChar(chi2, s, -1).value_at_uniformizer
    if case.ctx.extension_kind == "ramified":
        return CharacterValues(
            q=q, x=first ** 2, y=second ** 2, rx=first, ry=second,
            chi1=complex(chi1.value_at_uniformizer) ** 2, mu1=mu1, mu2=mu2,
        )
    return CharacterValues(q=q, x=first, y=second, chi1=complex(chi1.value_at_uniformizer), mu1=mu1, mu2=mu2)


def _nonzero(name: str, value: complex) -> complex:
    if abs(value) < POLE_TOL:
        raise PoleError(name, value)
    return value


def geometric_sum(r: complex, n: int) -> complex:
    """sum_{j < n} r^j, without the 1/(1 - r)."""
    total, term = 0j, 1.0 + 0j
    for _ in range(max(n, 0)):
        total += term
        term *= r
    return total


def _mus(values: CharacterValues) -> tuple:
    if values.mu1 is None or values.mu2 is None:
        raise UnsupportedCase("representation without principal-series parameters")
    return values.mu1, values.mu2


# -- I(alpha) ---------------------------------------------------------------
def inert_I(q: int, x: complex, y: complex, v: int) -> complex:
    if v < 0:
        return 0j
    u = x / y
    den = _nonzero("1 - q^2 chi1s/chi2s", 1 - q * q * u)
    b, odd = divmod(v, 2)
    head = -q * (1 + q) * u / den * (x * q) ** v
    if odd:
        return head + (1 + q) * x ** (b + 1) * y ** b / den
    return head + (1 + q * u) * (x * y) ** b / den


def split_I(values: CharacterValues, v: int) -> complex:
    if v < 0:
        return 0j
    q, x1, y1, x2, y2 = values.q, values.x1, values.y1, values.x2, values.y2
    den = _nonzero("1 - chi2s(1)/(q chi1s(1))", 1 - y1 / (q * x1))
    a = (x1 * y2) ** v
    ratio = x2 * y1 / (x1 * y2)
    first = a * geometric_sum(q * x2 / y2, v + 1) * (1 - 1 / q) / den
    second = a * geometric_sum(ratio, v + 1) * (1 - y1 / x1) / (q * den)
    return first + second


def ramified_extension_I(values: CharacterValues, v: int) -> complex:
    if v < 0:
        return 0j
    q, x, y = values.q, values.x, values.y
    r = values.ry / values.rx
    z = q * q * x / y
    lower = -(-v // 2)
    tail = y ** v * q ** (-v) * pairwise_sum([z ** n for n in range(lower, v + 1)])
    return r * inert_I(q, x, y, v) + (1 - r) * tail


def ramified_phi_I(case: CaseSpec, values: CharacterValues, v: int) -> complex:
    if v < 0:
        return 0j
    q, c = values.q, case.level
    a = float(k0_volume(q, c))
    lead = q * values.x
    big_y = values.y / lead
    gap = _nonzero("1 - Y", 1 - big_y)
    factor = (1 - big_y / q) / gap
    if v <= c - 1:
        return a * lead ** v * (big_y ** (-c) - big_y ** (v - c + 1)) * factor
    return a * (lead ** v * big_y ** (-c) * factor - (1 - 1 / q) * lead ** v * big_y / gap)


def joint_I(case: CaseSpec, alpha: TruncatedElement, s: complex) -> complex:
    v = alpha.require_valuation()
    if v < 0:
        return 0j
    q, c = case.q, case.level
    chi1 = ShiftedChar(case.chars[0], s, 1)
    value = eval_character(chi1, alpha) / eval_character(chi1, sqrt_d(case.ctx))
    return value * q ** v / ((q - 1) * (q * q - 1) * q ** (3 * c - 3))


def closed_I(case: CaseSpec, alpha: TruncatedElement, s: complex) -> complex:
    """I(alpha, f, Phi_s) at the identity coset for the cases with an I display."""
    v = alpha.require_valuation()
    values = character_values(case, s)
    if case.tag == "U-INERT":
        return inert_I(case.q, values.x, values.y, v)
    if case.tag == "U-SPLIT":
        return split_I(values, v)
    if case.tag == "R1-RAMEXT":
        return ramified_extension_I(values, v)
    if case.tag == "R4-RAMCHI":
        return ramified_phi_I(case, values, v)
    if case.tag == "R5-JOINT":
        return joint_I(case, alpha, s)
    raise UnsupportedCase(f"{case.tag} has no closed I display")


def special_coset_I(case: CaseSpec, alpha: TruncatedElement, s: complex, index: int) -> complex:
    """I(alpha, r'(n_lower(p^i)) f, Phi_s) for the two cosets of the special case."""
    if case.tag != "R2-SPECIAL":
        raise UnsupportedCase("coset integrals i in {0, 1} belong to the special case")
    v = alpha.require_valuation()
    q = case.q
    values = character_values(case, s)
    if index == 1:
        return split_I(values, v) / (q + 1)
    if index == 0:
        if v < 0:
            return 0j
        extra = (q - 1) * (values.x1 / values.y1) * (values.x1 * values.y2) ** v
        extra *= geometric_sum(q * values.x2 / values.y2, v + 1)
        return (split_I(values, v) + extra) / (q * (q + 1))
    raise ContextError(f"the special case has cosets 0 and 1, not {index}")


def supercuspidal_coset_parts(case: CaseSpec, s: complex) -> Dict[int, Dict[str, complex]]:
    """Known const / psi parts of I on the support shell of W_i (R3 cases)."""
    if case.tag not in ("R3-SC-SPLIT", "R3-RPS-SPLIT"):
        raise UnsupportedCase("coset parts are tabulated for the level-c split cases")
    q, c = case.q, case.rep.level
    values = character_values(case, s)
    a_c = float(k0_volume(q, c))
    parts: Dict[int, Dict[str, complex]] = {
        c: {"const": complex(a_c), "psi": 0j},
        0: {"const": 0j, "psi": 0j},
    }
    below = parts.setdefault(c - 1, {})
    below["const"] = a_c * (1 / q + (1 - 1 / q) * values.x1 / values.y1)
    parts.setdefault(1, {})["psi"] = 0j
    return parts


# -- the split correction ----------------------------------------------------
def shortcut_I(values: CharacterValues, v: int) -> complex:
    """What the split integral gives if v(a2 + 2 sqrt D m) is read as min(v(a2), v(m))."""
    if v < 0:
        return 0j
    q, x1, y1, x2, y2 = values.q, values.x1, values.y1, values.x2, values.y2
    den = _nonzero("1 - chi2s(1)/(q chi1s(1))", 1 - y1 / (q * x1))
    k = (1 - y1 / x1) / (q * den)
    a = (x1 * y2) ** v
    ratio = x2 * y1 / (x1 * y2)
    zs = q * q * x1 * x2 / (y1 * y2)
    b = v // 2
    lower = a * geometric_sum(ratio, b + 1) * k
    upper = (y1 * y2 / q) ** v * pairwise_sum([zs ** j for j in range(b + 1, v + 1)]) * k
    return a * geometric_sum(q * x2 / y2, v + 1) * (1 - 1 / q) / den + lower + upper


def delta_I(values: CharacterValues, v: int) -> complex:
    """I - I' in closed form."""
    if v < 0:
        return 0j
    q, x1, y1, x2, y2 = values.q, values.x1, values.y1, values.x2, values.y2
    den = _nonzero("1 - chi2s(1)/(q chi1s(1))", 1 - y1 / (q * x1))
    k = (1 - y1 / x1) / (q * den)
    b = v // 2
    zs = q * q * x1 * x2 / (y1 * y2)
    ratio = x2 * y1 / (x1 * y2)
    upper = pairwise_sum([zs ** j for j in range(b + 1, v + 1)])
    lower = pairwise_sum([ratio ** j for j in range(b + 1, v + 1)])
    return -((y1 * y2 / q) ** v) * upper * k + (x1 * y2) ** v * lower * k


def delta_I_shells(values: CharacterValues, v: int) -> List[complex]:
    """Per-shell terms of I - I', one for each v/2 < n <= v."""
    if v < 0:
        return []
    q, x1, y1, x2, y2 = values.q, values.x1, values.y1, values.x2, values.y2
    den = _nonzero("1 - chi2s(1)/(q chi1s(1))", 1 - y1 / (q * x1))
    k = (1 - y1 / x1) / (q * den)
    zs = q * q * x1 * x2 / (y1 * y2)
    lead = (y1 * y2 / q) ** v
    return [
        -lead * zs ** n * k * (1 - (y1 / (q * x1)) ** (2 * n - v))
        for n in range(v // 2 + 1, v + 1)
    ]


# -- generating functions S(d) = sum_v d^v I(v) ---------------------------------
def closed_S(case: CaseSpec, values: CharacterValues, d: complex) -> complex:
    q = values.q
    if case.tag in ("U-INERT", "R1-RAMEXT"):
        x, y = values.x, values.y
        u = x / y
        den = _nonzero("1 - q^2 chi1s/chi2s", 1 - q * q * u)
        d_lin = _nonzero("1 - q d chi1s", 1 - q * d * x)
        d_sq = _nonzero("1 - d^2 chi1s chi2s", 1 - d * d * x * y)
        inert = -q * (1 + q) * u / (den * d_lin) + (1 + q * u + (1 + q) * x * d) / (den * d_sq)
        if case.tag == "U-INERT":
            return inert
        r = values.ry / values.rx
        return r * inert + (1 - r) / (d_lin * d_sq)
    if case.tag == "U-SPLIT":
        x1, y1, x2, y2 = values.x1, values.y1, values.x2, values.y2
        return (1 - d * x1 * x2) / (
            _nonzero("1 - d chi2s(1) chi1s(2)", 1 - d * y1 * x2)
            * _nonzero("1 - d chi1s(1) chi2s(2)", 1 - d * x1 * y2)
            * _nonzero("1 - q d chi1s(1) chi1s(2)", 1 - q * d * x1 * x2)
        )
    if case.tag == "R4-RAMCHI":
        c = case.level
        a = float(k0_volume(q, c))
        lead = q * values.x
        big_y = values.y / lead
        numerator = (1 - big_y / q) * big_y ** (-c) + (big_y / q - d * values.y) * (d * lead) ** c
        return a * numerator / (
            _nonzero("1 - d q chi1s", 1 - d * lead) * _nonzero("1 - d chi2s", 1 - d * values.y)
        )
    raise UnsupportedCase(f"{case.tag} has no unramified-Whittaker generating function")


def reduction_P(case: CaseSpec, point: EvalPoint) -> complex:
    """[mu2 S(delta mu2) - mu1 S(delta mu1)] / (mu2 - mu1) for an unramified pi."""
    values = character_values(case, point.s)
    mu1, mu2 = _mus(values)
    delta = point.delta(case.q)
    gap = _nonzero("mu2 - mu1", mu2 - mu1)
    return (mu2 * closed_S(case, values, delta * mu2) - mu1 * closed_S(case, values, delta * mu1)) / gap


# -- P ---------------------------------------------------------------------
def inert_P(values: CharacterValues, delta: complex) -> complex:
    q, x, y = values.q, values.x, values.y
    mu1, mu2 = _mus(values)
    d2 = delta * delta
    numerator = (1 + d2) * (1 - q * (x / y) * d2) + (mu1 + mu2) * x * delta * (1 - q * d2)
    denominator = (
        _nonzero("1 - q mu1 chi1s delta", 1 - q * mu1 * x * delta)
        * _nonzero("1 - q mu2 chi1s delta", 1 - q * mu2 * x * delta)
        * _nonzero("1 - mu1^2 chi1s chi2s delta^2", 1 - mu1 * mu1 * x * y * d2)
        * _nonzero("1 - mu2^2 chi1s chi2s delta^2", 1 - mu2 * mu2 * x * y * d2)
    )
    return numerator / denominator


def ramified_extension_P(values: CharacterValues, delta: complex) -> complex:
    q, x, y, rx, ry = values.q, values.x, values.y, values.rx, values.ry
    mu1, mu2 = _mus(values)
    d2 = delta * delta
    rr = rx * ry
    numerator = (1 + mu1 * rr * delta + mu2 * rr * delta + d2) * (1 - q * d2 * rx / ry)
    denominator = (
        _nonzero("1 - mu1^2 chi1s chi2s delta^2", 1 - mu1 * mu1 * x * y * d2)
        * _nonzero("1 - mu2^2 chi1s chi2s delta^2", 1 - mu2 * mu2 * x * y * d2)
        * _nonzero("1 - q mu1 chi1s delta", 1 - q * mu1 * x * delta)
        * _nonzero("1 - q mu2 chi1s delta", 1 - q * mu2 * x * delta)
    )
    return numerator / denominator


def special_P(values: CharacterValues, delta: complex) -> complex:
    q, x1, y1, x2, y2 = values.q, values.x1, values.y1, values.x2, values.y2
    _, mu2 = _mus(values)
    d = delta * mu2
    denominator = (
        _nonzero("1 - delta mu2 chi2s(1) chi1s(2)", 1 - d * y1 * x2)
        * _nonzero("1 - delta mu2 chi1s(1) chi2s(2)", 1 - d * x1 * y2)
        * _nonzero("1 - q delta mu2 chi1s(1) chi1s(2)", 1 - q * d * x1 * x2)
    )
    return (1 - 1 / q) / (q + 1) ** 2 * (1 - x1 / y1) / denominator


def level_split_P(case: CaseSpec, values: CharacterValues) -> complex:
    q, c = values.q, case.rep.level
    return (1 - 1 / q) * (1 - values.x1 / values.y1) / ((q + 1) ** 2 * q ** (2 * c - 2))


def ramified_phi_numerator(case: CaseSpec, values: CharacterValues, delta: complex) -> complex:
    """P_0 of the ramified-Phi case; the zeros of 1 - delta mu_i chi2s are removable."""
    q, c = values.q, case.level
    mu1, mu2 = _mus(values)
    lead = q * values.x
    big_y = values.y / lead

    def n_over(d: complex) -> complex:
        t = d * values.y
        return geometric_sum(t, c + 1) - big_y / q * geometric_sum(t, c)

    gap = _nonzero("mu2 - mu1", mu2 - mu1)
    first = mu2 * n_over(delta * mu2) * (1 - delta * mu1 * lead)
    second = mu1 * n_over(delta * mu1) * (1 - delta * mu2 * lead)
    return big_y ** (-c) * (first - second) / gap


def ramified_phi_P(case: CaseSpec, values: CharacterValues, delta: complex) -> complex:
    mu1, mu2 = _mus(values)
    lead = case.q * values.x
    a = float(k0_volume(case.q, case.level))
    denominator = _nonzero("1 - delta mu1 q chi1s", 1 - delta * mu1 * lead) * _nonzero(
        "1 - delta mu2 q chi1s", 1 - delta * mu2 * lead
    )
    return a * ramified_phi_numerator(case, values, delta) / denominator


def joint_P(case: CaseSpec, values: CharacterValues, delta: complex) -> complex:
    q, c = case.q, case.level
    _, mu2 = _mus(values)
    a_c = float(decomp_coefficients(q, c)[c])
    root = eval_character(case.chars[0], sqrt_d(case.ctx))
    scale = (q - 1) * (q * q - 1) * q ** (3 * c - 3) * root
    return a_c / (scale * _nonzero("1 - q delta mu2 chi1s", 1 - q * delta * mu2 * values.x))


def matrix_coefficient_value(q: int, c: int) -> Fraction:
    return Fraction(1, (q - 1) * q ** (c - 1))


def closed_P(case: CaseSpec, s: complex, w: complex = 0.5) -> complex:
    """The displayed P(s, w, f, Phi_s) of the case."""
    point = EvalPoint(s=s, w=w)
    delta = point.delta(case.q)
    if case.tag == "MC-SC-INERT":
        if case.rep.level % 2:
            return 0j
        return complex(matrix_coefficient_value(case.q, case.rep.level))
    values = character_values(case, s)
    if case.tag == "U-INERT":
        return inert_P(values, delta)
    if case.tag == "U-SPLIT":
        return reduction_P(case, point)
    if case.tag == "R1-RAMEXT":
        return ramified_extension_P(values, delta)
    if case.tag == "R2-SPECIAL":
        return special_P(values, delta)
    if case.tag in ("R3-SC-SPLIT", "R3-RPS-SPLIT"):
        return level_split_P(case, values)
    if case.tag == "R4-RAMCHI":
        return ramified_phi_P(case, values, delta)
    return joint_P(case, values, delta)


# -- series from the closed I ------------------------------------------------
def _phi_inverse(case: CaseSpec, alpha: TruncatedElement) -> complex:
    total = 1.0 + 0j
    for chi in case.chars:
        total *= eval_character(chi, alpha)
    return 1 / total


def series_P(case: CaseSpec, point: EvalPoint, terms: int = 160) -> complex:
    """sum over v(alpha) of |alpha|^(w/2-1/4) W Phi^-1 I with closed W and closed I."""
    q = case.q
    if case.tag == "R2-SPECIAL":
        weights = decomp_coefficients(q, 1)
        pieces: List[Callable[[TruncatedElement], complex]] = [
            lambda a, i=i: float(weights[i]) * whittaker_closed(case.rep, a, i)
            * special_coset_I(case, a, point.s, i)
            for i in (0, 1)
        ]
    else:
        weight = float(decomp_coefficients(q, case.rep.level)[-1]) if case.rep.level else 1.0
        pieces = [lambda a: weight * whittaker_closed(case.rep, a) * closed_I(case, a, point.s)]
    out = []
    for v in range(-1, terms):
        alpha = TruncatedElement(q, v, 1, v + EXACT)
        shell = sum(piece(alpha) for piece in pieces)
        out.append(point.alpha_weight(q, v) * _phi_inverse(case, alpha) * shell)
    return pairwise_sum(out)


def case_roots(case: CaseSpec, point: EvalPoint) -> float:
    """Largest modulus among the geometric ratios of the P series (0 when finite)."""
    if case.tag in ("MC-SC-INERT", "R3-SC-SPLIT", "R3-RPS-SPLIT"):
        return 0.0
    values = character_values(case, point.s)
    q = case.q
    delta = point.delta(q)
    mus = [m for m in (values.mu1, values.mu2) if m is not None]
    if case.tag in ("R2-SPECIAL", "R5-JOINT"):
        mus = [values.mu2]
    ratios: List[complex] = []
    for mu in mus:
        d = delta * mu
        if case.is_split:
            ratios += [d * values.y1 * values.x2, d * values.x1 * values.y2, q * d * values.x1 * values.x2]
        elif case.tag in ("R4-RAMCHI", "R5-JOINT"):
            # 1 - delta mu chi2s cancels in the R4 numerator
            ratios.append(q * d * values.x)
        else:
            ratios += [q * d * values.x, d * complex(values.x * values.y) ** 0.5]
    return max(abs(r) for r in ratios)


__all__ = [
    "CharacterValues",
    "POLE_TOL",
    "case_roots",
    "character_values",
    "closed_I",
    "closed_P",
    "closed_S",
    "delta_I",
    "delta_I_shells",
    "geometric_sum",
    "inert_I",
    "matrix_coefficient_value",
    "ramified_phi_numerator",
    "reduction_P",
    "series_P",
    "shortcut_I",
    "special_coset_I",
    "split_I",
    "supercuspidal_coset_parts",
]
