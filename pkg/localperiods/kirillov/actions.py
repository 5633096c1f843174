"""Group actions on Kirillov vectors and the bookkeeping built on them."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Set, Tuple, Union

from ..errors import ContextError, UnsupportedCase
from ..padic import Mat2
from .models import Key, KirillovVector, SupercuspidalParams, split_rational
from .symbolic import SymbolicValue

Number = Union[int, Fraction]
BorelEntries = Tuple[Number, Number, Number]
Profile = Dict[int, Set[int]]

MOMENT_KINDS = ("const", "psi")


def _borel_entries(b: Union[Mat2, BorelEntries]) -> Tuple[Fraction, Fraction, Fraction]:
    if isinstance(b, Mat2):
        if not b.is_upper_triangular():
            raise ContextError("borel_act needs an upper-triangular matrix")
        return b.a.to_fraction(), b.b.to_fraction(), b.d.to_fraction()
    a1, m, a2 = b
    return Fraction(a1), Fraction(m), Fraction(a2)


def borel_act(params: SupercuspidalParams, b: Union[Mat2, BorelEntries], v: KirillovVector) -> KirillovVector:
    """pi((a1 m; 0 a2)) phi(x) = w(a2) psi(-m x / a2) phi(a1 x / a2)."""
    a1, m, a2 = _borel_entries(b)
    if a1 == 0 or a2 == 0:
        raise ContextError("singular Borel element")
    v_t, u_t = split_rational(params.p, a1 / a2, params.modulus)
    central = params.central_value(a2)
    y = -m / a2
    order = params.order
    out: List[Tuple[Key, SymbolicValue]] = []
    for (k, n), coefficient in v:
        shifted = n - v_t
        coefficient = coefficient * (central * params.char_value(k, u_t))
        for j, g in params.gauss_expansion(y * Fraction(params.p) ** shifted).items():
            out.append((((k + j) % order, shifted), coefficient * g))
    return KirillovVector.collect(out)


def omega_act(params: SupercuspidalParams, v: KirillovVector) -> KirillovVector:
    """pi(omega) 1_{nu,n} = C_{nu w0^-1} z0^(-n) 1_{nu^-1 w0, -n + n_{nu^-1}}."""
    order = params.order
    w0 = params.w0_exponent
    out: List[Tuple[Key, SymbolicValue]] = []
    for (k, n), coefficient in v:
        value = coefficient * params.symbol(k - w0) * complex(params.z0) ** (-n)
        out.append((((-k + w0) % order, -n + params.n_law(-k)), params.reduce(value)))
    return KirillovVector.collect(out)


def central_sign_act(params: SupercuspidalParams, v: KirillovVector) -> KirillovVector:
    return borel_act(params, (-1, 0, -1), v)


def lower_unipotent_act(params: SupercuspidalParams, x: Number, v: KirillovVector) -> KirillovVector:
    """(1 0; x 1) = -omega (1 -x; 0 1) omega."""
    inner = omega_act(params, v)
    inner = borel_act(params, (1, -Fraction(x), 1), inner)
    return central_sign_act(params, omega_act(params, inner))


def newform(params: SupercuspidalParams) -> KirillovVector:
    return KirillovVector.basis(0, 0)


def whittaker_vector(params: SupercuspidalParams, i: int) -> KirillovVector:
    """alpha -> W(diag(alpha, 1) n_lower(p^i)) as a Kirillov vector."""
    if i >= params.c:
        return newform(params)
    return lower_unipotent_act(params, Fraction(params.p) ** i, newform(params))


def moment_shell(c: int, i: int) -> int:
    return c + min(-c, -2 * (c - i))


def kirillov_moment(params: SupercuspidalParams, i: int, kind: str) -> SymbolicValue:
    """Integral over the support shell of W_i (const) or W_i(alpha) psi(p^-i alpha) (psi).

    The psi moment uses (1 -p^-i; 0 1)(1 0; p^i 1) = -omega (p^i 1; 0 p^-i).
    """
    if kind not in MOMENT_KINDS:
        raise ContextError(f"unknown moment kind {kind!r}")
    if not 0 <= i <= params.c:
        raise ContextError(f"coset index {i} outside 0..{params.c}")
    shell = moment_shell(params.c, i)
    if kind == "const":
        vector = whittaker_vector(params, i)
    else:
        step = Fraction(params.p) ** i
        vector = borel_act(params, (step, 1, 1 / step), newform(params))
        vector = central_sign_act(params, omega_act(params, vector))
    return vector.coefficient(0, shell)


def support_level_profile(params: SupercuspidalParams, v: KirillovVector) -> Profile:
    """Support n -> levels of the characters with nonzero coefficient there."""
    profile: Profile = {}
    for (k, n), _ in v:
        profile.setdefault(n, set()).add(params.level_of(k))
    return profile


def twist_level(c: int, i: int, p: int = 3) -> int:
    """Conductor of pi twisted by a level-i character."""
    if c < 2:
        raise ContextError("twist_level is stated for supercuspidal levels c >= 2")
    if i < 0:
        raise ContextError("character levels are non-negative")
    if p == 2 and c % 2 == 0 and i == c // 2:
        raise UnsupportedCase("p = 2 with i = c/2: only c(pi x lambda) <= c is known")
    return max(c, 2 * i)


def relation_profiles(params: SupercuspidalParams, n: int) -> Tuple[Profile, Profile]:
    """Profiles of omega n(-1) omega and n(1) omega n(1) applied to 1_{1,n}."""
    start = KirillovVector.basis(0, n)
    left = omega_act(params, borel_act(params, (1, -1, 1), omega_act(params, start)))
    right = borel_act(params, (1, 1, 1), omega_act(params, borel_act(params, (1, 1, 1), start)))
    return support_level_profile(params, left), support_level_profile(params, right)


def is_congruence_invariant(params: SupercuspidalParams, v: KirillovVector, k: int) -> bool:
    """Invariance under (1+p^k O, p^k O; p^k O, 1+p^k O), read off the profiles."""
    profile = support_level_profile(params, v)
    if any(level > k for levels in profile.values() for level in levels):
        return False
    if any(n < -k for n in profile):
        return False
    return all(n >= -k for n in support_level_profile(params, omega_act(params, v)))


__all__ = [
    "MOMENT_KINDS",
    "Profile",
    "borel_act",
    "central_sign_act",
    "is_congruence_invariant",
    "kirillov_moment",
    "lower_unipotent_act",
    "moment_shell",
    "newform",
    "omega_act",
    "relation_profiles",
    "support_level_profile",
    "twist_level",
    "whittaker_vector",
]
