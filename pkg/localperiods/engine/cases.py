"""Case builders: each tag with the (f, Phi_s) choice and coset routing it prescribes."""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Optional, Sequence, Tuple

from sympy.ntheory import is_quad_residue

from ..characters import MultChar, find_character, make_unit_character, trivial_on_f_units
from ..errors import ContextError
from ..padic import FieldContext, make_field_context, n_lower
from ..sections import beta_coefficients, decomp_coefficients, k0_volume
from ..weil import (
    Block,
    BlockFunction,
    diag_word,
    exotic_function,
    level_function,
    n_lower_word,
    standard_function,
    weil_apply,
)
from ..whittaker import (
    joint_rep,
    ramified_principal_rep,
    special_rep,
    supercuspidal_rep,
    unramified_rep,
)
from .models import CASE_TAGS, CaseSpec, CosetTerm, Resolution

DEFAULT_PRECISION = 40

UNIT_TOL = 1e-12

Values = Sequence[complex]


def default_discriminant(p: int, kind: str) -> Optional[int]:
    """Smallest non-square unit for inert E, smallest square unit for split E."""
    if kind == "ramified":
        return None
    want_square = kind == "split"
    for d in range(1, p):
        if bool(is_quad_residue(d, p)) == want_square:
            return d
    raise ContextError(f"no {kind} discriminant mod {p}")


def _context(p: int, kind: str, precision: int, D: Optional[int]) -> FieldContext:
    return make_field_context(p, precision, kind, default_discriminant(p, kind) if D is None else D)


def _unramified(ctx: FieldContext, value: complex, field: str, name: str) -> MultChar:
    return make_unit_character(ctx, 0, (), value, field, name)


def _need(values: Values, count: int, what: str) -> Tuple[complex, ...]:
    if len(values) != count:
        raise ContextError(f"{what} needs {count} character values, got {len(values)}")
    return tuple(complex(v) for v in values)


def _split_chars(ctx: FieldContext, values: Tuple[complex, ...]) -> Tuple[MultChar, ...]:
    names = ("chi1(1)", "chi2(1)", "chi1(2)", "chi2(2)")
    return tuple(_unramified(ctx, v, "F", name) for v, name in zip(values, names))


def restriction_level(chi: MultChar) -> int:
    """Level of chi restricted to O_F*."""
    if chi.level == 0:
        return 0
    modulus = chi.p ** chi.level
    units = [u for u in range(1, modulus) if u % chi.p]
    for j in range(chi.level + 1):
        step = chi.p ** j
        if all(abs(chi.restricted_unit_value(u) - 1) < UNIT_TOL for u in units if (u - 1) % step == 0):
            return j
    return chi.level  # pragma: no cover


# -- unramified ---------------------------------------------------------------
def u_inert_case(
    p: int,
    chars: Values = (1.0, 1.0),
    mu1: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """Unramified pi at an inert place, f = char(M2(O)) x char(O*), Phi_s K-invariant."""
    ctx = _context(p, "inert", precision, D)
    v1, v2 = _need(chars, 2, "U-INERT")
    chi1 = _unramified(ctx, v1, "E", "chi1")
    chi2 = _unramified(ctx, v2, "E", "chi2")
    mu1 = complex(mu1)
    rep = unramified_rep(p, mu1, 1 / (mu1 * v1 * v2))
    f = standard_function(p)
    return CaseSpec("U-INERT", ctx, rep, (chi1, chi2), f, cosets=(CosetTerm(0, Fraction(1), f),), label="U-INERT")


def u_split_case(
    p: int,
    chars: Values = (1.0, 1.0, 1.0, 1.0),
    mu1: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    ctx = _context(p, "split", precision, D)
    values = _need(chars, 4, "U-SPLIT")
    mu1 = complex(mu1)
    product = values[0] * values[1] * values[2] * values[3]
    rep = unramified_rep(p, mu1, 1 / (mu1 * product))
    f = standard_function(p)
    return CaseSpec(
        "U-SPLIT",
        ctx,
        rep,
        _split_chars(ctx, values),
        f,
        route="split-borel",
        cosets=(CosetTerm(0, Fraction(1), f),),
        label="U-SPLIT",
    )


# -- ramified -----------------------------------------------------------------
def ramified_extension_case(
    p: int,
    chars: Values = (1.0, 1.0),
    mu1: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """E/F ramified; chars are the values at sqrt D."""
    ctx = _context(p, "ramified", precision, None)
    r1, r2 = _need(chars, 2, "R1-RAMEXT")
    chi1 = _unramified(ctx, r1, "E", "chi1")
    chi2 = _unramified(ctx, r2, "E", "chi2")
    mu1 = complex(mu1)
    rep = unramified_rep(p, mu1, 1 / (mu1 * (r1 * r2) ** 2))
    f = standard_function(p)
    return CaseSpec("R1-RAMEXT", ctx, rep, (chi1, chi2), f, cosets=(CosetTerm(0, Fraction(1), f),), label="R1-RAMEXT")


def _split_level_function(ctx: FieldContext, c: int) -> BlockFunction:
    """char(O, O; p^c O, O) conjugated so that it is supported on n_lower(sqrt D) K0(p^c)."""
    return level_function(ctx.p, c, frame=n_lower(ctx, ctx.sqrt_d))


def special_case(
    p: int,
    chars: Values = (1.0, 1.0, 1.0),
    mu1: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """Unramified special pi at a split place; chars fix chi1(1), chi2(1), chi1(2)."""
    ctx = _context(p, "split", precision, D)
    v11, v21, v12 = _need(chars, 3, "R2-SPECIAL")
    rep = special_rep(p, mu1)
    v22 = 1 / (rep.central_character * v11 * v21 * v12)
    q = ctx.q
    f = _split_level_function(ctx, 1)
    resolution = Resolution(a1=1, a2=1, m=1, alpha=1)
    cosets = (
        CosetTerm(1, Fraction(1, q + 1), f, resolution=resolution),
        CosetTerm(
            0,
            Fraction(q, q + 1),
            weil_apply(n_lower_word(1), f),
            floors=(0, -1, -1),
            resolution=resolution,
            v_min=-1,
        ),
    )
    return CaseSpec(
        "R2-SPECIAL",
        ctx,
        rep,
        _split_chars(ctx, (v11, v21, v12, v22)),
        f,
        level=1,
        route="split-borel",
        cosets=cosets,
        group_weight=k0_volume(q, 1),
        label="R2-SPECIAL",
    )


def _level_split_cosets(ctx: FieldContext, c: int) -> Tuple[CosetTerm, ...]:
    f = _split_level_function(ctx, c)
    resolution = Resolution(a1=c, a2=c, m=c)
    weights = decomp_coefficients(ctx.q, c)
    terms = []
    for i, weight in enumerate(weights):
        fi = f if i == c else weil_apply(n_lower_word(ctx.p ** i), f)
        terms.append(CosetTerm(i, weight, fi, floors=(0, i - c, i - c), resolution=resolution))
    return tuple(terms)


def supercuspidal_split_case(
    p: int,
    c: int = 2,
    chars: Values = (1.0, 1.0, 1.0),
    central: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """Supercuspidal pi of level c at a split place, f of level c."""
    ctx = _context(p, "split", precision, D)
    v11, v21, v12 = _need(chars, 3, "R3-SC-SPLIT")
    rep = supercuspidal_rep(p, c, central_value=central)
    v22 = 1 / (complex(central) * v11 * v21 * v12)
    return CaseSpec(
        "R3-SC-SPLIT",
        ctx,
        rep,
        _split_chars(ctx, (v11, v21, v12, v22)),
        _split_level_function(ctx, c),
        level=c,
        route="split-borel",
        cosets=_level_split_cosets(ctx, c),
        group_weight=k0_volume(ctx.q, c),
        label=f"R3-SC-SPLIT c={c}",
    )


def ramified_principal_split_case(
    p: int,
    c: int = 2,
    chars: Values = (1.0, 1.0, 1.0),
    mu: Values = (1.0, 1.0),
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """pi(mu1, mu2) with mu1, mu2 of level c/2 and mu1 mu2 unramified."""
    if c < 2 or c % 2:
        raise ContextError("ramified principal series here have even level c >= 2")
    ctx = _context(p, "split", precision, D)
    v11, v21, v12 = _need(chars, 3, "R3-RPS-SPLIT")
    m1, m2 = _need(mu, 2, "R3-RPS-SPLIT (mu)")
    mu1 = find_character(ctx, c // 2, "F", m1, name="mu1")
    mu2 = MultChar(ctx.p, "F", mu1.level, m2, tuple(-k for k in mu1.exponents), name="mu2")
    rep = ramified_principal_rep(mu1, mu2)
    v22 = 1 / (m1 * m2 * v11 * v21 * v12)
    return CaseSpec(
        "R3-RPS-SPLIT",
        ctx,
        rep,
        _split_chars(ctx, (v11, v21, v12, v22)),
        _split_level_function(ctx, c),
        level=c,
        route="split-borel",
        cosets=_level_split_cosets(ctx, c),
        group_weight=k0_volume(ctx.q, c),
        label=f"R3-RPS-SPLIT c={c}",
    )


def ramified_phi_case(
    p: int,
    c: int = 1,
    chars: Values = (1.0, 1.0),
    mu1: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """Unramified pi at an inert place, chi1 of level c with chi1|F* unramified."""
    ctx = _context(p, "inert", precision, D)
    v1, v2 = _need(chars, 2, "R4-RAMCHI")
    chi1 = find_character(ctx, c, "E", v1, predicate=trivial_on_f_units, name="chi1")
    chi2 = _unramified(ctx, v2, "E", "chi2")
    mu1 = complex(mu1)
    rep = unramified_rep(p, mu1, 1 / (mu1 * v1 * v2))
    zero = Fraction(0)
    f = BlockFunction(p, [Block((zero, zero, zero, zero), (0, c, -c, 0))], label=f"ramchi-{c}")
    term = CosetTerm(0, Fraction(1), f, floors=(-c, 0, 0), resolution=Resolution(c, c, c, c, 0))
    return CaseSpec(
        "R4-RAMCHI",
        ctx,
        rep,
        (chi1, chi2),
        f,
        level=c,
        route="torus",
        cosets=(term,),
        group_weight=k0_volume(ctx.q, c),
        label=f"R4-RAMCHI c={c}",
    )


def joint_case(
    p: int,
    c: int = 1,
    chars: Values = (1.0, 1.0),
    mu2: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """pi(mu1, mu2) with mu2 of level c matching chi1|F* of level c at an inert place."""
    ctx = _context(p, "inert", precision, D)
    v1, v2 = _need(chars, 2, "R5-JOINT")
    chi1 = find_character(ctx, c, "E", v1, predicate=lambda chi: restriction_level(chi) == c, name="chi1")
    chi2 = _unramified(ctx, v2, "E", "chi2")

    def inverse_on_units(mu: MultChar) -> bool:
        return all(
            abs(mu.restricted_unit_value(u) * chi1.restricted_unit_value(u) - 1) < UNIT_TOL
            for u in range(1, ctx.p ** c)
            if u % ctx.p
        )

    mu2_char = find_character(ctx, c, "F", complex(mu2), predicate=inverse_on_units, name="mu2")
    m1 = 1 / (complex(mu2) * v1 * v2)
    rep = joint_rep(MultChar(ctx.p, value_at_uniformizer=m1, name="mu1"), mu2_char)
    f = exotic_function(p, c, Fraction(1), Fraction(0), beta=1)
    resolution = Resolution(c, c, c, c, 0)
    weights = beta_coefficients(ctx.q, c)
    identity = CosetTerm(c, weights[(c, 1)], f, resolution=resolution)
    vanishing = tuple(
        CosetTerm(
            i,
            weight,
            weil_apply(n_lower_word(ctx.p ** i) @ diag_word(beta), f),
            beta=beta,
            floors=(i - c, i - c, i - c),
            resolution=resolution,
        )
        for (i, beta), weight in sorted(weights.items())
        if i < c
    )
    q = ctx.q
    return CaseSpec(
        "R5-JOINT",
        ctx,
        rep,
        (chi1, chi2),
        f,
        level=c,
        route="torus",
        cosets=(identity,),
        vanishing_cosets=vanishing,
        group_weight=Fraction(1, (q * q - 1) * q ** (2 * c - 2)),
        label=f"R5-JOINT c={c}",
    )


def matrix_coefficient_case(
    p: int,
    c: int = 2,
    central: complex = 1.0,
    precision: int = DEFAULT_PRECISION,
    D: Optional[int] = None,
) -> CaseSpec:
    """Supercuspidal pi of level c at an inert place, through its matrix coefficient."""
    ctx = _context(p, "inert", precision, D)
    chi1 = _unramified(ctx, 1.0, "E", "chi1")
    chi2 = _unramified(ctx, 1 / complex(central), "E", "chi2")
    rep = supercuspidal_rep(p, c, central_value=central)
    return CaseSpec("MC-SC-INERT", ctx, rep, (chi1, chi2), None, level=c, route="kirillov", label=f"MC-SC-INERT c={c}")


BUILDERS: Dict[str, Callable[..., CaseSpec]] = {
    "U-INERT": u_inert_case,
    "U-SPLIT": u_split_case,
    "R1-RAMEXT": ramified_extension_case,
    "R2-SPECIAL": special_case,
    "R3-SC-SPLIT": supercuspidal_split_case,
    "R3-RPS-SPLIT": ramified_principal_split_case,
    "R4-RAMCHI": ramified_phi_case,
    "R5-JOINT": joint_case,
    "MC-SC-INERT": matrix_coefficient_case,
}


def build_case(tag: str, **params) -> CaseSpec:
    """Build a case from a descriptor; parameter names follow the builder for the tag."""
    if tag not in CASE_TAGS:
        raise ContextError(f"unknown case tag {tag!r}")
    try:
        return BUILDERS[tag](**params)
    except TypeError as exc:
        raise ContextError(f"bad parameters for {tag}: {exc}") from exc


__all__ = [
    "BUILDERS",
    "DEFAULT_PRECISION",
    "build_case",
    "default_discriminant",
    "joint_case",
    "matrix_coefficient_case",
    "ramified_extension_case",
    "ramified_phi_case",
    "ramified_principal_split_case",
    "restriction_level",
    "special_case",
    "supercuspidal_split_case",
    "u_inert_case",
    "u_split_case",
]
