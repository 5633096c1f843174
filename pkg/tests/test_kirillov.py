from __future__ import annotations

import cmath
from fractions import Fraction

import pytest

from localperiods.errors import ContextError, UnsupportedCase
from localperiods.kirillov import (
    C1,
    KirillovVector,
    SupercuspidalParams,
    SymbolicValue,
    borel_act,
    is_congruence_invariant,
    kirillov_moment,
    lower_unipotent_act,
    newform,
    omega_act,
    relation_profiles,
    support_level_profile,
    twist_level,
)
from localperiods.padic import borel, make_field_context, matrix
from localperiods.whittaker import supercuspidal_rep, whittaker_moment

P = 3
QUADRATIC = 243  # the level-1 exponent on (Z/3^6)*, order 486


@pytest.fixture(scope="module")
def params2():
    return SupercuspidalParams(P, 2, z0=1.3)


def test_symbolic_relation_reduces_c1_squared(params2):
    square = SymbolicValue.symbol(C1) * SymbolicValue.symbol(C1)
    reduced = params2.reduce(square)
    assert reduced.is_numeric
    assert reduced.close_to(1.3 ** -2)


def test_symbolic_value_arithmetic():
    x = SymbolicValue.symbol(C1) * 2 + 1
    assert x.depends_on(C1)
    assert x.substitute({C1: 0.5}).close_to(2.0)
    with pytest.raises(ContextError):
        x.to_complex()
    assert (x - x).is_zero()


def test_borel_identity_and_integral_translation(params2):
    v = KirillovVector.basis(0, 1) + KirillovVector.basis(5, 0)
    assert borel_act(params2, (1, 0, 1), v).terms.keys() == v.terms.keys()
    moved = borel_act(params2, (1, 1, 1), v)
    assert moved.terms.keys() == v.terms.keys()
    assert moved.coefficient(0, 1).close_to(1.0)


def test_borel_accepts_matrices(params2):
    ctx = make_field_context(P, 12, "inert", 2)
    b = borel(ctx, 1, Fraction(1, 9), 1)
    out = borel_act(params2, b, KirillovVector.basis(0, 0))
    assert out.supports() == {0}


def test_borel_diagonal_word_on_newform(params2):
    for i in (1, 2):
        step = Fraction(P) ** i
        out = borel_act(params2, (step, 1, 1 / step), newform(params2))
        profile = support_level_profile(params2, out)
        assert set(profile) == {-2 * i}
        assert max(profile[-2 * i]) <= i


def test_omega_on_newform(params2):
    out = omega_act(params2, newform(params2))
    assert set(out.terms) == {(0, -2)}
    assert out.coefficient(0, -2).close_to(SymbolicValue.symbol(C1))


@pytest.mark.parametrize("w0", [0, QUADRATIC])
@pytest.mark.parametrize("key", [(0, 0), (0, -1), (QUADRATIC, 2), (1, -3)])
def test_omega_squared_is_the_central_sign(w0, key):
    params = SupercuspidalParams(P, 2, z0=0.7, w0_exponent=w0, ambient_level=6)
    v = KirillovVector.basis(*key)
    twice = omega_act(params, omega_act(params, v))
    assert set(twice.terms) == {key}
    assert twice.coefficient(*key).close_to(params.w0_at_minus_one())


def test_quadratic_central_sign():
    params = SupercuspidalParams(P, 2, w0_exponent=QUADRATIC, ambient_level=6)
    assert abs(params.w0_at_minus_one() + 1) < 1e-12


def test_level_law(params2):
    assert params2.n_law(0) == -2
    params4 = SupercuspidalParams(P, 4, ambient_level=6)
    assert params4.n_law(QUADRATIC) == -4
    assert params4.level_of(2) == 6
    assert params4.n_law(2) == -12


def test_low_level_character_moves_support_by_c():
    params = SupercuspidalParams(P, 4, ambient_level=6)
    out = omega_act(params, KirillovVector.basis(QUADRATIC, 1))
    assert out.supports() == {-1 - 4}


def test_profile_examples(params2):
    assert support_level_profile(params2, newform(params2)) == {0: {0}}
    step = Fraction(P) ** (params2.c - 1)
    out = borel_act(params2, (1, step, 1), omega_act(params2, newform(params2)))
    profile = support_level_profile(params2, out)
    assert set(profile) == {-2}
    assert profile[-2] <= {0, 1}
    assert out.coefficient(0, -2).close_to(SymbolicValue.symbol(C1) * (-1 / (P - 1)))


def test_newform_is_k1_invariant(params2):
    v = newform(params2)
    assert borel_act(params2, (2, 0, 1), v).coefficient(0, 0).close_to(1.0)
    assert borel_act(params2, (1, 5, 1), v).coefficient(0, 0).close_to(1.0)
    assert borel_act(params2, (1, 0, 1 + 9), v).coefficient(0, 0).close_to(1.0)
    fixed = lower_unipotent_act(params2, Fraction(P) ** params2.c, v)
    assert support_level_profile(params2, fixed) == {0: {0}}
    assert fixed.coefficient(0, 0).close_to(1.0)


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
@pytest.mark.parametrize("c", [2, 3])
def test_braid_relation_profiles(c, n):
    params = SupercuspidalParams(P, c, z0=1.1)
    left, right = relation_profiles(params, n)
    assert set(left) == set(right)
    if n >= 0:
        assert left == right
    else:
        for shell, levels in left.items():
            assert levels <= right[shell]


@pytest.mark.slow
@pytest.mark.parametrize("n", [0, 1, 2])
def test_braid_relation_profiles_level_four(n):
    params = SupercuspidalParams(5, 4, z0=0.9)
    left, right = relation_profiles(params, n)
    assert left == right


@pytest.mark.parametrize("z0", [1.3, cmath.exp(0.9j)])
@pytest.mark.parametrize("c", [2, 3])
def test_engine_moments_match_tables(c, z0):
    params = SupercuspidalParams(P, c, z0=z0)
    rep = supercuspidal_rep(P, c, central_value=z0)
    for i in range(c + 1):
        for kind in ("const", "psi"):
            assert kirillov_moment(params, i, kind).close_to(whittaker_moment(rep, i, kind)), (i, kind)


def test_twist_level_examples():
    assert twist_level(4, 1) == 4
    assert twist_level(2, 3) == 6
    assert twist_level(4, 2) == 4
    with pytest.raises(UnsupportedCase):
        twist_level(4, 2, p=2)
    with pytest.raises(ContextError):
        twist_level(1, 0)


def test_congruence_invariant_vectors():
    params = SupercuspidalParams(P, 2, ambient_level=6)
    assert is_congruence_invariant(params, KirillovVector.basis(0, -1), 1)
    assert is_congruence_invariant(params, KirillovVector.basis(QUADRATIC, -1), 1)
    assert is_congruence_invariant(params, KirillovVector.basis(0, 0), 2)
    assert not is_congruence_invariant(params, KirillovVector.basis(0, 0), 1)
    for n in range(-3, 4):
        assert not is_congruence_invariant(params, KirillovVector.basis(1, n), 2)


def test_params_validation():
    with pytest.raises(ContextError):
        SupercuspidalParams(2, 3)
    with pytest.raises(ContextError):
        SupercuspidalParams(P, 1)
    with pytest.raises(ContextError):
        SupercuspidalParams(P, 2, w0_exponent=1, ambient_level=6)


def test_matrix_entries_must_be_upper_triangular(params2):
    ctx = make_field_context(P, 12, "inert", 2)
    with pytest.raises(ContextError):
        borel_act(params2, matrix(ctx, 1, 0, 1, 1), newform(params2))
