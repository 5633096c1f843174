from __future__ import annotations

import cmath
import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from localperiods.characters import (
    ShiftedChar,
    additive_psi_integral,
    additive_psi_integral_direct,
    character_square_level,
    e_unit_group,
    eval_character,
    find_character,
    gauss_shift_integral,
    gauss_shift_rule,
    make_unit_character,
    psi_lattice_integral,
    torus_character_sum,
    torus_full_sum,
    trivial_on_f_units,
)
from localperiods.errors import ContextError
from localperiods.padic import TruncatedElement, enumerate_residues, make_extension_element


def test_make_unit_character_examples(field_context):
    ctx5 = field_context(5)
    chi = make_unit_character(ctx5, 1, (1,))
    assert chi.actual_level() == 1
    values = {round(chi.unit_value((u,)).real, 9) + 1j * round(chi.unit_value((u,)).imag, 9) for u in range(1, 5)}
    assert len(values) == 4

    ctx3 = field_context(3)
    assert make_unit_character(ctx3, 2, (1,)).level == 2


def test_make_unit_character_rejects_smaller_level(field_context):
    ctx3 = field_context(3)
    # exponent 3 on the order-6 cyclic group kills 1 + 3O
    with pytest.raises(ContextError):
        make_unit_character(ctx3, 2, (3,))


def test_level_c_torus_character_trivial_on_f(field_context):
    ctx = field_context(3)
    chi = find_character(ctx, 2, field="E", predicate=trivial_on_f_units)
    assert chi.actual_level() == 2
    assert all(abs(chi.restricted_unit_value(u) - 1) < 1e-12 for u in enumerate_residues(ctx, 2))


def test_trivial_character_and_shift(inert3):
    trivial = make_unit_character(inert3, 0, (), 1j, field="E", name="chi1")
    x = make_extension_element(inert3, 3, 9)
    assert eval_character(make_unit_character(inert3, 0), TruncatedElement.from_rational(3, 7, 12)) == 1
    shifted = ShiftedChar(trivial, 0.25, 1)
    assert shifted.value_at_uniformizer == pytest.approx(1j * 3 ** (-(2 * 0.25 + 1)))
    assert eval_character(shifted, x) == pytest.approx(shifted.value_at_uniformizer)


def test_omega_product_evaluation(inert3):
    chi1 = find_character(inert3, 1, field="E", value_at_uniformizer=1j, predicate=trivial_on_f_units)
    chi2 = make_unit_character(inert3, 0, (), -1, field="E")
    t = make_extension_element(inert3, 1, 1)
    omega_t = eval_character(chi1, t.conjugate()) * eval_character(chi2, t)
    assert abs(omega_t) == pytest.approx(1.0)
    assert omega_t == pytest.approx(eval_character(chi1, t.conjugate()))


@pytest.mark.parametrize("p,c", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_f_character_multiplicative_on_all_pairs(field_context, p, c):
    ctx = field_context(p)
    chi = find_character(ctx, c, value_at_uniformizer=cmath.exp(0.3j))
    units = enumerate_residues(ctx, c)
    for x, y in itertools.product(units, units):
        ex = TruncatedElement.from_rational(p, x, 12)
        ey = TruncatedElement.from_rational(p, y, 12)
        assert eval_character(chi, ex * ey) == pytest.approx(eval_character(chi, ex) * eval_character(chi, ey))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 10 ** 5), st.integers(1, 10 ** 5), st.integers(-3, 3), st.integers(-3, 3))
def test_e_character_multiplicative_sampled(a, b, va, vb):
    from localperiods.padic import make_field_context

    ctx = make_field_context(3, 12, "inert", 2)
    chi = make_unit_character(ctx, 3, (1, 1, 2), 0.6 + 0.8j, field="E")
    x = make_extension_element(ctx, TruncatedElement.from_rational(3, a * 3 ** 6 + 1, 12), a % 27)
    y = make_extension_element(ctx, b % 27, TruncatedElement.from_rational(3, b * 3 + 1, 12))
    x = x * TruncatedElement.from_rational(3, 3 ** (va + 3), 20) * TruncatedElement.from_rational(3, 1, 12) / 27
    y = y * TruncatedElement.from_rational(3, 3 ** (vb + 3), 20) / 27
    assert eval_character(chi, x * y) == pytest.approx(eval_character(chi, x) * eval_character(chi, y))


@pytest.mark.parametrize("j,expected", [(-2, 0), (-1, -1), (0, 1 - 1 / 3), (2, 3 ** -2 * (1 - 1 / 3))])
def test_additive_psi_integral(inert3, j, expected):
    assert additive_psi_integral(3, j) == pytest.approx(expected)
    assert additive_psi_integral_direct(inert3, j) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("k", [-2, -1, 0, 1, 2])
def test_psi_lattice_integral(inert3, k):
    for x in (TruncatedElement.from_rational(3, n, 12) for n in (1, 5, 2 * 9)):
        for shift in (-3, -1, 0):
            y = x * TruncatedElement.from_rational(3, 3 ** (shift + 3), 12) / 27
            expected = 3 ** (-k) if y.val >= -k else 0
            assert psi_lattice_integral(inert3, y, k) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("i", range(-2, 5))
def test_gauss_shift_integral_matches_rule(field_context, p, k, i):
    ctx = field_context(p)
    mu = find_character(ctx, k, value_at_uniformizer=cmath.exp(1.1j))
    assert abs(gauss_shift_integral(ctx, mu, i) - gauss_shift_rule(p, k, i)) < 1e-9


def test_gauss_shift_examples(field_context):
    ctx = field_context(3)
    assert gauss_shift_integral(ctx, find_character(ctx, 2), 0) == pytest.approx(0, abs=1e-12)
    assert gauss_shift_integral(ctx, find_character(ctx, 1), 0) == pytest.approx(-1 / 3)
    assert gauss_shift_integral(ctx, find_character(ctx, 1), 3) == pytest.approx(2 / 3)


@pytest.mark.parametrize("p", [3, 5])
def test_torus_character_sums(field_context, p):
    ctx = field_context(p)
    chi = find_character(ctx, 2, field="E", predicate=trivial_on_f_units)
    assert torus_character_sum(ctx, chi, 0) == pytest.approx(0, abs=1e-9)
    assert torus_character_sum(ctx, chi, 1) == pytest.approx(-1, abs=1e-9)
    assert torus_character_sum(ctx, chi, 2) == pytest.approx(1, abs=1e-9)
    root = eval_character(chi, make_extension_element(ctx, 0, 1))
    assert torus_character_sum(ctx, chi, 1, "b2") == pytest.approx(-root, abs=1e-9)


@pytest.mark.parametrize("p", [3, 5])
def test_torus_combined_identity_level_one(field_context, p):
    ctx = field_context(p)
    chi = find_character(ctx, 1, field="E", predicate=trivial_on_f_units)
    assert torus_full_sum(ctx, chi) == pytest.approx(0, abs=1e-9)


def test_torus_sum_rejects_ramified_restriction(field_context):
    ctx = field_context(3)
    chi = find_character(ctx, 1, field="E", predicate=lambda c: not trivial_on_f_units(c))
    with pytest.raises(ContextError):
        torus_character_sum(ctx, chi, 0)


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("n", [2, 3])
def test_squaring_preserves_level(field_context, p, n):
    ctx = field_context(p)
    group_order = (p - 1) * p ** (n - 1)
    for k in range(group_order):
        try:
            chi = make_unit_character(ctx, n, (k,))
        except ContextError:
            continue
        assert character_square_level(chi) == n


@pytest.mark.parametrize("p,c", [(3, 1), (3, 2), (5, 1)])
def test_orthogonality_on_e_units(field_context, p, c):
    ctx = field_context(p)
    group = e_unit_group(p, ctx.D, c)
    chi = find_character(ctx, c, field="E")
    total = sum(chi.unit_value(r) for r in group.dlog)
    assert abs(total) < 1e-9
    assert math.isclose(len(group.dlog), (p * p - 1) * p ** (2 * c - 2))
