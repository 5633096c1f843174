from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from localperiods.characters import ShiftedChar, eval_character, find_character, make_unit_character, trivial_on_f_units
from localperiods.errors import ContextError
from localperiods.padic import (
    Mat2,
    TruncatedElement,
    borel,
    embed,
    make_extension_element,
    make_field_context,
    matrix,
    n_lower,
    quadratic_coset_reps,
    sqrt_d,
)
from localperiods.sections import (
    beta_coefficients,
    decomp_coefficients,
    decompose_iwasawa,
    eval_section,
    eval_split_borel,
    evaluate_matrix,
    full_k_section,
    in_k1,
    induced_vector,
    inert_phi_exponents,
    k0_volume,
    k_tilde_section,
    newform_section,
    omega_character,
    ramified_phi_exponents,
    reassemble,
    split_phi_exponents,
    tail_volumes,
)

S = 0.15 + 0.05j


def close(a: complex, b: complex, tol: float = 1e-9) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def unramified(ctx, value, field="E", name="chi"):
    return make_unit_character(ctx, 0, (), value, field=field, name=name)


# -- Iwasawa cells ----------------------------------------------------------
def test_decomp_coefficients_examples():
    assert decomp_coefficients(3, 1) == [Fraction(3, 4), Fraction(1, 4)]
    assert decomp_coefficients(3, 2) == [Fraction(3, 4), Fraction(1, 6), Fraction(1, 12)]
    with pytest.raises(ContextError):
        decomp_coefficients(3, 0)


@pytest.mark.parametrize("q", [3, 5, 7])
@pytest.mark.parametrize("c", [1, 2, 3, 4])
def test_decomp_coefficients_sum_and_tails(q, c):
    assert sum(decomp_coefficients(q, c)) == 1
    tails = tail_volumes(q, c)
    for j in range(1, c + 1):
        assert tails[j] == k0_volume(q, j)


@pytest.mark.parametrize("q,c", [(3, 2), (3, 4), (5, 3)])
def test_beta_coefficients_refine_cells(q, c):
    refined = beta_coefficients(q, c)
    for i, a_i in enumerate(decomp_coefficients(q, c)):
        assert sum(v for (j, _), v in refined.items() if j == i) == a_i


def test_decompose_iwasawa_examples(inert3):
    c = 2
    assert decompose_iwasawa(borel(inert3, 2, 5, 7), c).index == c
    assert decompose_iwasawa(n_lower(inert3, 1), c).index == 0
    # (p^c 1; -alpha - m p^c, -m) with v(m) <= v(alpha) - c
    alpha, m = Fraction(81), Fraction(2)
    g = matrix(inert3, 9, 1, -alpha - m * 9, -m)
    dec = decompose_iwasawa(g, c)
    assert dec.index == c
    assert dec.a1.agrees_with(TruncatedElement.from_rational(3, -alpha / m, 12))
    assert dec.m.agrees_with(TruncatedElement.from_rational(3, 1, 12))
    assert dec.a2.agrees_with(TruncatedElement.from_rational(3, -m, 12))


entries = st.integers(-60, 60)


@settings(max_examples=120, deadline=None)
@given(entries, entries, entries, entries, st.integers(1, 3))
def test_decompose_iwasawa_reassembles(a, b, c_entry, d, c):
    assume(a * d - b * c_entry != 0)
    g = Mat2(*(TruncatedElement.from_rational(3, x, 20) for x in (a, b, c_entry, d)))
    dec = decompose_iwasawa(g, c)
    assert 0 <= dec.index <= c
    assert in_k1(dec.k, c)
    assert dec.borel.c.valuation_at_least(6)
    rebuilt = reassemble(dec)
    for x, y in zip((rebuilt.a, rebuilt.b, rebuilt.c, rebuilt.d), (g.a, g.b, g.c, g.d)):
        assert x.agrees_with(y)


# -- spherical sections -----------------------------------------------------
def borel_at(ctx, n, k, l, units=(1, 2, 4)):
    p = ctx.p
    return borel(ctx, Fraction(units[0]) * p ** n, Fraction(units[1]) * p ** k, Fraction(units[2]) * p ** l)


@pytest.mark.parametrize("n", range(0, 3))
@pytest.mark.parametrize("k", range(0, 4))
@pytest.mark.parametrize("l", range(0, 3))
def test_inert_section_matches_valuation_table(inert3, n, k, l):
    chi1 = unramified(inert3, cmath.exp(0.4j), name="chi1")
    chi2 = unramified(inert3, 0.8, name="chi2")
    spec = full_k_section(inert3, chi1, chi2, S)
    e1, e2 = inert_phi_exponents(n, k, l)
    expected = spec.vector.char1.value_at_uniformizer ** int(e1) * spec.vector.char2.value_at_uniformizer ** int(e2)
    assert close(eval_section(spec, borel_at(inert3, n, k, l)), expected)


@pytest.mark.parametrize("n", range(0, 3))
@pytest.mark.parametrize("k", range(0, 3))
@pytest.mark.parametrize("l", range(0, 3))
def test_ramified_section_matches_half_integral_table(ramified3, n, k, l):
    chi1 = unramified(ramified3, cmath.exp(0.3j), name="chi1")
    chi2 = unramified(ramified3, 1.1, name="chi2")
    spec = full_k_section(ramified3, chi1, chi2, S)
    e1, e2 = ramified_phi_exponents(n, k, l)
    # exponents count powers of p; the characters are read at sqrt D
    expected = spec.vector.char1.value_at_uniformizer ** int(2 * e1) * spec.vector.char2.value_at_uniformizer ** int(2 * e2)
    assert close(eval_section(spec, borel_at(ramified3, n, k, l)), expected)


def test_localcases_first_branch(inert3):
    chi1 = unramified(inert3, 0.6 + 0.3j, name="chi1")
    chi2 = unramified(inert3, 1.2, name="chi2")
    spec = full_k_section(inert3, chi1, chi2, S)
    g = borel_at(inert3, 1, 2, 3)
    root = sqrt_d(inert3)
    a1 = make_extension_element(inert3, 3)
    a2 = make_extension_element(inert3, 4 * 27)
    expected = eval_character(spec.vector.char1, a2 * root.inverse()) * eval_character(spec.vector.char2, a1 * root)
    assert close(eval_section(spec, g), expected)


def test_ramified_character_newform_section(inert3):
    chi1 = find_character(inert3, 1, field="E", value_at_uniformizer=0.7 + 0.2j, predicate=trivial_on_f_units, name="chi1")
    chi2 = unramified(inert3, 0.9, name="chi2")
    spec = newform_section(inert3, chi1, chi2, S, 1)
    c1 = spec.vector.char1.value_at_uniformizer
    c2 = spec.vector.char2.value_at_uniformizer
    at_root = eval_character(chi1, sqrt_d(inert3))
    for n in range(3):
        for k in range(3):
            for l in range(3):
                value = eval_section(spec, borel_at(inert3, n, k, l))
                if n <= min(k, l):
                    assert close(value, c1 ** l * c2 ** n / at_root)
                else:
                    assert value == 0


def test_k_tilde_section_support(inert3):
    chi1 = unramified(inert3, 0.5, name="chi1")
    chi2 = unramified(inert3, 2.0, name="chi2")
    k = 1
    spec = k_tilde_section(inert3, chi1, chi2, S, k)
    for a1 in range(1, 9):
        if a1 % 3 == 0:
            continue
        for m in (Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(6), Fraction(9)):
            value = eval_section(spec, borel(inert3, a1, m, 1))
            inside = a1 % 3 == 1 and (m == 0 or m.numerator % 3 == 0)
            assert close(value, 1.0 if inside else 0.0)
    assert eval_section(spec, borel(inert3, 3, 0, 1)) == 0
    assert eval_section(spec, borel(inert3, Fraction(1, 3), 0, 1)) == 0


# -- equivariance -----------------------------------------------------------
units = st.integers(1, 80).filter(lambda x: x % 3)
small = st.integers(-40, 40)


def f_vector(ctx, level, support, ramified_second=False):
    chi1 = unramified(ctx, 0.9 + 0.1j, field="F", name="mu1")
    if ramified_second:
        chi2 = make_unit_character(ctx, level, (1,), 1.3, name="mu2")
    else:
        chi2 = unramified(ctx, 1.3, field="F", name="mu2")
    return induced_vector(chi1, chi2, 0.2, level, support)


@settings(max_examples=80, deadline=None)
@given(units, small, units, st.integers(-2, 2), small, small, small, small)
def test_induced_vector_borel_equivariance(u1, m, u2, shift, a, b, c, d):
    ctx = make_field_context(3, 20, "inert", 2)
    assume(a * d - b * c != 0)
    vector = f_vector(ctx, 2, ((0, -1 / 3), (1, 1.0), (2, 0.5)))
    g = matrix(ctx, a, b, c, d)
    a1 = Fraction(u1) * Fraction(3) ** shift
    bm = borel(ctx, a1, m, u2)
    expected = eval_character(vector.char1, bm.a) * eval_character(vector.char2, bm.d) * evaluate_matrix(vector, g)
    assert close(evaluate_matrix(vector, bm @ g), expected)


@settings(max_examples=80, deadline=None)
@given(small, small, small, small, units, small, small, small)
def test_induced_vector_right_k1_invariance(a, b, c, d, k11, k12, k21, k22):
    ctx = make_field_context(3, 20, "inert", 2)
    assume(a * d - b * c != 0)
    level = 2
    vector = f_vector(ctx, level, ((level, 1.0),), ramified_second=True)
    g = matrix(ctx, a, b, c, d)
    k = matrix(ctx, k11, k12, 9 * k21, 1 + 9 * k22)
    assert in_k1(k, level)
    assert close(evaluate_matrix(vector, g @ k), evaluate_matrix(vector, g))


def _omega_matrices(ctx):
    return [borel_at(ctx, 0, 0, 0), borel_at(ctx, 1, 0, 2), borel_at(ctx, 0, 2, 1), n_lower(ctx, 3), n_lower(ctx, 1)]


def test_omega_equivariance_inert(inert3):
    chi1 = find_character(inert3, 1, field="E", value_at_uniformizer=0.7, predicate=trivial_on_f_units, name="chi1")
    chi2 = unramified(inert3, 1.1, name="chi2")
    for spec in (newform_section(inert3, chi1, chi2, S, 1), full_k_section(inert3, unramified(inert3, 0.5), chi2, S)):
        for t in quadratic_coset_reps(inert3, 1):
            for g in _omega_matrices(inert3):
                lhs = eval_section(spec, embed(inert3, t) @ g)
                rhs = omega_character(spec, t) * eval_section(spec, g)
                assert close(lhs, rhs)


def test_omega_equivariance_split(field_context):
    ctx = field_context(5, "split")
    pair1 = (make_unit_character(ctx, 1, (1,), 0.8, name="chi1_1"), unramified(ctx, 1.0, field="F"))
    pair2 = (unramified(ctx, 1.2, field="F"), make_unit_character(ctx, 1, (3,), 0.9, name="chi2_2"))
    spec = full_k_section(ctx, pair1, pair2, S)
    for a, b in [(1, 1), (2, 0), (1, 5), (3, 2)]:
        t = make_extension_element(ctx, a, b)
        for g in _omega_matrices(ctx):
            lhs = eval_section(spec, embed(ctx, t) @ g)
            rhs = omega_character(spec, t) * eval_section(spec, g)
            assert close(lhs, rhs)


def test_omega_equivariance_ramified(ramified3):
    spec = full_k_section(ramified3, unramified(ramified3, 0.6j), unramified(ramified3, 1.4), S)
    for a, b in [(1, 0), (1, 1), (2, 1), (4, 2)]:
        t = make_extension_element(ramified3, a, b)
        for g in _omega_matrices(ramified3):
            assert close(eval_section(spec, embed(ramified3, t) @ g), eval_section(spec, g))


# -- split substitution -----------------------------------------------------
def split_spec(ctx):
    pair1 = (unramified(ctx, 0.7 + 0.2j, field="F", name="c11"), unramified(ctx, 1.1, field="F", name="c12"))
    pair2 = (unramified(ctx, 0.9, field="F", name="c21"), unramified(ctx, 1.3 - 0.1j, field="F", name="c22"))
    return full_k_section(ctx, pair1, pair2, S)


def test_split_substitution_matches_direct_evaluation(field_context):
    ctx = field_context(5, "split")
    spec = split_spec(ctx)
    h = n_lower(ctx, ctx.sqrt_d)
    for n in range(3):
        for k in range(3):
            for l in range(3):
                b = borel_at(ctx, n, k, l, units=(1, 3, 2))
                direct = eval_section(spec, h @ b)
                substituted = eval_split_borel(spec, b.a, b.b, b.d)
                assert close(direct, substituted)


def test_split_shortcut_follows_naive_table(field_context):
    ctx = field_context(5, "split")
    spec = split_spec(ctx)
    first, second = spec.vectors
    for n in range(3):
        for k in range(3):
            for l in range(3):
                b = borel_at(ctx, n, k, l, units=(1, 3, 2))
                e1, e2 = split_phi_exponents(n, k, l)
                place1 = first.char1.value_at_uniformizer ** int(e1) * first.char2.value_at_uniformizer ** int(e2)
                place2 = second.char1.value_at_uniformizer ** n * second.char2.value_at_uniformizer ** l
                assert close(eval_split_borel(spec, b.a, b.b, b.d, shortcut=True), place1 * place2)


def test_split_honest_valuation_can_exceed_minimum(field_context):
    ctx = field_context(5, "split")
    spec = split_spec(ctx)
    # a2 = -2 sqrt D m pushes v(a2 + 2 sqrt D m) past min(l, k)
    m = Fraction(5)
    a2 = -2 * ctx.sqrt_d * m + 25 * 5
    a1 = Fraction(25)
    b = borel(ctx, a1, m, a2)
    honest = eval_split_borel(spec, b.a, b.b, b.d)
    naive = eval_split_borel(spec, b.a, b.b, b.d, shortcut=True)
    assert not close(honest, naive)


def test_shifted_characters_of_sections(inert3):
    spec = full_k_section(inert3, unramified(inert3, 1.0), unramified(inert3, 1.0), 0.0)
    assert isinstance(spec.vector.char1, ShiftedChar)
    assert close(spec.vector.char1.value_at_uniformizer, 3.0 ** -1)
    assert close(spec.vector.char2.value_at_uniformizer, 3.0)
