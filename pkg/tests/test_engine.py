from __future__ import annotations

import dataclasses
from fractions import Fraction

import numpy as np
import pytest

from localperiods.engine import (
    EvalPoint,
    build_case,
    c1_coefficient,
    check_convergence,
    close_series,
    closed_I,
    closed_P,
    delta_I,
    delta_I_shells,
    denominator_check,
    fit_recurrence,
    joint_case,
    l_factor_table,
    matrix_coeff_integral,
    matrix_coefficient_case,
    normalized_P0,
    oracle_I,
    oracle_P,
    p0_table_value,
    ramified_extension_case,
    ramified_phi_case,
    ramified_principal_split_case,
    reduction_P,
    series_P,
    shortcut_I,
    special_case,
    supercuspidal_split_case,
    u_inert_case,
    u_split_case,
    vanishing_report,
)
from localperiods.characters import eval_character
from localperiods.engine import normalize
from localperiods.engine.closed import character_values, split_I
from localperiods.engine.oracle import WhittakerShells, coset_I, numeric_moment, phi_inverse
from localperiods.engine.tails import partial_sums, recurrence_sum
from localperiods.errors import ContextError, DivergentPoint, PoleError, TailNotGeometric, UnsupportedCase
from localperiods.kirillov import SymbolicValue
from localperiods.padic import TruncatedElement, sqrt_d
from localperiods.whittaker import support_shell, unramified_rep, whittaker_closed, whittaker_moment

P = 3
S = 0.25


def close(a: complex, b: complex, tol: float = 1e-8) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(b))


def alpha(v: int, u: int = 1) -> TruncatedElement:
    return TruncatedElement(P, v, u, v + 64)


def inert():
    return u_inert_case(P, chars=(1j, 1.0), mu1=0.9 * np.exp(0.3j))


def split():
    return u_split_case(P, chars=(1.0, np.exp(0.4j), 1j, 1.0), mu1=0.85)


def ramext():
    return ramified_extension_case(P, chars=(np.exp(0.7j), 1.0), mu1=0.8j)


def special():
    return special_case(P, chars=(1.0, np.exp(0.5j), -1.0), mu1=0.9)


def level_sc(c: int = 2):
    return supercuspidal_split_case(P, c, chars=(np.exp(0.2j), 1.0, 1j), central=np.exp(0.9j))


def level_rps():
    return ramified_principal_split_case(P, 2, chars=(1.0, np.exp(0.6j), 1.0), mu=(0.9, 1.1))


def ramchi(c: int = 1):
    return ramified_phi_case(P, c, chars=(1.0, np.exp(0.3j)), mu1=0.8)


def joint(c: int = 1):
    return joint_case(P, c, chars=(1.0, np.exp(0.4j)), mu2=0.9)


SERIES_CASES = [inert, split, ramext, special, ramchi, joint]


# -- case construction ----------------------------------------------------------
def test_build_case_dispatches_by_tag():
    case = build_case("U-INERT", p=P, chars=(1j, 1.0), mu1=0.9)
    assert case.tag == "U-INERT"
    assert case.route == "borel"
    assert case.rep.satisfies_central_condition(case.chi_product_at_p())


def test_build_case_rejects_unknown_tag_and_parameters():
    with pytest.raises(ContextError):
        build_case("U-NOWHERE", p=P)
    with pytest.raises(ContextError):
        build_case("U-INERT", p=P, colour="blue")


def test_inert_case_rejects_square_discriminant():
    with pytest.raises(ContextError):
        u_inert_case(P, D=1)


def test_case_spec_enforces_central_condition():
    case = inert()
    with pytest.raises(ContextError):
        dataclasses.replace(case, rep=unramified_rep(P, 1.0, 1.0))


@pytest.mark.parametrize("factory", [inert, split, ramext, special, level_sc, level_rps, ramchi, joint])
def test_every_builder_satisfies_central_condition(factory):
    case = factory()
    assert case.rep.satisfies_central_condition(case.chi_product_at_p())


def test_routes_follow_the_case():
    assert special().route == "split-borel"
    assert ramchi().route == "torus"
    assert matrix_coefficient_case(P, 2).route == "kirillov"
    assert [term.index for term in level_sc().cosets] == [0, 1, 2]
    assert sum(term.weight for term in level_sc().cosets) == 1


def test_joint_case_splits_identity_and_vanishing_cosets():
    case = joint()
    assert [term.index for term in case.cosets] == [1]
    assert {term.index for term in case.vanishing_cosets} == {0}
    total = sum(t.weight for t in case.cosets + case.vanishing_cosets)
    assert total == 1


# -- closed displays ----------------------------------------------------------
def test_inert_I_vanishes_below_zero():
    assert closed_I(inert(), alpha(-1), S) == 0


def test_inert_I_even_branch():
    case = inert()
    values = character_values(case, S)
    q, x, y = P, values.x, values.y
    u = x / y
    expected = -q * (1 + q) * u / (1 - q * q * u) * (x * q) ** 2 + (1 + q * u) * x * y / (1 - q * q * u)
    assert close(closed_I(case, alpha(2), S), expected)


def test_inert_pole_is_reported():
    case = u_inert_case(P, chars=(1.0, 1.0), mu1=1.0)
    with pytest.raises(PoleError) as info:
        closed_I(case, alpha(0), 0.0)
    assert "1 - q^2" in info.value.factor


def test_equal_mus_are_a_pole_of_the_reduction():
    case = u_split_case(P, chars=(1.0, 1.0, 1.0, 1.0), mu1=1.0)
    with pytest.raises(PoleError):
        closed_P(case, S)


def test_joint_I_display():
    case = joint()
    values = character_values(case, S)
    root = eval_character(case.chars[0], sqrt_d(case.ctx))
    expected = values.x / root * P / ((P - 1) * (P * P - 1))
    assert close(closed_I(case, alpha(1), S), expected, 1e-12)
    assert closed_I(case, alpha(-1), S) == 0


@pytest.mark.parametrize("factory", SERIES_CASES)
@pytest.mark.parametrize("w", [0.5, 0.6])
def test_closed_P_matches_the_series_of_closed_pieces(factory, w):
    case = factory()
    point = EvalPoint(S, w)
    assert close(closed_P(case, S, w), series_P(case, point), 1e-9)


@pytest.mark.parametrize("factory", [inert, ramext, ramchi])
def test_closed_P_matches_the_generating_function(factory):
    case = factory()
    point = EvalPoint(S, 0.6)
    assert close(closed_P(case, S, 0.6), reduction_P(case, point), 1e-9)


def test_level_split_P_is_independent_of_w():
    case = level_sc()
    values = [closed_P(case, S, w) for w in (0.3, 0.5, 0.8)]
    assert all(close(v, values[0], 1e-12) for v in values)


def test_ramified_chi_removable_point():
    # delta mu1 chi2s = 1 at s = 1/4, w = 0.6
    case = ramified_phi_case(P, 1, chars=(1.0, 1.0), mu1=P ** -0.95)
    values = character_values(case, S)
    assert close(EvalPoint(S, 0.6).delta(P) * values.mu1 * values.y, 1.0, 1e-12)
    mid = closed_P(case, S, 0.6)
    assert np.isfinite(abs(mid))
    for eps in (1e-3, 1e-4):
        around = (closed_P(case, S + eps, 0.6) + closed_P(case, S - eps, 0.6)) / 2
        assert abs(mid - around) <= 1e4 * eps ** 2


def test_matrix_coefficient_closed_value():
    assert close(closed_P(matrix_coefficient_case(P, 2), S), 1 / 6, 1e-15)
    assert closed_P(matrix_coefficient_case(P, 3), S) == 0


# -- split correction -----------------------------------------------------------
@pytest.mark.parametrize("v", [0, 1, 2, 3, 4])
def test_delta_I_is_honest_minus_shortcut(v):
    values = character_values(split(), S)
    assert close(split_I(values, v) - shortcut_I(values, v), delta_I(values, v), 1e-10)


@pytest.mark.parametrize("v", [1, 2, 3, 5])
def test_delta_I_shell_sum_equals_closed_form(v):
    values = character_values(split(), S)
    assert close(sum(delta_I_shells(values, v)), delta_I(values, v), 1e-10)


def test_delta_I_vanishes_at_zero():
    values = character_values(split(), S)
    assert delta_I(values, 0) == 0
    assert delta_I_shells(values, 0) == []


# -- normalization -------------------------------------------------------------
@pytest.mark.parametrize("factory", [inert, split, ramext])
@pytest.mark.parametrize("s", [0.1, 0.25, 0.1 + 0.2j])
def test_unramified_P0_is_one(factory, s):
    assert close(normalized_P0(factory(), s), 1.0, 1e-9)


@pytest.mark.parametrize("factory", [special, level_sc, level_rps, ramchi, joint, lambda: ramchi(2), lambda: joint(2)])
@pytest.mark.parametrize("s", [0.1, 0.25, 0.1 + 0.2j])
def test_P0_matches_the_table(factory, s):
    case = factory()
    assert close(normalized_P0(case, s), p0_table_value(case, s), 1e-9)


def test_special_P0_formula():
    case = special()
    s = 0.3
    chi2 = case.chars[2].value_at_uniformizer
    expected = 1 / ((P + 1) ** 2 * (1 - chi2 / case.chars[3].value_at_uniformizer * P ** -(2 * s + 1)))
    assert close(normalized_P0(case, s), expected, 1e-9)


@pytest.mark.parametrize("c, constant", [(1, Fraction(256, 3)), (2, Fraction(6912))])
def test_joint_P0_constant(c, constant):
    # (q-1)^2 (q+1)^3 q^(4c-5) at q = 3
    case = joint(c)
    root = eval_character(case.chars[0], sqrt_d(case.ctx))
    assert constant == (P - 1) ** 2 * (P + 1) ** 3 * Fraction(P) ** (4 * c - 5)
    assert close(normalized_P0(case, 0.2) * root, 1 / float(constant), 1e-9)
    assert not close(normalized_P0(case, 0.2) * root, 1 / ((P - 1) ** 3 * (P + 1) ** 2 * P ** (4.0 * c - 5)), 1e-3)


def test_l_factor_table_shapes():
    table = l_factor_table(inert())
    assert [f.label for f in table.numerator] == ["eta", "chi^E"]
    assert len(table.denominator) == 4
    assert l_factor_table(level_sc()).denominator == ()
    assert len(l_factor_table(joint()).denominator) == 1
    assert table.to_dict()["tag"] == "U-INERT"


@pytest.mark.parametrize(
    "factory",
    [inert, split, ramext, special, level_sc, level_rps, ramchi, joint, lambda: ramchi(2), lambda: joint(2)],
)
def test_denominators_clear_every_pole(factory):
    result = denominator_check(factory())
    assert result.passed, result.residual


def test_denominator_check_catches_a_missing_factor(monkeypatch):
    case = inert()
    table = l_factor_table(case)
    broken = dataclasses.replace(table, denominator=table.denominator[:-1])
    monkeypatch.setattr(normalize, "l_factor_table", lambda c: broken)
    assert not normalize.denominator_check(case).passed


# -- matrix coefficient ---------------------------------------------------------
@pytest.mark.parametrize("p, c, expected", [(3, 2, Fraction(1, 6)), (3, 4, Fraction(1, 54)), (5, 2, Fraction(1, 20))])
def test_matrix_coefficient_volume(p, c, expected):
    result = matrix_coeff_integral(p, c)
    assert result.value == expected
    assert result.passed
    assert set(result.checks) == {"profile", "normalized", "unipotent", "diagonal"}


def test_odd_level_matrix_coefficient_vanishes():
    result = matrix_coeff_integral(3, 3)
    assert result.value == 0
    assert result.vanishes_by_parity


def test_matrix_coefficient_oracle_route():
    case = matrix_coefficient_case(P, 2)
    assert close(oracle_P(case, EvalPoint(S)), closed_P(case, S), 1e-15)
    with pytest.raises(UnsupportedCase):
        oracle_I(case, alpha(0), S)


# -- tails -----------------------------------------------------------------------
def test_fit_recurrence_finds_two_geometric_roots():
    terms = [2 * 0.5 ** j + 0.3 ** j for j in range(20)]
    fit = fit_recurrence(terms)
    assert fit.order == 2
    assert sorted(round(abs(z), 8) for z in fit.roots) == [0.3, 0.5]
    assert close(recurrence_sum(terms, fit), 4 + 1 / 0.7, 1e-10)


def test_close_series_keeps_the_transient():
    terms = [5.0, -1.0] + [0.4 ** j for j in range(2, 30)]
    expected = 4.0 + 0.4 ** 2 / (1 - 0.4)
    assert close(close_series(terms, transient=2), expected, 1e-10)


def test_zero_tail_sums_to_the_head():
    terms = [1.0, 2.0] + [0.0] * 18
    assert close_series(terms, transient=2) == 3.0
    assert fit_recurrence(terms, 2).order == 0


def test_growing_tail_is_divergent():
    with pytest.raises(DivergentPoint):
        close_series([1.1 ** j for j in range(20)])


def test_noise_is_not_geometric():
    terms = np.random.default_rng(0).normal(size=20)
    with pytest.raises(TailNotGeometric):
        fit_recurrence(list(terms))


def test_bounded_truncation_mode():
    terms = [0.5 ** j for j in range(60)]
    assert close(close_series(terms, mode="bounded-truncation", ratio=0.5), 2.0, 1e-12)
    with pytest.raises(DivergentPoint):
        close_series(terms, mode="bounded-truncation", ratio=0.95)


def test_partial_sums():
    assert partial_sums([1, 2, 3]) == [1, 3, 6]


def test_divergent_point_rejected():
    case = u_inert_case(P, chars=(1.0, 1.0), mu1=10.0)
    with pytest.raises(DivergentPoint):
        check_convergence(case, EvalPoint(S))
    with pytest.raises(DivergentPoint):
        oracle_P(case, EvalPoint(S))


def test_eval_point_validates():
    with pytest.raises(ContextError):
        EvalPoint(S, tail_mode="guess")
    with pytest.raises(ContextError):
        EvalPoint(S, depth=2)


# -- oracle -----------------------------------------------------------------------
@pytest.mark.parametrize("v", [-1, 0, 1, 2])
def test_inert_oracle_I(v):
    case = u_inert_case(P, chars=(1j, 1.0), mu1=1.0)
    assert close(oracle_I(case, alpha(v), 0.0), closed_I(case, alpha(v), 0.0), 1e-9)


@pytest.mark.parametrize("v", [0, 1, 2, 3])
def test_split_oracle_I_honest_and_shortcut(v):
    case = split()
    values = character_values(case, S)
    honest = oracle_I(case, alpha(v), S)
    cut = oracle_I(case, alpha(v), S, shortcut=True)
    assert close(honest, closed_I(case, alpha(v), S), 1e-8)
    assert close(cut, shortcut_I(values, v), 1e-8)
    assert close(honest - cut, delta_I(values, v), 1e-8)


@pytest.mark.parametrize("v", [0, 1, 2])
def test_ramified_extension_oracle_I(v):
    case = ramext()
    assert close(oracle_I(case, alpha(v), S), closed_I(case, alpha(v), S), 1e-8)


@pytest.mark.parametrize("w", [0.5, 0.6])
@pytest.mark.parametrize("factory", [inert, split, ramext])
def test_unramified_oracle_P(factory, w):
    case = factory()
    got = oracle_P(case, EvalPoint(S, w))
    assert close(got, closed_P(case, S, w), 1e-6)


def test_oracle_P_parallel_matches_serial():
    case = inert()
    point = EvalPoint(S, depth=20)
    assert close(oracle_P(case, point, workers=4), oracle_P(case, point), 1e-12)


@pytest.mark.parametrize("v", [0, 1, 3])
def test_whittaker_shells_use_the_induced_model(v):
    case = inert()
    shells = WhittakerShells(case)
    assert close(shells.value(alpha(v), 0), whittaker_closed(case.rep, alpha(v), 0))
    assert shells.value(alpha(v, 2), 0) == shells.value(alpha(v), 0)


@pytest.mark.parametrize("i", [0, 1])
def test_special_whittaker_shells_per_coset(i):
    case = special()
    shells = WhittakerShells(case)
    for v in (-1, 0, 2):
        a = alpha(v, 2)
        assert close(shells.value(a, i), whittaker_closed(case.rep, a, i))


def test_supercuspidal_moments_come_from_the_kirillov_model():
    case = level_sc()
    for term in case.cosets:
        v = support_shell(case.rep, term.index)
        for kind in ("const", "psi"):
            numeric = numeric_moment(case, term.index, v, kind)
            assert isinstance(numeric, SymbolicValue)
            assert numeric.close_to(whittaker_moment(case.rep, term.index, kind)), (term.index, kind)


@pytest.mark.slow
def test_ramified_principal_moments_come_from_the_induced_model():
    case = level_rps()
    for term in case.cosets:
        v = support_shell(case.rep, term.index)
        for kind in ("const", "psi"):
            numeric = numeric_moment(case, term.index, v, kind)
            assert close(numeric, whittaker_moment(case.rep, term.index, kind)), (term.index, kind)


@pytest.mark.slow
def test_special_oracle_P():
    case = special()
    assert close(oracle_P(case, EvalPoint(S)), closed_P(case, S), 1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("factory", [level_sc, level_rps])
def test_level_split_oracle_P_cancels_C1(factory):
    case = factory()
    expected = closed_P(case, S)
    for w in (0.3, 0.5, 0.8):
        value = oracle_P(case, EvalPoint(S, w))
        assert c1_coefficient(value) < 1e-10
        numeric = value.pruned(1e-10).to_complex() if isinstance(value, SymbolicValue) else value
        assert close(numeric, expected, 1e-6)


@pytest.mark.slow
def test_supercuspidal_identity_coset_I():
    case = level_sc()
    got = oracle_I(case, alpha(0), S)
    assert close(got, float(case.group_weight), 1e-8)


@pytest.mark.slow
@pytest.mark.parametrize("v", [0, 1, 2])
def test_ramified_chi_oracle_I(v):
    case = ramchi()
    assert close(oracle_I(case, alpha(v), S), closed_I(case, alpha(v), S), 1e-8)


@pytest.mark.slow
def test_ramified_chi_alpha_shells_are_unit_free():
    case = ramchi()
    term = case.coset()
    a, b = alpha(1, 1), alpha(1, 2)
    left = phi_inverse(case, a) * coset_I(case, term, a, S)
    right = phi_inverse(case, b) * coset_I(case, term, b, S)
    assert close(left, right, 1e-9)


@pytest.mark.slow
def test_ramified_chi_oracle_P():
    case = ramchi()
    assert close(oracle_P(case, EvalPoint(S, depth=14)), closed_P(case, S), 1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("v", [0, 1])
def test_joint_oracle_I(v):
    case = joint()
    assert close(oracle_I(case, alpha(v), S), closed_I(case, alpha(v), S), 1e-8)


@pytest.mark.slow
def test_joint_alpha_shells_are_unit_free():
    case = joint()
    term = case.coset()
    a, b = alpha(1, 1), alpha(1, 2)
    left = phi_inverse(case, a) * coset_I(case, term, a, S)
    right = phi_inverse(case, b) * coset_I(case, term, b, S)
    assert close(left, right, 1e-9)


@pytest.mark.slow
def test_joint_vanishing_cosets():
    case = joint()
    for i, beta, v, value in vanishing_report(case, S, [0, 1]):
        assert abs(value) < 1e-9, (i, beta, v)


@pytest.mark.slow
def test_joint_oracle_P():
    case = joint()
    assert close(oracle_P(case, EvalPoint(S, depth=14)), closed_P(case, S), 1e-6)
