import json
import random
from fractions import Fraction

import pytest

from psicalc import calculus
from psicalc.calculus import (
    RuleReport,
    compare,
    general_leibniz,
    general_leibniz_report,
    product_rule_asterisk,
    product_rule_boxplus,
    product_rule_chain,
    product_rule_ordinary,
    product_rule_star,
    quotient_derivative,
    quotient_q_display_reports,
    quotient_rule_report,
    reciprocal_derivative,
    reciprocal_rule_report,
)
from psicalc.coefficients import Q, scalar_eval
from psicalc.errors import PsiCalcError
from psicalc.psi_context import get_context
from psicalc.series import constant, cos_psi, e_psi, make_series, monomial, sin_psi
from psicalc.verify import random_series

SPECS = ("natural", "q", "q=3/2", "fib")


def ctx_for(spec):
    return get_context(spec, 16)


@pytest.mark.parametrize("spec", SPECS)
@pytest.mark.parametrize("pair", [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)])
def test_asterisk_and_star_rules(spec, pair):
    rng = random.Random(hash((spec, pair)) & 0xFFFF)
    ctx = ctx_for(spec)
    for _ in range(5):
        f = random_series(ctx, 8, rng)
        g = random_series(ctx, 8, rng)
        r = product_rule_asterisk(f, g, *pair)
        assert r.ok and r.equal, (r.rule, r.first_diff)
        assert r.order == 7
        s = product_rule_star(f, g, *pair)
        assert s.ok, (s.rule, s.first_diff)


def test_star_rule_mirrors_asterisk_on_swapped_arguments(fib):
    rng = random.Random(3)
    f = random_series(fib, 8, rng)
    g = random_series(fib, 8, rng)
    r_ast = product_rule_asterisk(f, g, 2, 1)
    r_star = product_rule_star(g, f, 2, 1)
    assert r_ast.lhs == r_star.lhs
    assert r_ast.rhs == r_star.rhs


@pytest.mark.parametrize("spec", SPECS)
def test_ordinary_rule_has_two_faithful_forms(spec):
    rng = random.Random(11)
    ctx = ctx_for(spec)
    f = random_series(ctx, 9, rng)
    g = random_series(ctx, 9, rng)
    first, second = product_rule_ordinary(f, g)
    assert first.ok and second.ok
    assert first.rule != second.rule
    assert first.lhs == second.lhs  # same derivative, two decompositions


@pytest.mark.parametrize(
    "pairs",
    [((1, 0),), ((2, 1),), ((1, 0), (2, 0)), ((2, 1), (3, 2)), ((1, 0), (2, 1), (3, 2))],
)
@pytest.mark.parametrize("star", [False, True])
def test_chain_rule(pairs, star, fib):
    rng = random.Random(len(pairs) + star)
    for _ in range(5):
        f = random_series(fib, 9, rng)
        g = random_series(fib, 9, rng)
        r = product_rule_chain(f, g, pairs, star=star)
        assert r.ok, (pairs, star, r.first_diff)


def test_chain_rule_with_singleton_matches_fontane_rule(qsym):
    rng = random.Random(5)
    f = random_series(qsym, 7, rng)
    g = random_series(qsym, 7, rng)
    via_chain = product_rule_chain(f, g, ((2, 1),))
    via_pair = product_rule_asterisk(f, g, 2, 1)
    assert via_chain.lhs == via_pair.lhs
    assert via_chain.rhs == via_pair.rhs


@pytest.mark.parametrize("star", [False, True])
def test_boxplus_rule(star, fib, qsym):
    rng = random.Random(17)
    for ctx in (fib, qsym):
        f = random_series(ctx, 8, rng)
        g = random_series(ctx, 8, rng)
        r = product_rule_boxplus(f, g, (1, 0), (2, 1), star=star)
        assert r.ok, (ctx.kind, star, r.first_diff)


def test_rule_example_fib_monomials(fib):
    # x^2 x^3 = x^5 under the ordinary product, and D x^5 = s_5 x^4 = 5 x^4
    x2, x3 = monomial(fib, 2, 9), monomial(fib, 3, 9)
    first, second = product_rule_ordinary(x2, x3)
    assert first.ok and second.ok
    x5 = monomial(fib, 5, 9)
    assert x2 * x3 == x5
    assert x5.derivative() == monomial(fib, 4, 8).scale(5)
    assert first.lhs == monomial(fib, 4, 8).scale(5)


def test_rule_with_constant_g_collapses_to_scaling(fib):
    rng = random.Random(23)
    f = random_series(fib, 8, rng)
    one = constant(fib, 1, 8)
    r = product_rule_asterisk(f, one, 1, 0)
    assert r.ok
    prod = f.fontane(one, 1, 0)
    assert prod == f.diag_m(1, 0)


# -- general Leibniz -----------------------------------------------------------------


@pytest.mark.parametrize("spec", ("natural", "q", "fib"))
@pytest.mark.parametrize("n", range(7))
def test_general_leibniz(spec, n):
    ctx = get_context(spec, 20)
    rng = random.Random(100 + n)
    f = random_series(ctx, 12, rng)
    g = random_series(ctx, 12, rng)
    r = general_leibniz_report(f, g, n)
    assert r.ok, (spec, n, r.first_diff)
    assert r.order == 12 - n


def test_leibniz_low_orders_coincide_with_direct_rules(fib):
    rng = random.Random(9)
    f = random_series(fib, 8, rng)
    g = random_series(fib, 8, rng)
    assert general_leibniz(f, g, 0) == (f * g)
    assert general_leibniz(f, g, 1) == (f * g).derivative()


def test_leibniz_closed_form_natural(nat):
    x = monomial(nat, 1, 12)
    ex = e_psi(nat, 12)
    for n in range(7):
        got = general_leibniz(x, ex, n)
        want = (ex.scale(n) + x * ex).truncate(12 - n)
        assert got == want, n


def test_leibniz_closed_form_q(qsym):
    x = monomial(qsym, 1, 12)
    eq = e_psi(qsym, 12)
    for n in range(7):
        got = general_leibniz(x, eq, n)
        bracket = qsym.psi_value(n) if n else qsym.zero
        want = ((x * eq).scale(Q ** n) + eq.scale(bracket)).truncate(12 - n)
        assert got == want, n


def test_leibniz_rejects_excessive_order(fib):
    f = make_series(fib, [1, 2, 3])
    with pytest.raises(PsiCalcError):
        general_leibniz(f, f, 3)


# -- quotient and reciprocal -------------------------------------------------------


@pytest.mark.parametrize("spec", SPECS)
def test_quotient_rule(spec):
    ctx = ctx_for(spec)
    rng = random.Random(31)
    for _ in range(5):
        f = random_series(ctx, 10, rng)
        g = random_series(ctx, 10, rng, invertible=True)
        r = quotient_rule_report(f, g)
        assert r.ok, (spec, r.first_diff)


def test_quotient_of_identical_series_is_constant_one(fib):
    rng = random.Random(37)
    g = random_series(fib, 8, rng, invertible=True)
    h = g.divide(g)
    assert h == constant(fib, 1, 8)
    assert quotient_derivative(g, g) == h.derivative()


def test_quotient_natural_matches_classical_formula(nat):
    rng = random.Random(41)
    f = random_series(nat, 10, rng)
    g = random_series(nat, 10, rng, invertible=True)
    # (g Df - f Dg) / g^2, all ordinary products over the naturals
    lhs = quotient_derivative(f, g)
    rhs = (g * f.derivative() - f * g.derivative()).divide(g * g)
    assert lhs == rhs.truncate(9)


@pytest.mark.parametrize("spec", ("q", "q=3/2"))
def test_quotient_q_displays(spec):
    ctx = ctx_for(spec)
    rng = random.Random(43)
    for _ in range(5):
        f = random_series(ctx, 10, rng)
        g = random_series(ctx, 10, rng, invertible=True)
        first, second = quotient_q_display_reports(f, g)
        assert first.ok, first.first_diff
        assert second.ok, second.first_diff


def test_quotient_q_displays_need_q_context(fib):
    f = make_series(fib, [1, 1, 1])
    with pytest.raises(PsiCalcError):
        quotient_q_display_reports(f, f)


def test_tangent_display(nat, qsym, fib):
    for ctx in (nat, qsym, fib):
        s, c = sin_psi(ctx, 9), cos_psi(ctx, 9)
        tan = s.divide(c)
        lhs = tan.derivative()
        rhs = (c + tan.chain(s, ((1, 0),))).divide(c).truncate(8)
        assert lhs == rhs


def test_reciprocal_rule(fib):
    rng = random.Random(47)
    g = random_series(fib, 10, rng, invertible=True)
    r = reciprocal_rule_report(g)
    assert r.ok, r.first_diff


def test_reciprocal_q_exponential(qsym):
    eq = e_psi(qsym, 11)
    inv = constant(qsym, 1, 11).divide(eq)
    d = reciprocal_derivative(eq)
    assert d == inv.q_dilate().scale(qsym.from_int(-1)).truncate(10)
    for n in range(11):
        assert d.coeffs[n] == -(Q ** n) * inv.coeffs[n]


def test_reciprocal_natural_exponential(nat):
    # D(1/e^x) = D(e^{-x}) = -e^{-x}
    e = e_psi(nat, 10)
    d = reciprocal_derivative(e)
    em = e.dilate(-1)
    assert d == em.scale(-1).truncate(9)


def test_derivative_relation_roundtrip(fib):
    rng = random.Random(53)
    f = random_series(fib, 9, rng)
    g = random_series(fib, 9, rng, invertible=True)
    h = f.divide(g)
    assert f.derivative() == h.chain(g.derivative(), ((1, 0),)) + h.derivative() * g


# -- reports -----------------------------------------------------------------------


def test_report_json_shape(fib):
    rng = random.Random(59)
    f = random_series(fib, 6, rng)
    g = random_series(fib, 6, rng)
    r = product_rule_asterisk(f, g, 1, 0)
    data = r.to_json_dict()
    assert set(data) == {
        "rule", "psi", "order", "equal", "first_diff", "lhs", "rhs",
        "expected_equal", "ok",
    }
    assert data["rule"] == "product.asterisk(1,0)"
    assert data["psi"] == "fib"
    assert data["equal"] is True and data["ok"] is True
    assert data["first_diff"] is None
    json.dumps(data)  # serializable as-is


def test_report_polarity_for_expected_inequality(fib):
    f = e_psi(fib, 4)
    x = monomial(fib, 1, 4)
    r = compare("witness", f.fontane(x, 1, 0), x.fontane(f, 1, 0), expected_equal=False)
    assert not r.equal
    assert r.ok
    assert r.first_diff == 1
    r2 = compare("witness", f, f, expected_equal=False)
    assert r2.equal and not r2.ok


def test_report_detects_first_divergence(fib):
    f = make_series(fib, [1, 2, 3, 4])
    g = make_series(fib, [1, 2, 0, 4])
    r = compare("diff", f, g)
    assert not r.ok
    assert r.first_diff == 2


def test_symbolic_reports_specialize(qsym, qnum):
    rng = random.Random(61)
    coeffs_f = [rng.randint(-4, 4) for _ in range(9)]
    coeffs_g = [rng.randint(-4, 4) for _ in range(9)]
    f_s, g_s = make_series(qsym, coeffs_f), make_series(qsym, coeffs_g)
    f_n, g_n = make_series(qnum, coeffs_f), make_series(qnum, coeffs_g)
    r_s = product_rule_asterisk(f_s, g_s, 2, 1)
    r_n = product_rule_asterisk(f_n, g_n, 2, 1)
    point = Fraction(3, 2)
    assert [scalar_eval(c, point) for c in r_s.lhs.coeffs] == list(r_n.lhs.coeffs)
    assert [scalar_eval(c, point) for c in r_s.rhs.coeffs] == list(r_n.rhs.coeffs)
