from fractions import Fraction
from math import comb

import pytest

from psicalc.coefficients import Q
from psicalc.errors import BadIndices, FlavorMismatch, KOutOfRange, VariantMismatch
from psicalc.operator_algebra import (
    ORDINARY,
    ZERO_OPERATOR,
    Flavor,
    OperatorSum,
    ProductChain,
    apply_operator,
    binomial_operator,
    boxminus,
    boxplus,
    extensional_eq,
    op_concat,
    op_scale,
    rho,
    sigma,
)
from psicalc.psi_context import get_context
from psicalc.series import e_psi, make_series, monomial

A10 = OperatorSum.single(((1, 0),))
A20 = OperatorSum.single(((2, 0),))
A21 = OperatorSum.single(((2, 1),))
S21 = OperatorSum.single(((2, 1),), flavor=Flavor.STAR)


def op(*pair_lists):
    acc = None
    for pairs in pair_lists:
        t = OperatorSum.single(pairs)
        acc = t if acc is None else boxplus(acc, t)
    return acc


# -- chains ----------------------------------------------------------------------


def test_chain_validates_pairs_and_flavor():
    with pytest.raises(BadIndices):
        ProductChain(pairs=((1, 1),))
    with pytest.raises(BadIndices):
        ProductChain(pairs=((0, 0),))
    with pytest.raises(FlavorMismatch):
        ProductChain(flavor="star", pairs=((1, 0),))
    ProductChain(pairs=())  # empty chain is the ordinary product


def test_chain_rendering():
    assert ProductChain(pairs=()).render() == "*inf"
    assert ProductChain(pairs=((1, 0),)).render() == "*(1,0)"
    assert ProductChain(pairs=((1, 0), (2, 0))).render() == "*(1,0)*(2,0)"
    assert ProductChain(flavor=Flavor.STAR, pairs=((2, 1),)).render() == "#(2,1)"
    assert ProductChain(coefficient=3, pairs=((1, 0),)).render() == "3·*(1,0)"


def test_sum_rendering():
    assert binomial_operator(2, 1).render() == "*(1,0) [+] *(2,1)"
    assert ZERO_OPERATOR.render() == "*0"
    assert ORDINARY.render() == "*inf"


# -- canonical form -----------------------------------------------------------------


def test_boxplus_merges_syntactically_equal_chains():
    two = boxplus(A10, A10)
    assert len(two.terms) == 1
    assert two.terms[0].coefficient == 2
    assert boxminus(two, two) == ZERO_OPERATOR
    assert boxplus(two, ZERO_OPERATOR) == two


def test_merge_ignores_pair_order_inside_chain():
    a = OperatorSum.single(((1, 0), (2, 0)))
    b = OperatorSum.single(((2, 0), (1, 0)))
    assert a == b
    assert len(boxplus(a, b).terms) == 1


def test_empty_chain_flavors_collapse():
    plain = OperatorSum.single((), flavor=Flavor.ASTERISK)
    starred = OperatorSum.single((), flavor=Flavor.STAR)
    assert plain == starred == ORDINARY


def test_scale_by_zero_gives_zero_operator():
    assert op_scale(0, binomial_operator(3, 1)) == ZERO_OPERATOR
    assert op_scale(Fraction(1, 2), boxplus(A10, A10)).terms[0].coefficient == 1


def test_canonicalization_is_idempotent():
    s = boxplus(boxplus(A21, A10), OperatorSum.single(((1, 0),), coefficient=-1))
    assert s == A21
    assert OperatorSum(s.terms) == s


# -- concatenation -------------------------------------------------------------------


def test_boxplus_is_commutative_and_associative():
    a, b, c = A10, op_scale(2, A21), boxplus(A20, S21)
    assert boxplus(a, b) == boxplus(b, a)
    assert boxplus(boxplus(a, b), c) == boxplus(a, boxplus(b, c))


def test_concat_unit_and_distribution():
    assert op_concat(ORDINARY, A10) == A10
    assert op_concat(A10, ORDINARY) == A10
    lhs = op_concat(A10, boxplus(A20, A21))
    rhs = boxplus(op_concat(A10, A20), op_concat(A10, A21))
    assert lhs == rhs
    lhs = op_concat(boxplus(A20, A21), A10)
    rhs = boxplus(op_concat(A20, A10), op_concat(A21, A10))
    assert lhs == rhs


def test_concat_multiplies_coefficients_and_joins_pairs():
    a = OperatorSum.single(((1, 0),), coefficient=2)
    b = OperatorSum.single(((2, 1),), coefficient=3)
    got = op_concat(a, b)
    assert got.terms[0].coefficient == 6
    assert got.terms[0].pairs == ((1, 0), (2, 1))


def test_concat_rejects_mixed_flavors():
    with pytest.raises(FlavorMismatch):
        op_concat(A10, S21)
    # empty chains are flavor-neutral on either side
    assert op_concat(ORDINARY, S21) == S21


def test_concat_is_associative():
    a, b, c = A10, A21, A20
    assert op_concat(op_concat(a, b), c) == op_concat(a, op_concat(b, c))


# -- shift maps ------------------------------------------------------------------------


def test_rho_shifts_both_indices():
    assert rho(A10) == OperatorSum.single(((2, 1),))
    assert rho(op(((1, 0), (2, 0)))) == OperatorSum.single(((2, 1), (3, 1)))
    assert rho(ORDINARY) == ORDINARY


def test_sigma_shifts_i_and_appends():
    assert sigma(ORDINARY) == A10
    assert sigma(A10) == OperatorSum.single(((2, 0), (1, 0)))
    assert sigma(A21) == OperatorSum.single(((3, 1), (1, 0)))


def test_shift_maps_are_linear():
    s = boxplus(A10, op_scale(3, A21))
    assert rho(s) == boxplus(rho(A10), op_scale(3, rho(A21)))
    assert sigma(s) == boxplus(sigma(A10), op_scale(3, sigma(A21)))


def test_shift_maps_reject_star_chains():
    with pytest.raises(FlavorMismatch):
        rho(S21)
    with pytest.raises(FlavorMismatch):
        sigma(S21)


def test_sigma_powers_of_ordinary():
    acc = ORDINARY
    for k in range(1, 5):
        acc = sigma(acc)
        want = OperatorSum.single(tuple((i, 0) for i in range(k, 0, -1)))
        assert acc == want


# -- the operator triangle ----------------------------------------------------------


def test_triangle_rows_match_table():
    rows = {
        (0, 0): "*inf",
        (1, 0): "*inf",
        (1, 1): "*(1,0)",
        (2, 0): "*inf",
        (2, 1): "*(1,0) [+] *(2,1)",
        (2, 2): "*(1,0)*(2,0)",
        (3, 0): "*inf",
        (3, 1): "*(1,0) [+] *(2,1) [+] *(3,2)",
        (3, 2): "*(1,0)*(2,0) [+] *(1,0)*(3,1) [+] *(2,1)*(3,1)",
        (3, 3): "*(1,0)*(2,0)*(3,0)",
    }
    for (n, k), want in rows.items():
        assert binomial_operator(n, k).render() == want


def test_triangle_term_counts_are_binomial():
    for n in range(8):
        for k in range(n + 1):
            assert len(binomial_operator(n, k).terms) == comb(n, k)


def test_triangle_boundaries():
    for n in range(9):
        assert binomial_operator(n, 0) == ORDINARY
        want_diag = OperatorSum.single(tuple((i, 0) for i in range(n, 0, -1)))
        assert binomial_operator(n, n) == (ORDINARY if n == 0 else want_diag)
    with pytest.raises(KOutOfRange):
        binomial_operator(3, 4)
    with pytest.raises(KOutOfRange):
        binomial_operator(-1, 0)


def test_triangle_recurrence():
    for n in range(1, 8):
        for k in range(1, n):
            got = binomial_operator(n, k)
            want = boxplus(rho(binomial_operator(n - 1, k)), sigma(binomial_operator(n - 1, k - 1)))
            assert got == want


def test_first_column_closed_form():
    for n in range(1, 9):
        want = op(*(((i + 1, i),) for i in range(n)))
        assert binomial_operator(n, 1) == want


def test_second_column_closed_form():
    for n in range(2, 9):
        want = op(
            *(
                ((i + j + 2, i + j), (i + 1, i))
                for i in range(n - 1)
                for j in range(n - 1 - i)
            )
        )
        assert binomial_operator(n, 2) == want


def test_unrolled_recurrence():
    def sig_pow(s, k):
        for _ in range(k):
            s = sigma(s)
        return s

    for n in range(1, 7):
        for k in range(1, n):
            acc = None
            for i in range(1, k + 1):
                t = sig_pow(rho(binomial_operator(n - i, k - i + 1)), i - 1)
                acc = t if acc is None else boxplus(acc, t)
            acc = boxplus(acc, sig_pow(binomial_operator(n - 1, 0), k))
            assert acc == binomial_operator(n, k), (n, k)


# -- action on series -----------------------------------------------------------------


def test_apply_is_weighted_product(fib):
    f = make_series(fib, [1, 2, 0, 1, 1])
    g = make_series(fib, [0, 1, 1, 2, 1])
    assert apply_operator(A10, f, g) == f.fontane(g, 1, 0)
    assert apply_operator(S21, f, g) == f.star(g, 2, 1)
    s = boxplus(A10, op_scale(2, A21))
    assert apply_operator(s, f, g) == f.fontane(g, 1, 0) + f.fontane(g, 2, 1).scale(2)
    assert apply_operator(ZERO_OPERATOR, f, g) == f.fontane(g, 1, 0).scale(0)


def test_apply_on_naturals_is_plain_binomial(nat):
    f = make_series(nat, [1, 1, 2, 1, 0, 1, 1])
    g = make_series(nat, [2, 0, 1, 1, 1, 0, 1])
    fg = f * g
    for n in range(5):
        for k in range(n + 1):
            got = apply_operator(binomial_operator(n, k), f, g)
            assert got == fg.scale(comb(n, k)), (n, k)


def test_apply_on_q_twists_by_power(qsym):
    for n in range(5):
        for k in range(n + 1):
            a, b = 2, 3
            xa, xb = monomial(qsym, a, 8), monomial(qsym, b, 8)
            got = apply_operator(binomial_operator(n, k), xa, xb)
            want = monomial(qsym, a + b, 8).scale(qsym.psi_binomial(n, k) * Q ** (k * a))
            assert got == want


def test_apply_respects_chain_coefficient_variants(qsym):
    f = make_series(qsym, [1, 1, 1])
    g = make_series(qsym, [1, 0, 1])
    half = OperatorSum.single(((1, 0),), coefficient=Fraction(1, 2))
    got = apply_operator(half, f, g)
    assert got == f.fontane(g, 1, 0).scale(qsym.from_rational(Fraction(1, 2)))
    sym_coeff = OperatorSum.single(((1, 0),), coefficient=Q)
    with pytest.raises(VariantMismatch):
        apply_operator(sym_coeff, make_series(get_context("fib", 8), [1]),
                       make_series(get_context("fib", 8), [1]))


def test_action_invariant_under_pair_reordering(fib):
    f = e_psi(fib, 5)
    g = make_series(fib, [1, 2, 1, 0, 1, 1])
    a = f.chain(g, ((1, 0), (3, 1)))
    b = f.chain(g, ((3, 1), (1, 0)))
    assert a == b


# -- extensional equality ---------------------------------------------------------------


def test_extensional_eq_separates_kinds(qsym, fib):
    # only j matters in the q-case, so these collide there but not over Fibonacci
    assert extensional_eq(A10, A20, qsym, 6)
    assert not extensional_eq(A10, A20, fib, 6)
    assert extensional_eq(A10, A10, fib, 6)


def test_extensional_eq_sees_through_syntax(qsym):
    lhs = boxplus(A10, A10)
    rhs = op_scale(2, A20)
    assert lhs != rhs
    assert extensional_eq(lhs, rhs, qsym, 6)
