"""Derivative rules for the weighted products, with checkable reports.

Every rule function builds both sides of an identity as series and wraps
them in a ``RuleReport`` that records whether the coefficient lists agree
exactly and, if not, where they first differ.  Nothing is ever compared
approximately; the scalars are exact, so the only honest verdicts are
"identical" and "differs at index d".

The single-pair rules (one for each flavor):

    D(f *_{i,j} g) = Df *_{i+1,j+1} g  +  f *_{i+1,j}*_{1,0} Dg
    D(f #_{i,j} g) = Df #_{i+1,j}#_{1,0} g  +  f #_{i+1,j+1} Dg

specialize at the ordinary product (both flavors collapse onto it) to

    D(f g) = f *_{1,0} Dg + Df g  =  Df #_{1,0} g + f Dg,

and extend to whole chains by shifting every pair: (i, j) -> (i+1, j+1)
on the side differentiating the distinguished factor, (i, j) -> (i+1, j)
plus an appended (1, 0) on the other side.  Formal sums differentiate
term by term.

Iterating the ordinary rule gives the higher product rule

    D^n(f g) = sum_k  <n k>(D^(n-k) f, D^k g)

with the binomial operators of the operator algebra.  Division closes the
family: with h = f / g,

    D(f / g) = (Df - h *_{1,0} Dg) / g,
    D(1 / g) = -(1/g) * ((1/g) *_{1,0} Dg),

and in a q-analog context the quotient rule also matches both classical
displays with dilated numerators over g(x) g(qx).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import BadIndices, PsiCalcError
from .operator_algebra import binomial_operator
from .series import Pair, WardSeries, check_pair, constant, first_difference


@dataclass(frozen=True)
class RuleReport:
    """Two sides of one identity and the outcome of comparing them."""

    rule: str
    psi: str
    order: int
    lhs: WardSeries
    rhs: WardSeries
    equal: bool
    first_diff: int | None
    expected_equal: bool = True

    @property
    def ok(self) -> bool:
        return self.equal == self.expected_equal

    def to_json_dict(self) -> dict:
        return {
            "rule": self.rule,
            "psi": self.psi,
            "order": self.order,
            "equal": self.equal,
            "first_diff": self.first_diff,
            "lhs": self.lhs.to_json_dict()["coeffs"],
            "rhs": self.rhs.to_json_dict()["coeffs"],
            "expected_equal": self.expected_equal,
            "ok": self.ok,
        }


def compare(rule: str, lhs: WardSeries, rhs: WardSeries,
            expected_equal: bool = True) -> RuleReport:
    diff = first_difference(lhs, rhs)
    return RuleReport(
        rule=rule,
        psi=lhs.ctx.spec_string(),
        order=min(lhs.order, rhs.order),
        lhs=lhs,
        rhs=rhs,
        equal=diff is None,
        first_diff=diff,
        expected_equal=expected_equal,
    )


# -- single-pair product rules ------------------------------------------------


def product_rule_asterisk(f: WardSeries, g: WardSeries, i: int, j: int) -> RuleReport:
    check_pair((i, j))
    lhs = f.fontane(g, i, j).derivative()
    rhs = f.derivative().fontane(g, i + 1, j + 1) + f.chain(
        g.derivative(), ((i + 1, j), (1, 0))
    )
    return compare(f"product.asterisk({i},{j})", lhs, rhs)


def product_rule_star(f: WardSeries, g: WardSeries, i: int, j: int) -> RuleReport:
    check_pair((i, j))
    lhs = f.star(g, i, j).derivative()
    rhs = f.derivative().chain(g, ((i + 1, j), (1, 0)), star=True) + f.star(
        g.derivative(), i + 1, j + 1
    )
    return compare(f"product.star({i},{j})", lhs, rhs)


def product_rule_ordinary(f: WardSeries, g: WardSeries) -> tuple[RuleReport, RuleReport]:
    """Both one-sided forms of the ordinary product rule."""
    lhs = (f * g).derivative()
    rhs_a = f.chain(g.derivative(), ((1, 0),)) + f.derivative() * g
    rhs_s = f.derivative().chain(g, ((1, 0),), star=True) + f * g.derivative()
    return (
        compare("product.ordinary.asterisk_form", lhs, rhs_a),
        compare("product.ordinary.star_form", lhs, rhs_s),
    )


# -- chain and sum versions ------------------------------------------------------


def _shift_pairs(pairs: Sequence[Pair], dj: int) -> tuple[Pair, ...]:
    return tuple((i + 1, j + dj) for i, j in pairs)


def product_rule_chain(f: WardSeries, g: WardSeries, pairs: Sequence[Pair],
                       star: bool = False) -> RuleReport:
    pairs = tuple(check_pair(p) for p in pairs)
    lhs = f.chain(g, pairs, star=star).derivative()
    if star:
        rhs = f.chain(g.derivative(), _shift_pairs(pairs, 1), star=True) + (
            f.derivative().chain(g, _shift_pairs(pairs, 0) + ((1, 0),), star=True)
        )
    else:
        rhs = f.derivative().chain(g, _shift_pairs(pairs, 1)) + f.chain(
            g.derivative(), _shift_pairs(pairs, 0) + ((1, 0),)
        )
    flavor = "star" if star else "asterisk"
    label = "".join(f"({i},{j})" for i, j in pairs) or "empty"
    return compare(f"product.chain.{flavor}.{label}", lhs, rhs)


def product_rule_boxplus(f: WardSeries, g: WardSeries, first: Pair, second: Pair,
                         star: bool = False) -> RuleReport:
    """Term-by-term rule for a two-term formal sum of weighted products."""
    p1, p2 = check_pair(first), check_pair(second)
    lhs = (f.chain(g, (p1,), star=star) + f.chain(g, (p2,), star=star)).derivative()
    rhs = None
    for p in (p1, p2):
        if star:
            part = f.chain(g.derivative(), _shift_pairs((p,), 1), star=True) + (
                f.derivative().chain(g, _shift_pairs((p,), 0) + ((1, 0),), star=True)
            )
        else:
            part = f.derivative().chain(g, _shift_pairs((p,), 1)) + f.chain(
                g.derivative(), _shift_pairs((p,), 0) + ((1, 0),)
            )
        rhs = part if rhs is None else rhs + part
    flavor = "star" if star else "asterisk"
    return compare(f"product.boxplus.{flavor}.{p1}+{p2}", lhs, rhs)


# -- higher product rule ------------------------------------------------------------


def general_leibniz(f: WardSeries, g: WardSeries, n: int) -> WardSeries:
    """sum_k <n k>(D^(n-k) f, D^k g), truncated to min(order) - n."""
    if n < 0:
        raise BadIndices("derivative count must be nonnegative")
    if min(f.order, g.order) < n:
        raise PsiCalcError(f"series orders too small for {n} derivatives")
    acc = None
    for k in range(n + 1):
        term = binomial_operator(n, k).apply(f.derivative(n - k), g.derivative(k))
        acc = term if acc is None else acc + term
    return acc


def general_leibniz_report(f: WardSeries, g: WardSeries, n: int) -> RuleReport:
    lhs = (f * g).derivative(n)
    rhs = general_leibniz(f, g, n)
    return compare(f"leibniz.n={n}", lhs, rhs)


# -- quotient and reciprocal ----------------------------------------------------------


def quotient_derivative(f: WardSeries, g: WardSeries) -> WardSeries:
    """D(f/g) computed as (Df - (f/g) *_{1,0} Dg) / g."""
    h = f.divide(g)
    return (f.derivative() - h.chain(g.derivative(), ((1, 0),))).divide(g)


def quotient_rule_report(f: WardSeries, g: WardSeries) -> RuleReport:
    lhs = f.divide(g).derivative()
    return compare("quotient", lhs, quotient_derivative(f, g))


def quotient_q_display_reports(f: WardSeries, g: WardSeries) -> tuple[RuleReport, RuleReport]:
    """The two classical q-quotient displays, checked against D(f/g).

    form 1: (g(qx) Df - f(qx) Dg) / (g(x) g(qx))
    form 2: (g(x) Df - f(x) Dg) / (g(x) g(qx))
    """
    if f.ctx.q_scalar is None:
        raise PsiCalcError("q-quotient displays need a q-analog context")
    lhs = f.divide(g).derivative()
    gq, fq = g.q_dilate(), f.q_dilate()
    den = g * gq
    form1 = (gq * f.derivative() - fq * g.derivative()).divide(den)
    form2 = (g * f.derivative() - f * g.derivative()).divide(den)
    return (
        compare("quotient.q_display.dilated_g", lhs, form1),
        compare("quotient.q_display.plain_g", lhs, form2),
    )


def reciprocal_derivative(g: WardSeries) -> WardSeries:
    """D(1/g) = -(1/g) * ((1/g) *_{1,0} Dg)."""
    one = constant(g.ctx, 1, g.order)
    w = one.divide(g)
    return -(w * w.chain(g.derivative(), ((1, 0),)))


def reciprocal_rule_report(g: WardSeries) -> RuleReport:
    one = constant(g.ctx, 1, g.order)
    lhs = one.divide(g).derivative()
    return compare("reciprocal", lhs, reciprocal_derivative(g))
