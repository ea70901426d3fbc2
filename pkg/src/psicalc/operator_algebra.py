"""Formal algebra of weighted-product operators.

A ``ProductChain`` is one formal word: a scalar coefficient, a flavor
(asterisk or star), and a tuple of index pairs, each pair contributing one
kernel factor when the chain acts on a pair of series.  The empty chain is
the ordinary product and is flavor-neutral.  An ``OperatorSum`` is a formal
sum of chains and is kept canonical: pairs inside a chain are sorted
(kernel factors commute, so sorting never changes the action; a regression
test pins that down), equal chains are merged by adding coefficients, zero
terms are dropped, and terms are ordered by flavor then pair list.

Two shift maps act on asterisk sums and generate the whole family:

* ``rho``   sends every pair (i, j) to (i+1, j+1) and fixes the empty chain;
* ``sigma`` sends every pair (i, j) to (i+1, j) and appends (1, 0), so the
  empty chain becomes the single pair (1, 0).

The binomial operators follow the Pascal-style recurrence

    <n 0> = empty chain,   <n n> = (1,0)(2,0)...(n,0),
    <n k> = rho(<n-1 k>) boxplus sigma(<n-1 k-1>)   for 0 < k < n,

and are memoized per (n, k).  Applied to a series pair they produce the
sum of the corresponding weighted products; syntactic equality is equality
of canonical forms, while ``extensional_eq`` compares actions on all
monomial pairs up to an order (a basis, by bilinearity).
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import Iterable, Sequence

from .coefficients import RatFuncQ, Scalar, embed_rational
from .errors import FlavorMismatch, KOutOfRange, VariantMismatch
from .series import Pair, WardSeries, check_pair, monomial, zeros
from .psi_context import PsiContext


class Flavor(Enum):
    ASTERISK = "asterisk"
    STAR = "star"


def _lift_coefficient(ctx: PsiContext, c: Scalar) -> Scalar:
    # rational operator coefficients embed canonically into the q-field;
    # the reverse direction would lose the symbol and is refused
    if ctx.symbolic:
        return c if isinstance(c, RatFuncQ) else embed_rational(c)
    if isinstance(c, RatFuncQ):
        raise VariantMismatch(
            "operator coefficient is a rational function of q but the context is plain rational"
        )
    return c


@dataclass(frozen=True)
class ProductChain:
    """One weighted-product word; pairs kept in construction order."""

    coefficient: Scalar = 1
    flavor: Flavor = Flavor.ASTERISK
    pairs: tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(check_pair(p) for p in self.pairs))
        if not isinstance(self.flavor, Flavor):
            raise FlavorMismatch(f"bad flavor {self.flavor!r}")

    @property
    def is_ordinary(self) -> bool:
        return not self.pairs

    def negated(self) -> "ProductChain":
        return ProductChain(-self.coefficient, self.flavor, self.pairs)

    def scaled(self, alpha: Scalar) -> "ProductChain":
        c = self.coefficient
        if isinstance(alpha, RatFuncQ) and isinstance(c, numbers.Rational):
            c = embed_rational(c)
        return ProductChain(alpha * c, self.flavor, self.pairs)

    def apply(self, f: WardSeries, g: WardSeries) -> WardSeries:
        out = f.chain(g, self.pairs, star=self.flavor is Flavor.STAR)
        c = _lift_coefficient(f.ctx, self.coefficient)
        if c == 1:
            return out
        return out.scale(c)

    def render(self) -> str:
        if not self.pairs:
            body = "*inf"
        else:
            mark = "#" if self.flavor is Flavor.STAR else "*"
            body = "".join(f"{mark}({i},{j})" for i, j in self.pairs)
        if self.coefficient == 1:
            return body
        return f"{self.coefficient}·{body}"

    def __str__(self) -> str:
        return self.render()


def _canonical_terms(terms: Iterable[ProductChain]) -> tuple[ProductChain, ...]:
    merged: dict = {}
    for t in terms:
        flavor = t.flavor if t.pairs else Flavor.ASTERISK
        key = (flavor.value, tuple(sorted(t.pairs)))
        if key in merged:
            merged[key] = merged[key] + t.coefficient
        else:
            merged[key] = t.coefficient
    out = [
        ProductChain(c, Flavor(fv), pairs)
        for (fv, pairs), c in merged.items()
        if c
    ]
    out.sort(key=lambda t: (t.flavor.value, t.pairs))
    return tuple(out)


@dataclass(frozen=True)
class OperatorSum:
    """Canonical formal sum of product chains."""

    terms: tuple[ProductChain, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "terms", _canonical_terms(self.terms))

    @classmethod
    def of(cls, *chains: ProductChain) -> "OperatorSum":
        return cls(tuple(chains))

    @classmethod
    def single(cls, pairs: Sequence[Pair] = (), flavor: Flavor = Flavor.ASTERISK,
               coefficient: Scalar = 1) -> "OperatorSum":
        return cls((ProductChain(coefficient, flavor, tuple(pairs)),))

    def __add__(self, other) -> "OperatorSum":
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return OperatorSum(self.terms + other.terms)

    def __sub__(self, other) -> "OperatorSum":
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return OperatorSum(self.terms + tuple(t.negated() for t in other.terms))

    def __neg__(self) -> "OperatorSum":
        return OperatorSum(tuple(t.negated() for t in self.terms))

    def scale(self, alpha: Scalar) -> "OperatorSum":
        return OperatorSum(tuple(t.scaled(alpha) for t in self.terms))

    def __mul__(self, other) -> "OperatorSum":
        """Concatenation, distributed over both sums."""
        if not isinstance(other, OperatorSum):
            return NotImplemented
        out = []
        for a in self.terms:
            for b in other.terms:
                if a.pairs and b.pairs and a.flavor is not b.flavor:
                    raise FlavorMismatch(
                        f"cannot concatenate {a.render()} with {b.render()}"
                    )
                flavor = a.flavor if a.pairs else b.flavor
                out.append(
                    ProductChain(a.coefficient * b.coefficient, flavor, a.pairs + b.pairs)
                )
        return OperatorSum(tuple(out))

    def apply(self, f: WardSeries, g: WardSeries) -> WardSeries:
        acc = zeros(f.ctx, min(f.order, g.order))
        for t in self.terms:
            acc = acc + t.apply(f, g)
        return acc

    def render(self) -> str:
        if not self.terms:
            return "*0"
        return " [+] ".join(t.render() for t in self.terms)

    def __str__(self) -> str:
        return self.render()


ZERO_OPERATOR = OperatorSum(())
ORDINARY = OperatorSum.single()


def boxplus(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return a + b


def boxminus(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return a - b


def op_scale(alpha: Scalar, a: OperatorSum) -> OperatorSum:
    return a.scale(alpha)


def op_concat(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    return a * b


def _shift_chain(t: ProductChain, di: int, dj: int, append: bool) -> ProductChain:
    if t.pairs and t.flavor is not Flavor.ASTERISK:
        raise FlavorMismatch("shift maps are defined on asterisk chains only")
    pairs = tuple((i + di, j + dj) for i, j in t.pairs)
    if append:
        pairs = pairs + ((1, 0),)
    return ProductChain(t.coefficient, Flavor.ASTERISK, pairs)


def rho(a: OperatorSum) -> OperatorSum:
    """(i, j) -> (i+1, j+1) on every pair; fixes the empty chain."""
    return OperatorSum(tuple(_shift_chain(t, 1, 1, append=False) for t in a.terms))


def sigma(a: OperatorSum) -> OperatorSum:
    """(i, j) -> (i+1, j) on every pair, then append (1, 0)."""
    return OperatorSum(tuple(_shift_chain(t, 1, 0, append=True) for t in a.terms))


@cache
def binomial_operator(n: int, k: int) -> OperatorSum:
    """The operator <n k> from the Pascal-style recurrence; memoized."""
    if n < 0 or not 0 <= k <= n:
        raise KOutOfRange(f"<{n} {k}> needs 0 <= k <= n")
    if k == 0:
        return ORDINARY
    if k == n:
        return OperatorSum.single(tuple((i, 0) for i in range(1, n + 1)))
    return rho(binomial_operator(n - 1, k)) + sigma(binomial_operator(n - 1, k - 1))


def apply_operator(a: OperatorSum, f: WardSeries, g: WardSeries) -> WardSeries:
    return a.apply(f, g)


def extensional_eq(a: OperatorSum, b: OperatorSum, ctx: PsiContext, order: int) -> bool:
    """Compare actions on all monomial pairs x^u, x^v with u + v <= order.

    Bilinearity of every chain action makes those pairs a spanning set for
    series of that order, so agreement here is agreement on everything.
    """
    if a == b:
        return True
    for u in range(order + 1):
        f = monomial(ctx, u, order)
        for v in range(order + 1 - u):
            g = monomial(ctx, v, order)
            if a.apply(f, g) != b.apply(f, g):
                return False
    return True
