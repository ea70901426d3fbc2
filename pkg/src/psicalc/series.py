"""Truncated series with sequence-factorial normalization.

A series here is f = sum_n a_n x^n / s_n! truncated at a fixed order, with
exact scalar coefficients over one context.  The stored numbers are the
a_n; all products below are convolutions in that normalization, so the
generalized binomial C(n, k) shows up in every product term.

Three product families live side by side:

* the ordinary product, c_n = sum_k C(n,k) a_k b_{n-k};
* weighted products, which scale the (n, k) term by kernel values
  F(n+i, k+j) (asterisk flavor) or F(n+i, n-k+j) (star flavor), with a
  whole chain of index pairs multiplying one kernel factor each;
* the diagonal maps, which scale a_n by a single kernel value and appear
  as the one-sided unit actions of the weighted products.

Index pairs (i, j) always satisfy 0 <= j < i, which keeps every kernel
lookup inside its domain.  The empty chain is the ordinary product.

Binary operations demand the *same context object* on both sides and
truncate to the smaller order.  The derivative maps a_n to a_{n+1} (one
shift down), dropping the order by one.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from typing import Iterable, Sequence

from .coefficients import (
    RatFuncQ,
    Scalar,
    _norm_rat,
    scalar_from_json,
    scalar_to_json,
)
from .errors import (
    BadIndices,
    BoundExceeded,
    ContextMismatch,
    DivisionByZero,
    IndexOutOfBound,
    NonInvertible,
    OrderZero,
    ParseError,
    PsiCalcError,
    VariantMismatch,
)
from .psi_context import PsiContext, get_context

Pair = tuple[int, int]


def _check_scalar(ctx: PsiContext, s) -> Scalar:
    if ctx.symbolic:
        if not isinstance(s, RatFuncQ):
            raise VariantMismatch(
                f"context {ctx.spec_string()!r} needs rational-function scalars, got {s!r}"
            )
        return s
    if not isinstance(s, numbers.Rational):
        raise VariantMismatch(
            f"context {ctx.spec_string()!r} needs plain rational scalars, got {s!r}"
        )
    return _norm_rat(s)


def check_pair(pair) -> Pair:
    try:
        i, j = pair
    except (TypeError, ValueError) as exc:
        raise BadIndices(f"index pair must be (i, j), got {pair!r}") from exc
    if not (isinstance(i, int) and isinstance(j, int)):
        raise BadIndices(f"index pair must be integers, got {pair!r}")
    if not 0 <= j < i:
        raise BadIndices(f"index pair needs 0 <= j < i, got ({i}, {j})")
    return (i, j)


class WardSeries:
    """Truncated series over one context; immutable."""

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx: PsiContext, coeffs: Iterable[Scalar]):
        c = tuple(_check_scalar(ctx, x) for x in coeffs)
        if not c:
            raise BadIndices("a series needs at least the constant coefficient")
        if len(c) - 1 > ctx.bound:
            raise BoundExceeded(
                f"order {len(c) - 1} exceeds the context bound {ctx.bound}"
            )
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("WardSeries is immutable")

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def order(self) -> int:
        return len(self._c) - 1

    def __eq__(self, other) -> bool:
        if isinstance(other, WardSeries):
            return self.ctx is other.ctx and self._c == other._c
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        return f"WardSeries({self.ctx.spec_string()!r}, {[str(x) for x in self._c]})"

    def __bool__(self) -> bool:
        return any(self._c)

    # -- linear structure ---------------------------------------------------

    def _peer(self, other) -> "WardSeries":
        if not isinstance(other, WardSeries):
            raise ContextMismatch(f"expected a series, got {other!r}")
        if other.ctx is not self.ctx:
            raise ContextMismatch(
                "operands live over different contexts "
                f"({self.ctx.spec_string()!r} vs {other.ctx.spec_string()!r})"
            )
        return other

    def __add__(self, other) -> "WardSeries":
        o = self._peer(other)
        m = min(len(self._c), len(o._c))
        return WardSeries(self.ctx, [self._c[n] + o._c[n] for n in range(m)])

    def __sub__(self, other) -> "WardSeries":
        o = self._peer(other)
        m = min(len(self._c), len(o._c))
        return WardSeries(self.ctx, [self._c[n] - o._c[n] for n in range(m)])

    def __neg__(self) -> "WardSeries":
        return WardSeries(self.ctx, [-x for x in self._c])

    def scale(self, alpha: Scalar) -> "WardSeries":
        alpha = _check_scalar(self.ctx, alpha)
        return WardSeries(self.ctx, [alpha * x for x in self._c])

    def __mul__(self, other):
        if isinstance(other, WardSeries):
            return self.chain(other, ())
        return self.scale(other)

    def __rmul__(self, alpha):
        return self.scale(alpha)

    def __truediv__(self, other):
        if isinstance(other, WardSeries):
            return self.divide(other)
        alpha = _check_scalar(self.ctx, other)
        if not alpha:
            raise DivisionByZero("series divided by the zero scalar")
        inv = self.ctx.one / alpha if self.ctx.symbolic else _norm_rat(Fraction(1) / alpha)
        return self.scale(inv)

    def truncate(self, order: int) -> "WardSeries":
        if order < 0 or order > self.order:
            raise IndexOutOfBound(f"cannot truncate order {self.order} to {order}")
        if order == self.order:
            return self
        return WardSeries(self.ctx, self._c[: order + 1])

    # -- products -------------------------------------------------------------

    def chain(self, other, pairs: Sequence[Pair], star: bool = False) -> "WardSeries":
        """Weighted product with one kernel factor per index pair.

        Empty ``pairs`` is the ordinary product.  Asterisk flavor weights
        the (n, k) term by prod F(n+i, k+j); star flavor by
        prod F(n+i, n-k+j).
        """
        o = self._peer(other)
        chain = tuple(check_pair(p) for p in pairs)
        ctx = self.ctx
        m = min(len(self._c), len(o._c)) - 1
        if chain:
            need = m + max(i for i, _ in chain)
            if need > ctx.bound:
                raise BoundExceeded(
                    f"order {m} with shift {need - m} exceeds bound {ctx.bound}"
                )
        a, b = self._c, o._c
        binom = ctx._binom
        kern = ctx._kernel
        zero = ctx.zero
        out = []
        for n in range(m + 1):
            row = binom[n]
            acc = zero
            for k in range(n + 1):
                x = a[k]
                if not x:
                    continue
                y = b[n - k]
                if not y:
                    continue
                t = row[k] * x * y
                base = (n - k) if star else k
                for i, j in chain:
                    t = t * kern[n + i][base + j]
                acc = acc + t
            out.append(acc)
        return WardSeries(ctx, out)

    def fontane(self, other, i: int, j: int) -> "WardSeries":
        return self.chain(other, ((i, j),))

    def star(self, other, i: int, j: int) -> "WardSeries":
        return self.chain(other, ((i, j),), star=True)

    # -- diagonal maps ----------------------------------------------------------

    def diag_m(self, i: int, j: int) -> "WardSeries":
        """Scale a_n by F(n+i, n+j); the right-unit action of the weighted product."""
        i, j = check_pair((i, j))
        ctx = self.ctx
        if self.order + i > ctx.bound:
            raise BoundExceeded(f"order {self.order} with shift {i} exceeds bound {ctx.bound}")
        kern = ctx._kernel
        return WardSeries(
            ctx, [x * kern[n + i][n + j] for n, x in enumerate(self._c)]
        )

    def diag_l(self, i: int, j: int) -> "WardSeries":
        """Scale a_n by F(n+i, j); the left-unit action.  j = 0 is the identity."""
        i, j = check_pair((i, j))
        ctx = self.ctx
        if self.order + i > ctx.bound:
            raise BoundExceeded(f"order {self.order} with shift {i} exceeds bound {ctx.bound}")
        kern = ctx._kernel
        return WardSeries(ctx, [x * kern[n + i][j] for n, x in enumerate(self._c)])

    # -- derivative and division ---------------------------------------------------

    def derivative(self, times: int = 1) -> "WardSeries":
        if times < 0:
            raise BadIndices("derivative count must be nonnegative")
        f = self
        for _ in range(times):
            if f.order == 0:
                raise OrderZero("derivative of an order-0 series")
            f = WardSeries(f.ctx, f._c[1:])
        return f

    def divide(self, other) -> "WardSeries":
        """Forward substitution against the product convolution."""
        o = self._peer(other)
        b = o._c
        if not b[0]:
            raise NonInvertible("divisor has zero constant term")
        ctx = self.ctx
        symbolic = ctx.symbolic
        inv = ctx.one / b[0] if symbolic else Fraction(1) / b[0]
        m = min(len(self._c), len(b)) - 1
        a = self._c
        binom = ctx._binom
        c: list = []
        for n in range(m + 1):
            s = a[n]
            row = binom[n]
            for k in range(n):
                ck = c[k]
                if not ck:
                    continue
                bk = b[n - k]
                if not bk:
                    continue
                s = s - row[k] * ck * bk
            s = s * inv
            c.append(s if symbolic else _norm_rat(s))
        return WardSeries(ctx, c)

    # -- substitutions ----------------------------------------------------------------

    def dilate(self, factor: Scalar) -> "WardSeries":
        """Coefficientwise x -> factor * x, i.e. a_n -> factor^n a_n."""
        factor = _check_scalar(self.ctx, factor)
        out = []
        power = self.ctx.one
        for x in self._c:
            out.append(x * power)
            power = power * factor
        return WardSeries(self.ctx, out)

    def q_dilate(self, times: int = 1) -> "WardSeries":
        """x -> q^times x, for q-analog contexts only."""
        q = self.ctx.q_scalar
        if q is None:
            raise PsiCalcError(
                f"q dilation needs a q-analog context, not {self.ctx.spec_string()!r}"
            )
        factor = q**times if self.ctx.symbolic else _norm_rat(Fraction(q) ** times)
        return self.dilate(factor)

    # -- serialization -----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "psi": self.ctx.spec_string(),
            "order": self.order,
            "coeffs": [scalar_to_json(x) for x in self._c],
        }

    @classmethod
    def from_json_dict(cls, data, ctx: PsiContext | None = None, headroom: int = 0) -> "WardSeries":
        if not isinstance(data, dict):
            raise ParseError(f"series must be a JSON object, got {data!r}")
        missing = {"psi", "order", "coeffs"} - set(data)
        if missing:
            raise ParseError(f"series object lacks keys {sorted(missing)}")
        spec = data["psi"]
        order = data["order"]
        coeffs = data["coeffs"]
        if not isinstance(spec, str):
            raise ParseError(f"'psi' must be a spec string, got {spec!r}")
        if not isinstance(order, int) or isinstance(order, bool) or order < 0:
            raise ParseError(f"'order' must be a nonnegative integer, got {order!r}")
        if not isinstance(coeffs, list) or len(coeffs) != order + 1:
            raise ParseError("'coeffs' must be a list of length order + 1")
        if ctx is None:
            if spec.startswith("custom:"):
                ctx = get_context(spec, 0)
            else:
                ctx = get_context(spec, max(order + headroom, 1))
            if ctx.bound < order:
                raise ParseError(
                    f"sequence {spec!r} is too short for a series of order {order}"
                )
        elif ctx.spec_string() != spec:
            raise ContextMismatch(
                f"series carries spec {spec!r} but context is {ctx.spec_string()!r}"
            )
        return cls(ctx, [scalar_from_json(x, ctx.symbolic) for x in coeffs])


# -- constructors ------------------------------------------------------------


def make_series(ctx: PsiContext, values: Iterable) -> WardSeries:
    """Build a series, lifting plain rationals into the context's variant."""
    coeffs = []
    for v in values:
        if isinstance(v, numbers.Rational):
            coeffs.append(ctx.from_rational(v))
        else:
            coeffs.append(v)
    return WardSeries(ctx, coeffs)


def zeros(ctx: PsiContext, order: int) -> WardSeries:
    return WardSeries(ctx, [ctx.zero] * (order + 1))


def constant(ctx: PsiContext, value, order: int) -> WardSeries:
    if isinstance(value, numbers.Rational):
        value = ctx.from_rational(value)
    out = [ctx.zero] * (order + 1)
    out[0] = value
    return WardSeries(ctx, out)


def monomial(ctx: PsiContext, n: int, order: int) -> WardSeries:
    """The series x^n, i.e. a_n = s_n! and every other coefficient zero."""
    if n < 0 or n > order:
        raise IndexOutOfBound(f"monomial degree {n} outside 0..{order}")
    out = [ctx.zero] * (order + 1)
    out[n] = ctx.psi_factorial(n)
    return WardSeries(ctx, out)


def e_psi(ctx: PsiContext, order: int) -> WardSeries:
    """The exponential: every a_n = 1."""
    return WardSeries(ctx, [ctx.one] * (order + 1))


def sin_psi(ctx: PsiContext, order: int) -> WardSeries:
    """a_{2m+1} = (-1)^m, even coefficients zero."""
    out = []
    for n in range(order + 1):
        if n % 2:
            out.append(ctx.from_int(-1 if (n // 2) % 2 else 1))
        else:
            out.append(ctx.zero)
    return WardSeries(ctx, out)


def cos_psi(ctx: PsiContext, order: int) -> WardSeries:
    """a_{2m} = (-1)^m, odd coefficients zero."""
    out = []
    for n in range(order + 1):
        if n % 2:
            out.append(ctx.zero)
        else:
            out.append(ctx.from_int(-1 if (n // 2) % 2 else 1))
    return WardSeries(ctx, out)


# -- functional aliases --------------------------------------------------------
#
# The method spellings above are what the rest of the package uses; these
# names give the same operations as plain functions.


def add(f: WardSeries, g: WardSeries) -> WardSeries:
    return f + g


def scalar_mul(alpha, f: WardSeries) -> WardSeries:
    return f.scale(alpha)


def mul_ordinary(f: WardSeries, g: WardSeries) -> WardSeries:
    return f.chain(g, ())


def fontane_mul(f: WardSeries, g: WardSeries, i: int, j: int) -> WardSeries:
    return f.fontane(g, i, j)


def star_mul(f: WardSeries, g: WardSeries, i: int, j: int) -> WardSeries:
    return f.star(g, i, j)


def chain_mul(f: WardSeries, g: WardSeries, chain, star: bool = False) -> WardSeries:
    """Apply a chain given as a pair list or as an operator-algebra chain.

    A chain object brings its own flavor and scalar coefficient; for a bare
    pair list the ``star`` flag picks the flavor and the coefficient is 1.
    """
    pairs = getattr(chain, "pairs", None)
    if pairs is None:
        return f.chain(g, tuple(chain), star=star)
    flavor = getattr(chain, "flavor", None)
    is_star = getattr(flavor, "value", None) == "star"
    out = f.chain(g, pairs, star=is_star)
    coeff = getattr(chain, "coefficient", 1)
    if coeff == 1:
        return out
    if f.ctx.symbolic and isinstance(coeff, numbers.Rational):
        from .coefficients import embed_rational

        coeff = embed_rational(coeff)
    return out.scale(coeff)


def psi_derivative(f: WardSeries, times: int = 1) -> WardSeries:
    return f.derivative(times)


def diag_m(f: WardSeries, i: int, j: int) -> WardSeries:
    return f.diag_m(i, j)


def diag_l(f: WardSeries, i: int, j: int) -> WardSeries:
    return f.diag_l(i, j)


def divide(f: WardSeries, g: WardSeries) -> WardSeries:
    return f.divide(g)


def first_difference(f: WardSeries, g: WardSeries) -> int | None:
    """Index of the first differing coefficient, or None when equal.

    Series of different orders that agree on the shared prefix differ at
    the first index past it.
    """
    if f.ctx is not g.ctx:
        raise ContextMismatch("cannot compare series over different contexts")
    m = min(len(f._c), len(g._c))
    for n in range(m):
        if f._c[n] != g._c[n]:
            return n
    if len(f._c) != len(g._c):
        return m
    return None
