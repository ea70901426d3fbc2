"""Sequence contexts: the base sequence and every derived table.

A context fixes the base sequence s_0, s_1, ... up to a bound chosen at
construction and precomputes, eagerly and by definition:

* the sequence values themselves (s_0 = 0, s_1 = 1, s_n != 0 required),
* the running factorials  s_n! = s_1 * s_2 * ... * s_n  (s_0! = 1),
* the generalized binomials  C(n, k) = s_n! / (s_k! * s_{n-k}!),
* the weight kernel  F(n, k) = (s_n - s_k) / s_{n-k}  for 0 <= k < n.

F(n, n) is deliberately left undefined: the defining relation
s_n - s_k = F(n, k) * s_{n-k} says nothing at k = n, and every consumer in
this package only ever needs k < n.

Built-in sequence kinds:

* ``natural``    s_n = n; the classical tables.
* ``q``          s_n = 1 + q + ... + q^(n-1) with q a formal symbol;
                 scalars are rational functions of q.
* ``q=<value>``  same sequence with q specialized to an exact rational.
* ``fib``        s_n = n-th Fibonacci number.
* ``custom:[..]`` explicit rational values, validated on construction.

All scalars in one context share a single variant; see coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .coefficients import (
    Q,
    PolyQ,
    RatFuncQ,
    Scalar,
    _norm_rat,
    embed_rational,
    parse_rational,
)
from .errors import BadSpec, IndexOutOfBound, KernelUndefined, KOutOfRange


def _rat_div(a, b):
    return _norm_rat(Fraction(a) / b)


class PsiContext:
    """Immutable bundle of one base sequence and its derived tables."""

    __slots__ = (
        "kind",
        "bound",
        "symbolic",
        "q_scalar",
        "psi",
        "fact",
        "_binom",
        "_kernel",
        "zero",
        "one",
        "_spec",
    )

    def __init__(self, kind: str, bound: int, psi: tuple, *, q_scalar=None, spec: str):
        if bound < 1:
            raise BadSpec("bound must be at least 1")
        if len(psi) != bound + 1:
            raise BadSpec("sequence length does not match bound")
        symbolic = isinstance(psi[1], RatFuncQ) if bound >= 1 else False
        if psi[0] != 0:
            raise BadSpec("sequence must start at 0")
        if psi[1] != 1:
            raise BadSpec("sequence must have value 1 at index 1")
        for n in range(1, bound + 1):
            if not psi[n]:
                raise BadSpec(f"sequence value at index {n} is zero")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "bound", bound)
        object.__setattr__(self, "symbolic", symbolic)
        object.__setattr__(self, "q_scalar", q_scalar)
        object.__setattr__(self, "psi", tuple(psi))
        object.__setattr__(self, "_spec", spec)
        if symbolic:
            object.__setattr__(self, "zero", RatFuncQ.from_rational(0))
            object.__setattr__(self, "one", RatFuncQ.from_rational(1))
            self._build_tables_symbolic()
        else:
            object.__setattr__(self, "zero", 0)
            object.__setattr__(self, "one", 1)
            self._build_tables_rational()

    def __setattr__(self, name, value):
        raise AttributeError("PsiContext is immutable")

    def __repr__(self) -> str:
        return f"PsiContext({self._spec!r}, bound={self.bound})"

    # -- table construction ------------------------------------------------

    def _build_tables_rational(self) -> None:
        psi, bound = self.psi, self.bound
        fact = [1]
        for n in range(1, bound + 1):
            fact.append(_norm_rat(fact[-1] * psi[n]))
        binom = []
        for n in range(bound + 1):
            row = [1]
            for k in range(1, n + 1):
                row.append(_rat_div(fact[n], fact[k] * fact[n - k]))
            binom.append(row)
        kernel = []
        for n in range(bound + 1):
            kernel.append([_rat_div(psi[n] - psi[k], psi[n - k]) for k in range(n)])
        object.__setattr__(self, "fact", tuple(fact))
        object.__setattr__(self, "_binom", binom)
        object.__setattr__(self, "_kernel", kernel)

    def _build_tables_symbolic(self) -> None:
        # work on bare polynomials (all divisions below are exact) and wrap
        # the finished tables; this keeps construction off the gcd path
        bound = self.bound
        psi_p = [PolyQ((1,) * n) for n in range(bound + 1)]
        fact_p = [PolyQ((1,))]
        for n in range(1, bound + 1):
            fact_p.append(fact_p[-1] * psi_p[n])
        binom_p = []
        for n in range(bound + 1):
            # C(n, k) = C(n, k-1) * s_{n-k+1} / s_k, same ratio of factorials
            row = [PolyQ((1,))]
            for k in range(1, n + 1):
                row.append((row[-1] * psi_p[n - k + 1]).exact_div(psi_p[k]))
            binom_p.append(row)
        kernel_p = []
        for n in range(bound + 1):
            kernel_p.append(
                [(psi_p[n] - psi_p[k]).exact_div(psi_p[n - k]) for k in range(n)]
            )
        wrap = RatFuncQ._raw
        one = PolyQ((1,))
        object.__setattr__(self, "fact", tuple(wrap(p, one) for p in fact_p))
        object.__setattr__(self, "_binom", [[wrap(p, one) for p in row] for row in binom_p])
        object.__setattr__(self, "_kernel", [[wrap(p, one) for p in row] for row in kernel_p])

    # -- constructors --------------------------------------------------------

    @classmethod
    def natural(cls, bound: int) -> "PsiContext":
        return cls("natural", bound, tuple(range(bound + 1)), spec="natural")

    @classmethod
    def q_symbolic(cls, bound: int) -> "PsiContext":
        psi = tuple(RatFuncQ._raw(PolyQ((1,) * n), PolyQ((1,))) for n in range(bound + 1))
        return cls("q", bound, psi, q_scalar=Q, spec="q")

    @classmethod
    def q_value(cls, q0, bound: int) -> "PsiContext":
        q0 = _norm_rat(Fraction(q0))
        psi = [0]
        for _ in range(bound):
            psi.append(_norm_rat(psi[-1] * q0 + 1))
        return cls("q", bound, tuple(psi), q_scalar=q0, spec=f"q={q0}")

    @classmethod
    def fibonacci(cls, bound: int) -> "PsiContext":
        psi = [0, 1]
        while len(psi) <= bound:
            psi.append(psi[-1] + psi[-2])
        return cls("fib", bound, tuple(psi[: bound + 1]), spec="fib")

    @classmethod
    def custom(cls, values) -> "PsiContext":
        vals = tuple(_norm_rat(Fraction(v)) for v in values)
        if len(vals) < 2:
            raise BadSpec("custom sequence needs at least the first two values")
        spec = "custom:[" + ",".join(str(v) for v in vals) + "]"
        return cls("custom", len(vals) - 1, vals, spec=spec)

    @classmethod
    def from_spec(cls, spec: str, bound: int | None = None) -> "PsiContext":
        s = spec.strip()
        if s in ("natural", "fib") or s == "q" or s.startswith("q="):
            if bound is None:
                raise BadSpec(f"spec {spec!r} needs an explicit bound")
            if s == "natural":
                return cls.natural(bound)
            if s == "fib":
                return cls.fibonacci(bound)
            if s == "q":
                return cls.q_symbolic(bound)
            try:
                q0 = parse_rational(s[2:])
            except Exception as exc:
                raise BadSpec(f"bad q value in spec {spec!r}") from exc
            return cls.q_value(q0, bound)
        if s.startswith("custom:"):
            body = s[len("custom:") :].strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise BadSpec(f"custom spec must carry a [..] list: {spec!r}")
            items = [x.strip() for x in body[1:-1].split(",") if x.strip()]
            if not items:
                raise BadSpec("custom sequence list is empty")
            try:
                values = [parse_rational(x) for x in items]
            except Exception as exc:
                raise BadSpec(f"bad value in custom spec: {spec!r}") from exc
            ctx = cls.custom(values)
            if bound is not None and bound > ctx.bound:
                raise BadSpec(
                    f"custom sequence has bound {ctx.bound}, cannot serve bound {bound}"
                )
            return ctx
        raise BadSpec(f"unknown sequence spec {spec!r}")

    # -- accessors -----------------------------------------------------------

    def spec_string(self) -> str:
        return self._spec

    def _check_index(self, n: int) -> None:
        if not 0 <= n <= self.bound:
            raise IndexOutOfBound(f"index {n} outside 0..{self.bound}")

    def psi_value(self, n: int) -> Scalar:
        self._check_index(n)
        return self.psi[n]

    def psi_factorial(self, n: int) -> Scalar:
        self._check_index(n)
        return self.fact[n]

    def psi_binomial(self, n: int, k: int) -> Scalar:
        self._check_index(n)
        if not 0 <= k <= n:
            raise KOutOfRange(f"k={k} outside 0..{n}")
        return self._binom[n][k]

    def fontane_kernel(self, n: int, k: int) -> Scalar:
        """F(n, k) with s_n - s_k = F(n, k) * s_{n-k}; needs 0 <= k < n."""
        self._check_index(n)
        if not 0 <= k < n:
            raise KernelUndefined(f"F({n}, {k}) undefined; need 0 <= k < n")
        return self._kernel[n][k]

    # -- scalar helpers --------------------------------------------------------

    def from_int(self, value: int) -> Scalar:
        return embed_rational(value) if self.symbolic else value

    def from_rational(self, value) -> Scalar:
        value = _norm_rat(Fraction(value))
        return embed_rational(value) if self.symbolic else value

    @property
    def is_classical(self) -> bool:
        """True when the base sequence is 0, 1, 2, 3, ... up to the bound."""
        return all(self.psi[n] == n for n in range(self.bound + 1))


@lru_cache(maxsize=None)
def get_context(spec: str, bound: int) -> PsiContext:
    """Shared, cached context per (spec, bound).

    Binary series operations require both operands to live over the same
    context object, so callers that want interoperable series should come
    through here rather than constructing contexts ad hoc.
    """
    return PsiContext.from_spec(spec, bound)
