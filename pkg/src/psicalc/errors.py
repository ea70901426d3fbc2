"""Exception hierarchy.

Everything raised on purpose by this package derives from PsiCalcError, so
callers can catch one type at the boundary.  Where a builtin exception has
the right meaning it is mixed in as well: DivisionByZero is a
ZeroDivisionError, VariantMismatch is a TypeError, and so on.  Plain
rational scalars are stdlib numbers, so dividing those by zero raises the
bare builtin; code that needs the library type catches ZeroDivisionError,
which covers both.
"""


class PsiCalcError(Exception):
    """Base class for all errors raised by psicalc."""


class VariantMismatch(PsiCalcError, TypeError):
    """Arithmetic mixed a plain rational with a rational function of q.

    The two scalar variants never auto-promote: embedding has to be asked
    for explicitly (see coefficients.embed_rational), otherwise a symbolic
    q could silently collapse to a number.
    """


class DivisionByZero(PsiCalcError, ZeroDivisionError):
    """Division by the zero scalar."""


class IndexOutOfBound(PsiCalcError, IndexError):
    """A table lookup asked for an index beyond the context's bound."""


class KOutOfRange(PsiCalcError, ValueError):
    """Binomial index k outside 0..n."""


class KernelUndefined(PsiCalcError, ValueError):
    """Kernel F(n, k) requested outside its domain 0 <= k < n."""


class BadSpec(PsiCalcError, ValueError):
    """A sequence spec string failed to parse or failed validation."""


class BoundExceeded(PsiCalcError, ValueError):
    """An operation needs table entries beyond the context's bound."""


class ContextMismatch(PsiCalcError, ValueError):
    """Two operands were built over different contexts."""


class BadIndices(PsiCalcError, ValueError):
    """A weighted product was given an index pair with j >= i or j < 0."""


class OrderZero(PsiCalcError, ValueError):
    """Derivative of a series of order 0 (no room to shift down)."""


class NonInvertible(PsiCalcError, ZeroDivisionError):
    """Series division where the divisor's constant term is zero."""


class FlavorMismatch(PsiCalcError, ValueError):
    """Operator combination across the two product flavors."""


class ParseError(PsiCalcError, ValueError):
    """Malformed serialized series, scalar, or operator input."""
