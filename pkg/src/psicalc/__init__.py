"""Exact calculus on factorial-normalized truncated power series.

A sequence context supplies the base sequence, its factorials and
binomials, and the weight kernel; series over a context support weighted
products, a shift derivative, and exact division; the operator layer
builds the binomial-operator triangle and the derivative rules that tie
it all together.
"""

from .coefficients import (
    Q,
    PolyQ,
    RatFuncQ,
    Scalar,
    embed_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
)
from .errors import (
    BadIndices,
    BadSpec,
    BoundExceeded,
    ContextMismatch,
    DivisionByZero,
    FlavorMismatch,
    IndexOutOfBound,
    KernelUndefined,
    KOutOfRange,
    NonInvertible,
    OrderZero,
    ParseError,
    PsiCalcError,
    VariantMismatch,
)
from .psi_context import PsiContext, get_context
from .series import (
    WardSeries,
    add,
    chain_mul,
    constant,
    cos_psi,
    diag_l,
    diag_m,
    divide,
    e_psi,
    first_difference,
    fontane_mul,
    make_series,
    monomial,
    mul_ordinary,
    psi_derivative,
    scalar_mul,
    sin_psi,
    star_mul,
    zeros,
)
from .operator_algebra import (
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
from .calculus import (
    RuleReport,
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

__version__ = "0.1.0"

__all__ = [
    "Q",
    "PolyQ",
    "RatFuncQ",
    "Scalar",
    "embed_rational",
    "format_scalar",
    "parse_rational",
    "parse_scalar",
    "PsiCalcError",
    "VariantMismatch",
    "DivisionByZero",
    "IndexOutOfBound",
    "KOutOfRange",
    "KernelUndefined",
    "BadSpec",
    "BoundExceeded",
    "ContextMismatch",
    "BadIndices",
    "OrderZero",
    "FlavorMismatch",
    "ParseError",
    "NonInvertible",
    "PsiContext",
    "get_context",
    "WardSeries",
    "make_series",
    "zeros",
    "constant",
    "monomial",
    "e_psi",
    "sin_psi",
    "cos_psi",
    "add",
    "scalar_mul",
    "mul_ordinary",
    "fontane_mul",
    "star_mul",
    "chain_mul",
    "psi_derivative",
    "diag_m",
    "diag_l",
    "divide",
    "first_difference",
    "Flavor",
    "ProductChain",
    "OperatorSum",
    "ORDINARY",
    "ZERO_OPERATOR",
    "boxplus",
    "boxminus",
    "op_scale",
    "op_concat",
    "rho",
    "sigma",
    "binomial_operator",
    "apply_operator",
    "extensional_eq",
    "RuleReport",
    "product_rule_asterisk",
    "product_rule_star",
    "product_rule_ordinary",
    "product_rule_chain",
    "product_rule_boxplus",
    "general_leibniz",
    "general_leibniz_report",
    "quotient_derivative",
    "quotient_rule_report",
    "quotient_q_display_reports",
    "reciprocal_derivative",
    "reciprocal_rule_report",
]
