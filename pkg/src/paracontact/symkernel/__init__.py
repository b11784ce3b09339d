"""Scalar expression kernel: trees, parser, canonical forms, zero testing."""

from .canonical import (
    SymbolicDivisionByZero,
    UnsupportedExpression,
    canonical,
    expr_simplify,
    is_symbolic_zero,
    simplify,
)
from .expr import (
    ONE,
    ZERO,
    Add,
    Const,
    Div,
    Expr,
    Func,
    InvEntry,
    Mul,
    Neg,
    Pow,
    Sub,
    Sym,
    as_expr,
    cos,
    evaluate,
    exp,
    free_symbols,
    sin,
    subs,
    symbols,
    to_text,
)
from .parse import ParseError, expr_parse
from .zero import (
    DEFAULT_SAMPLER,
    NONZERO,
    NUMERIC,
    SYMBOLIC,
    PoleError,
    SamplerConfig,
    ZeroVerdict,
    expr_is_zero,
)
from .expr import derivative


def expr_diff(e: Expr, v) -> Expr:
    """Partial derivative of ``e`` with respect to coordinate ``v``, simplified."""
    name = v.name if isinstance(v, Sym) else v
    return simplify(derivative(e, name))
