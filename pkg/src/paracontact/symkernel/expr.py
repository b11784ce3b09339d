"""Immutable expression trees over named coordinates.

Nodes compare structurally and hash by structure, so two trees are equal
exactly when they were built the same way. Mathematical equality is the
business of :mod:`paracontact.symkernel.canonical`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

FUNCTIONS = ("sin", "cos", "exp")

# printing precedence
_SUM, _PROD, _UNARY, _POW, _ATOM = 1, 2, 3, 4, 5


class Expr:
    __slots__ = ("_hash", "_canon", "_is_canonical")

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or hash(self) != hash(other):
            return False
        return self._key() == other._key()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((type(self).__name__, self._key()))
            object.__setattr__(self, "_hash", h)
            return h

    def __setattr__(self, name, value):
        raise AttributeError("Expr nodes are immutable")

    def __add__(self, other):
        return Add(self, as_expr(other))

    def __radd__(self, other):
        return Add(as_expr(other), self)

    def __sub__(self, other):
        return Sub(self, as_expr(other))

    def __rsub__(self, other):
        return Sub(as_expr(other), self)

    def __mul__(self, other):
        return Mul(self, as_expr(other))

    def __rmul__(self, other):
        return Mul(as_expr(other), self)

    def __truediv__(self, other):
        return Div(self, as_expr(other))

    def __rtruediv__(self, other):
        return Div(as_expr(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n):
        return Pow(self, n)

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Expr({to_text(self)!r})"


def _init(node, **fields):
    for k, v in fields.items():
        object.__setattr__(node, k, v)


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        _init(self, value=Fraction(value))

    def _key(self):
        return (self.value,)


class Sym(Expr):
    __slots__ = ("name",)

    def __init__(self, name: str):
        _init(self, name=name)

    def _key(self):
        return (self.name,)


class _Binary(Expr):
    __slots__ = ("left", "right")

    def __init__(self, left: Expr, right: Expr):
        _init(self, left=left, right=right)

    def _key(self):
        return (self.left, self.right)


class Add(_Binary):
    __slots__ = ()


class Sub(_Binary):
    __slots__ = ()


class Mul(_Binary):
    __slots__ = ()


class Div(_Binary):
    __slots__ = ()


class Neg(Expr):
    __slots__ = ("arg",)

    def __init__(self, arg: Expr):
        _init(self, arg=arg)

    def _key(self):
        return (self.arg,)


class Pow(Expr):
    __slots__ = ("base", "exponent")

    def __init__(self, base: Expr, exponent: int):
        if isinstance(exponent, Const) and exponent.value.denominator == 1:
            exponent = int(exponent.value)
        if not isinstance(exponent, int) or isinstance(exponent, bool):
            raise TypeError(f"only integer powers are supported, got {exponent!r}")
        _init(self, base=base, exponent=exponent)

    def _key(self):
        return (self.base, self.exponent)


class Func(Expr):
    __slots__ = ("name", "arg")

    def __init__(self, name: str, arg: Expr):
        if name not in FUNCTIONS:
            raise ValueError(f"unknown function {name!r}")
        _init(self, name=name, arg=arg)

    def _key(self):
        return (self.name, self.arg)


class InvEntry(Expr):
    """Entry (i, j) of the pointwise inverse of a square matrix of expressions.

    Used when a matrix is too large for exact adjugate inversion; it is
    evaluated numerically and treated as an opaque atom by the canonicalizer.
    """

    __slots__ = ("matrix", "i", "j")

    def __init__(self, matrix, i: int, j: int):
        matrix = tuple(tuple(as_expr(e) for e in row) for row in matrix)
        _init(self, matrix=matrix, i=i, j=j)

    def _key(self):
        return (self.matrix, self.i, self.j)


ZERO = Const(0)
ONE = Const(1)


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction, Rational)) and not isinstance(value, bool):
        return Const(value)
    if isinstance(value, str):
        from .parse import expr_parse

        return expr_parse(value)
    raise TypeError(f"cannot convert {value!r} to Expr")


def sin(e) -> Expr:
    return Func("sin", as_expr(e))


def cos(e) -> Expr:
    return Func("cos", as_expr(e))


def exp(e) -> Expr:
    return Func("exp", as_expr(e))


def symbols(names: str) -> tuple[Sym, ...]:
    return tuple(Sym(n) for n in names.split())


# ---------------------------------------------------------------- printing

def _level(e: Expr) -> int:
    if isinstance(e, (Add, Sub)):
        return _SUM
    if isinstance(e, (Mul, Div)):
        return _PROD
    if isinstance(e, Neg):
        return _UNARY
    if isinstance(e, Pow):
        return _POW
    if isinstance(e, Const):
        if e.value < 0:
            return _UNARY
        if e.value.denominator != 1:
            return _PROD
    return _ATOM


def _const_text(v: Fraction) -> str:
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def _wrap(e: Expr, needs: bool) -> str:
    s = to_text(e)
    return f"({s})" if needs else s


def to_text(e: Expr) -> str:
    """Render in the expression grammar so that parsing returns the same tree."""
    if isinstance(e, Const):
        return _const_text(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Func):
        return f"{e.name}({to_text(e.arg)})"
    if isinstance(e, Neg):
        a = e.arg
        if isinstance(a, Const) and a.value >= 0:
            return f"-({to_text(a)})"
        return "-" + _wrap(a, _level(a) < _UNARY)
    if isinstance(e, Pow):
        base = _wrap(e.base, _level(e.base) < _ATOM)
        n = e.exponent
        return f"{base}^{n}" if n >= 0 else f"{base}^({n})"
    if isinstance(e, _Binary):
        if isinstance(e, (Add, Sub)):
            lvl, op = _SUM, " + " if isinstance(e, Add) else " - "
        else:
            lvl, op = _PROD, "*" if isinstance(e, Mul) else "/"
        left = _wrap(e.left, _level(e.left) < lvl)
        right = _wrap(e.right, _level(e.right) <= lvl)
        # "2/3" would lex as one rational literal
        if op == "/" and left[-1].isdigit() and right[0].isdigit():
            right = f"({right})"
        return left + op + right
    if isinstance(e, InvEntry):
        rows = "; ".join(", ".join(to_text(c) for c in row) for row in e.matrix)
        return f"inv[{e.i},{e.j}]{{{rows}}}"
    raise TypeError(type(e))


# ------------------------------------------------------------- traversal

def free_symbols(e: Expr) -> frozenset[str]:
    if isinstance(e, Sym):
        return frozenset((e.name,))
    if isinstance(e, Const):
        return frozenset()
    if isinstance(e, _Binary):
        return free_symbols(e.left) | free_symbols(e.right)
    if isinstance(e, (Neg, Func)):
        return free_symbols(e.arg)
    if isinstance(e, Pow):
        return free_symbols(e.base)
    if isinstance(e, InvEntry):
        out = frozenset()
        for row in e.matrix:
            for c in row:
                out |= free_symbols(c)
        return out
    raise TypeError(type(e))


def subs(e: Expr, mapping: dict[str, Expr]) -> Expr:
    """Simultaneous substitution of symbols by expressions."""
    if isinstance(e, Sym):
        return mapping.get(e.name, e)
    if isinstance(e, Const):
        return e
    if isinstance(e, _Binary):
        return type(e)(subs(e.left, mapping), subs(e.right, mapping))
    if isinstance(e, Neg):
        return Neg(subs(e.arg, mapping))
    if isinstance(e, Func):
        return Func(e.name, subs(e.arg, mapping))
    if isinstance(e, Pow):
        return Pow(subs(e.base, mapping), e.exponent)
    if isinstance(e, InvEntry):
        m = tuple(tuple(subs(c, mapping) for c in row) for row in e.matrix)
        return InvEntry(m, e.i, e.j)
    raise TypeError(type(e))


def evaluate(e: Expr, env: dict[str, np.ndarray | float]):
    """Evaluate numerically; env values may be numpy arrays (vectorized)."""
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Sym):
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"no value for symbol {e.name!r}") from None
    if isinstance(e, Add):
        return evaluate(e.left, env) + evaluate(e.right, env)
    if isinstance(e, Sub):
        return evaluate(e.left, env) - evaluate(e.right, env)
    if isinstance(e, Mul):
        return evaluate(e.left, env) * evaluate(e.right, env)
    if isinstance(e, Div):
        with np.errstate(divide="ignore", invalid="ignore"):
            return evaluate(e.left, env) / evaluate(e.right, env)
    if isinstance(e, Neg):
        return -evaluate(e.arg, env)
    if isinstance(e, Pow):
        b = evaluate(e.base, env)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.power(np.asarray(b, dtype=float), e.exponent)
    if isinstance(e, Func):
        with np.errstate(over="ignore", invalid="ignore"):
            return getattr(np, e.name)(evaluate(e.arg, env))
    if isinstance(e, InvEntry):
        n = len(e.matrix)
        vals = [[np.asarray(evaluate(c, env), dtype=float) for c in row] for row in e.matrix]
        shape = np.broadcast_shapes(*(v.shape for row in vals for v in row))
        m = np.empty(shape + (n, n))
        for a in range(n):
            for b in range(n):
                m[..., a, b] = np.broadcast_to(vals[a][b], shape)
        with np.errstate(all="ignore"):
            try:
                inv = np.linalg.inv(m)
            except np.linalg.LinAlgError:
                return np.full(shape, np.nan) if shape else float("nan")
        return inv[..., e.i, e.j]
    raise TypeError(type(e))


def derivative(e: Expr, v: str) -> Expr:
    """Unsimplified partial derivative; see :func:`expr_diff` for the public form."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Sym):
        return ONE if e.name == v else ZERO
    if isinstance(e, Add):
        return Add(derivative(e.left, v), derivative(e.right, v))
    if isinstance(e, Sub):
        return Sub(derivative(e.left, v), derivative(e.right, v))
    if isinstance(e, Mul):
        return Add(Mul(derivative(e.left, v), e.right), Mul(e.left, derivative(e.right, v)))
    if isinstance(e, Div):
        num = Sub(Mul(derivative(e.left, v), e.right), Mul(e.left, derivative(e.right, v)))
        return Div(num, Pow(e.right, 2))
    if isinstance(e, Neg):
        return Neg(derivative(e.arg, v))
    if isinstance(e, Pow):
        n = e.exponent
        if n == 0:
            return ZERO
        return Mul(Mul(Const(n), Pow(e.base, n - 1)), derivative(e.base, v))
    if isinstance(e, Func):
        du = derivative(e.arg, v)
        if e.name == "sin":
            outer = Func("cos", e.arg)
        elif e.name == "cos":
            outer = Neg(Func("sin", e.arg))
        else:
            outer = e
        return Mul(outer, du)
    if isinstance(e, InvEntry):
        # d(M^-1) = -M^-1 (dM) M^-1
        n = len(e.matrix)
        total: Expr = ZERO
        for k in range(n):
            for l in range(n):
                dm = derivative(e.matrix[k][l], v)
                total = Add(total, Mul(Mul(InvEntry(e.matrix, e.i, k), dm), InvEntry(e.matrix, l, e.j)))
        return Neg(total)
    raise TypeError(type(e))
