"""Recursive-descent parser for scalar expressions.

Grammar (``^`` binds tighter than unary minus, which binds tighter than
``*``/``/``)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' exponent)?
    exponent := INT | '-' INT | '(' '-'? INT ')'
    atom   := NUMBER | NAME | FUNC '(' expr ')' | '(' expr ')'

``p/q`` written without spaces between two integers is a rational literal,
so ``1/2*x`` is ``(1/2)*x``. A minus sign directly in front of a number that
is not raised to a power is folded into the literal.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .expr import FUNCTIONS, Add, Const, Div, Expr, Func, Mul, Neg, Pow, Sub, Sym


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<vbasis>d/d[A-Za-z_][A-Za-z_0-9]*)
  | (?P<number>\d+\.\d+|\d+/\d+|\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
    """,
    re.VERBOSE,
)


def tokenize(text: str, line: int = 1, column: int = 1):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, column + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), column + pos))
        pos = m.end()
    out.append(("end", "", column + pos))
    return out


class _Parser:
    def __init__(self, text, allowed, atoms, line, column):
        self.toks = tokenize(text, line, column)
        self.i = 0
        self.allowed = allowed
        self.atoms = atoms or {}
        self.line = line

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def expect(self, value):
        t = self.peek()
        if t[1] != value:
            self.error(f"expected {value!r}, found {t[1] or 'end of input'!r}")
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.peek()[1] == "-":
            self.take()
            if self.peek()[0] == "number" and self.peek(1)[1] != "^":
                return Const(-_number(self.take()[1]))
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            base = Pow(base, self.exponent())
        return base

    def exponent(self) -> int:
        paren = self.peek()[1] == "("
        if paren:
            self.take()
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "number" or not t[1].isdigit():
            self.error("exponent must be an integer", t)
        if paren:
            self.expect(")")
        return sign * int(t[1])

    def atom(self) -> Expr:
        t = self.take()
        kind, text = t[0], t[1]
        if kind == "number":
            return Const(_number(text))
        if kind == "vbasis":
            if text in self.atoms:
                return self.atoms[text]
            self.error(f"unknown identifier {text!r}", t)
        if kind == "name":
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(text, arg)
            if text in self.atoms:
                return self.atoms[text]
            if self.allowed is not None and text not in self.allowed:
                self.error(f"unknown identifier {text!r}", t)
            return Sym(text)
        if text == "(":
            e = self.expr()
            self.expect(")")
            return e
        self.error(f"unexpected {text or 'end of input'!r}", t)


def _number(text: str) -> Fraction:
    return Fraction(text)


def expr_parse(text: str, allowed=None, *, atoms=None, line: int = 1, column: int = 1) -> Expr:
    """Parse ``text`` into an expression tree.

    ``allowed`` restricts plain identifiers to a set of coordinate names;
    ``atoms`` maps extra identifiers (e.g. basis symbols in the session
    language) to ready-made expressions.
    """
    return _Parser(text, None if allowed is None else set(allowed), atoms, line, column).parse()
