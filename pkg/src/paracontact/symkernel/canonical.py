"""Canonical forms: expanded polynomials over coordinates and sin/cos/exp atoms.

A monomial is a triple ``(coords, funcs, exparg)``:

* ``coords``: sorted ``((name, power), ...)``
* ``funcs``: sorted ``(((kind, argkey), power), ...)`` with kind ``sin``/``cos``
* ``exparg``: key of the polynomial argument of the single merged exponential,
  ``()`` when absent (``exp(u)*exp(v)`` is stored as ``exp(u+v)``)

Reductions applied while multiplying: ``sin(u)^2 -> 1 - cos(u)^2`` (so every
monomial carries sin to power at most one), sign normalization of trig
arguments (``sin(-u) = -sin(u)``, ``cos(-u) = cos(u)``), and ``exp(0) = 1``.

Quotients are kept as ``Rat(num, den)``. Denominators are not reduced by a
polynomial gcd, so a quotient's form is not unique, but ``num == 0`` is still
an exact zero certificate.
"""

from __future__ import annotations

import hashlib
from fractions import Fraction

from .expr import (
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
    to_text,
)


class UnsupportedExpression(ValueError):
    pass


class SymbolicDivisionByZero(ZeroDivisionError):
    pass


ONE_MONO = ((), (), ())

# opaque atoms (numeric inverse entries) are stored as pseudo-coordinates
_OPAQUE: dict[str, Expr] = {}


def _opaque_name(node: InvEntry) -> str:
    digest = hashlib.sha1(to_text(node).encode()).hexdigest()[:12]
    name = f"~inv{digest}"
    _OPAQUE.setdefault(name, node)
    return name


class Poly:
    __slots__ = ("terms", "_key")

    def __init__(self, terms: dict):
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._key = None

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple(sorted(self.terms.items()))
        return self._key

    def __eq__(self, other):
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Poly({to_text(poly_to_expr(self))!r})"

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> Fraction | None:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and ONE_MONO in self.terms:
            return self.terms[ONE_MONO]
        return None

    def leading(self) -> tuple:
        return self.key[0]

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def scale(self, c) -> Poly:
        c = Fraction(c)
        if c == 0:
            return Poly({})
        return Poly({m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: Poly) -> Poly:
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for m, c in _mono_mul(m1, m2).items():
                    out[m] = out.get(m, 0) + c * c1 * c2
        return Poly(out)


def poly_const(c) -> Poly:
    return Poly({ONE_MONO: Fraction(c)})


def poly_sym(name: str) -> Poly:
    return Poly({(((name, 1),), (), ()): Fraction(1)})


_KEY_POLYS: dict[tuple, Poly] = {}


def _from_key(key: tuple) -> Poly:
    p = _KEY_POLYS.get(key)
    if p is None:
        p = Poly(dict(key))
        _KEY_POLYS[key] = p
    return p


def _merge(a: tuple, b: tuple) -> dict:
    out = dict(a)
    for k, p in b:
        out[k] = out.get(k, 0) + p
    return {k: p for k, p in out.items() if p != 0}


def _exp_add(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    s = _from_key(a) + _from_key(b)
    return s.key if s.terms else ()


def _mono_mul(m1: tuple, m2: tuple) -> dict:
    if m1 == ONE_MONO:
        return {m2: Fraction(1)}
    if m2 == ONE_MONO:
        return {m1: Fraction(1)}
    coords = _merge(m1[0], m2[0])
    funcs = _merge(m1[1], m2[1])
    exparg = _exp_add(m1[2], m2[2])
    return _reduce(coords, funcs, exparg)


def _reduce(coords: dict, funcs: dict, exparg: tuple) -> dict:
    for (kind, arg), p in funcs.items():
        if kind == "sin" and p >= 2:
            # sin^p = sin^(p-2) * (1 - cos^2)
            rest = dict(funcs)
            if p == 2:
                del rest[(kind, arg)]
            else:
                rest[(kind, arg)] = p - 2
            out = dict(_reduce(coords, rest, exparg))
            with_cos = dict(rest)
            with_cos[("cos", arg)] = with_cos.get(("cos", arg), 0) + 2
            for m, c in _reduce(coords, with_cos, exparg).items():
                out[m] = out.get(m, 0) - c
            return out
    mono = (tuple(sorted(coords.items())), tuple(sorted(funcs.items())), exparg)
    return {mono: Fraction(1)}


def _make_func(kind: str, arg: Poly) -> Poly:
    if kind == "exp":
        if arg.is_zero():
            return poly_const(1)
        return Poly({((), (), arg.key): Fraction(1)})
    if arg.is_zero():
        return poly_const(0 if kind == "sin" else 1)
    sign = 1
    if arg.leading()[1] < 0:
        arg = -arg
        sign = -1 if kind == "sin" else 1
    return Poly({((), (((kind, arg.key), 1),), ()): Fraction(sign)})


# ------------------------------------------------------------ quotients

class Rat:
    """num / den with den a nonzero polynomial."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        self.num = num
        self.den = den if den is not None else poly_const(1)

    @staticmethod
    def of(num: Poly, den: Poly | None = None) -> Rat:
        if den is None:
            return Rat(num)
        return _normalize(num, den)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.constant() == 1

    def __eq__(self, other):
        return isinstance(other, Rat) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other: Rat) -> Rat:
        if self.den == other.den:
            if self.is_poly():
                return Rat(self.num + other.num)
            return _normalize(self.num + other.num, self.den)
        return _normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> Rat:
        return Rat(-self.num, self.den)

    def __sub__(self, other: Rat) -> Rat:
        return self + (-other)

    def __mul__(self, other: Rat) -> Rat:
        if self.is_poly() and other.is_poly():
            return Rat(self.num * other.num)
        return _normalize(self.num * other.num, self.den * other.den)

    def inverse(self) -> Rat:
        if self.num.is_zero():
            raise SymbolicDivisionByZero("division by an expression whose canonical form is 0")
        return _normalize(self.den, self.num)

    def __truediv__(self, other: Rat) -> Rat:
        return self * other.inverse()

    def __pow__(self, n: int) -> Rat:
        if n < 0:
            return self.inverse() ** (-n)
        out = Rat(poly_const(1))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def _normalize(num: Poly, den: Poly) -> Rat:
    if den.is_zero():
        raise SymbolicDivisionByZero("division by an expression whose canonical form is 0")
    if num.is_zero():
        return Rat(Poly({}))
    c = den.constant()
    if c is not None:
        return Rat(num.scale(1 / c))
    if len(den.terms) == 1:
        ((mono, coef),) = den.terms.items()
        num = num.scale(1 / coef)
        coords, funcs, exparg = mono
        if exparg:
            num = num * _make_func("exp", -_from_key(exparg))
        # cancel common coordinate / function powers
        cd = dict(coords)
        fd = dict(funcs)
        for atoms, idx in ((cd, 0), (fd, 1)):
            for atom in list(atoms):
                low = min(dict(m[idx]).get(atom, 0) for m in num.terms)
                take = min(low, atoms[atom])
                if take:
                    atoms[atom] -= take
                    if not atoms[atom]:
                        del atoms[atom]
                    new = {}
                    for m, v in num.terms.items():
                        part = dict(m[idx])
                        part[atom] -= take
                        if not part[atom]:
                            del part[atom]
                        parts = list(m)
                        parts[idx] = tuple(sorted(part.items()))
                        new[tuple(parts)] = v
                    num = Poly(new)
        rest = (tuple(sorted(cd.items())), tuple(sorted(fd.items())), ())
        if rest == ONE_MONO:
            return Rat(num)
        return Rat(num, Poly({rest: Fraction(1)}))
    lead = den.leading()[1]
    num, den = num.scale(1 / lead), den.scale(1 / lead)
    if len(num.terms) == len(den.terms) and num.terms.keys() == den.terms.keys():
        ratio = num.terms[den.leading()[0]]
        if num == den.scale(ratio):
            return Rat(poly_const(ratio))
    return Rat(num, den)


# -------------------------------------------------------- tree <-> canonical

def canonical(e: Expr) -> Rat:
    """Canonical rational form of an expression tree (cached on the node)."""
    cached = getattr(e, "_canon", None)
    if cached is not None:
        return cached
    r = _canonical(e)
    object.__setattr__(e, "_canon", r)
    return r


def _canonical(e: Expr) -> Rat:
    if isinstance(e, Const):
        return Rat(poly_const(e.value))
    if isinstance(e, Sym):
        return Rat(poly_sym(e.name))
    if isinstance(e, Add):
        return canonical(e.left) + canonical(e.right)
    if isinstance(e, Sub):
        return canonical(e.left) - canonical(e.right)
    if isinstance(e, Mul):
        return canonical(e.left) * canonical(e.right)
    if isinstance(e, Div):
        return canonical(e.left) / canonical(e.right)
    if isinstance(e, Neg):
        return -canonical(e.arg)
    if isinstance(e, Pow):
        return canonical(e.base) ** e.exponent
    if isinstance(e, Func):
        arg = canonical(e.arg)
        if not arg.is_poly():
            raise UnsupportedExpression(f"{e.name} of a quotient is outside the atom set: {to_text(e)}")
        return Rat(_make_func(e.name, arg.num))
    if isinstance(e, InvEntry):
        return Rat(poly_sym(_opaque_name(e)))
    raise TypeError(type(e))


def _atom_power(atom: Expr, p: int) -> Expr:
    return atom if p == 1 else Pow(atom, p)


def _mono_factors(mono: tuple) -> list[Expr]:
    coords, funcs, exparg = mono
    out = []
    for name, p in coords:
        atom = _OPAQUE.get(name) or Sym(name)
        out.append(_atom_power(atom, p))
    for (kind, argkey), p in funcs:
        out.append(_atom_power(Func(kind, poly_to_expr(_from_key(argkey))), p))
    if exparg:
        out.append(Func("exp", poly_to_expr(_from_key(exparg))))
    return out


def _product(factors: list[Expr]) -> Expr:
    acc = factors[0]
    for f in factors[1:]:
        acc = Mul(acc, f)
    return acc


def poly_to_expr(p: Poly) -> Expr:
    if p.is_zero():
        return Const(0)
    acc: Expr | None = None
    for mono, c in p.key:
        factors = _mono_factors(mono)
        mag = abs(c)
        if acc is None:
            if not factors:
                acc = Const(c)
            elif mag == 1:
                if c < 0:
                    factors[0] = Neg(factors[0])
                acc = _product(factors)
            else:
                acc = _product([Const(c)] + factors)
            continue
        if not factors:
            term = Const(mag)
        elif mag == 1:
            term = _product(factors)
        else:
            term = _product([Const(mag)] + factors)
        acc = Add(acc, term) if c > 0 else Sub(acc, term)
    return acc


def rat_to_expr(r: Rat) -> Expr:
    num = poly_to_expr(r.num)
    if r.is_poly():
        return num
    return Div(num, poly_to_expr(r.den))


def expr_simplify(e: Expr) -> Expr:
    """Return the canonical tree for ``e``.

    The result is fully expanded with rational coefficients and monomials in
    a fixed lexicographic order; ``simplify(simplify(e))`` is ``simplify(e)``.
    """
    if getattr(e, "_is_canonical", False):
        return e
    r = canonical(e)
    out = rat_to_expr(r)
    object.__setattr__(out, "_canon", r)
    object.__setattr__(out, "_is_canonical", True)
    return out


simplify = expr_simplify


def is_symbolic_zero(e: Expr) -> bool:
    return canonical(e).is_zero()


def max_coefficient(r: Rat) -> Fraction:
    return max((abs(c) for c in r.num.terms.values()), default=Fraction(0))
