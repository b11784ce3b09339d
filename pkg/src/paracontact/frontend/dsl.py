"""The session language: declarations of charts, tensors, structures and maps,
followed by check directives.

A statement ends at a newline unless a ``{`` or ``(`` is still open, so
block bodies may span several lines. ``#`` starts a comment.

    manifold R3 coords x y z
    oneform eta on R3 = dz - y*dx
    endo phi on R3 { dx -> dy; dy -> dx + y*dz }
    structure apc S1 = (phi, xi, eta, g)
    check normal S1 via both
    check apc N1 expect fail "eta(xi) = 1"
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from ..gentangent import GenEndo
from ..morphisms import Diffeo
from ..parastruct import APC, GAPC
from ..symkernel import Expr, Sym, expr_diff, expr_parse, simplify, subs
from ..symkernel.canonical import is_symbolic_zero
from ..symkernel.expr import FUNCTIONS, Const, free_symbols
from ..symkernel.parse import ParseError
from ..tensorcalc import Bivector, Chart, Endo, Metric, OneForm, TwoForm, VectorField, combo_text

NAME = r"[A-Za-z_][A-Za-z_0-9]*"
_NAME_RE = re.compile(NAME)

TENSOR_KINDS = ("vectorfield", "oneform", "twoform", "bivector", "metric", "endo")
STRUCTURE_KINDS = ("apc", "gapc")

# directive -> positional slots (keyword or None, accepted declaration kinds)
DIRECTIVES: dict[str, tuple[tuple[str | None, tuple[str, ...]], ...]] = {
    "apc": ((None, ("apc",)),),
    "apcmetric": ((None, ("apc",)),),
    "gapc": ((None, ("apc", "gapc")),),
    "blocks": ((None, ("apc", "gapc")),),
    "induced": ((None, ("apc",)),),
    "normal": ((None, ("apc",)),),
    "equiv": ((None, ("apc",)),),
    "products": ((None, ("apc",)),),
    "compat": ((None, ("apc", "gapc")), ("with", ("metric",))),
    "btransform": ((None, ("apc",)), ("with", ("twoform",))),
    "betatransform": ((None, ("apc",)), ("with", ("bivector",))),
    "morphism": ((None, ("map",)), ("from", ("apc",)), ("to", ("apc",))),
    "family": ((None, ("apc",)), (None, ("apc",))),
    "genmetric": ((None, ("metric",)),),
}
VIA = ("classical", "generalized", "both")


@dataclass(frozen=True)
class Declaration:
    kind: str
    name: str
    value: object
    refs: tuple[str, ...] = ()
    line: int = field(default=0, compare=False)

    @property
    def chart(self) -> Chart:
        if self.kind == "manifold":
            return self.value
        if self.kind == "map":
            return self.value.source
        return self.value.chart


@dataclass(frozen=True)
class Directive:
    check: str
    args: tuple[str, ...]
    via: str | None = None
    # None: expect every report to pass; a tuple: expect failure, and if
    # non-empty, exactly these failing labels
    expect: tuple[str, ...] | None = None
    line: int = field(default=0, compare=False)

    @property
    def text(self) -> str:
        return unparse_directive(self)


@dataclass
class Session:
    declarations: dict[str, Declaration] = field(default_factory=dict)
    directives: list[Directive] = field(default_factory=list)
    name: str = field(default="session", compare=False)

    def get(self, name: str) -> Declaration:
        return self.declarations[name]

    def of_kind(self, *kinds: str) -> list[Declaration]:
        return [d for d in self.declarations.values() if d.kind in kinds]


# ------------------------------------------------------------- scanning

class _Source:
    def __init__(self, text: str):
        # comments become spaces so offsets stay put
        self.text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
        self.starts = [0] + [m.end() for m in re.finditer("\n", self.text)]

    def pos(self, offset: int) -> tuple[int, int]:
        lo, hi = 0, len(self.starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - self.starts[lo] + 1

    def error(self, message: str, offset: int) -> ParseError:
        return ParseError(message, *self.pos(offset))


@dataclass(frozen=True)
class _Piece:
    text: str
    offset: int

    def strip(self) -> _Piece:
        lead = len(self.text) - len(self.text.lstrip())
        return _Piece(self.text.strip(), self.offset + lead)

    def sub(self, start: int, end: int | None = None) -> _Piece:
        return _Piece(self.text[start:end], self.offset + start).strip()


def _statements(src: _Source) -> list[_Piece]:
    out, stack, start = [], [], 0
    text = src.text
    closers = {"}": "{", ")": "("}
    for i, ch in enumerate(text):
        if ch in "{(":
            stack.append((ch, i))
        elif ch in "})":
            if not stack or stack[-1][0] != closers[ch]:
                raise src.error(f"unmatched {ch!r}", i)
            stack.pop()
        elif ch == "\n" and not stack:
            out.append(_Piece(text[start:i], start).strip())
            start = i + 1
    if stack:
        raise src.error(f"unclosed {stack[-1][0]!r}", stack[-1][1])
    out.append(_Piece(text[start:], start).strip())
    return [p for p in out if p.text]


def _split_top(piece: _Piece, seps: str) -> list[_Piece]:
    """Split on separator characters outside parentheses and braces."""
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(piece.text):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch in seps and depth == 0:
            parts.append(piece.sub(start, i))
            start = i + 1
    parts.append(piece.sub(start))
    return parts


# ------------------------------------------------------------- parsing

class _SessionParser:
    def __init__(self, text: str, name: str):
        self.src = _Source(text)
        self.session = Session(name=name)

    def error(self, message: str, piece: _Piece | int) -> ParseError:
        off = piece if isinstance(piece, int) else piece.offset
        return self.src.error(message, off)

    def parse(self) -> Session:
        for st in _statements(self.src):
            m = _NAME_RE.match(st.text)
            if m is None:
                raise self.error(f"expected a keyword, found {st.text[0]!r}", st)
            kw = m.group()
            handler = getattr(self, f"_st_{kw}", None)
            if handler is None:
                raise self.error(f"unknown statement {kw!r}", st)
            handler(st, st.sub(m.end()))
        return self.session

    # -- helpers

    def _name(self, piece: _Piece, what: str) -> str:
        if not re.fullmatch(NAME, piece.text):
            raise self.error(f"expected {what}, found {piece.text!r}", piece)
        return piece.text

    def _declare(self, decl: Declaration, piece: _Piece):
        if decl.name in self.session.declarations:
            first = self.session.declarations[decl.name].line
            raise self.error(f"duplicate name {decl.name!r} (first declared on line {first})", piece)
        self.session.declarations[decl.name] = decl

    def _lookup(self, piece: _Piece, kinds: tuple[str, ...]) -> Declaration:
        name = self._name(piece, "a name")
        d = self.session.declarations.get(name)
        if d is None:
            raise self.error(f"undeclared name {name!r}", piece)
        if d.kind not in kinds:
            raise self.error(f"{name!r} is a {d.kind}, expected {' or '.join(kinds)}", piece)
        return d

    def _expr(self, piece: _Piece, chart: Chart, atoms=None) -> Expr:
        if not piece.text:
            raise self.error("missing expression", piece)
        line, col = self.src.pos(piece.offset)
        return expr_parse(piece.text, chart.coords, atoms=atoms, line=line, column=col)

    def _combination(self, piece: _Piece, chart: Chart, vector: bool) -> list[Expr]:
        """Coefficients of a linear combination of basis symbols."""
        holders = [Sym(f"__basis{i}") for i in range(chart.dim)]
        atoms = {}
        for c, h in zip(chart.coords, holders):
            if vector:
                atoms[f"d/d{c}"] = h
            atoms[f"d{c}"] = h
        e = self._expr(piece, chart, atoms)
        names = {h.name for h in holders}
        coeffs = []
        for h in holders:
            c = simplify(expr_diff(e, h.name))
            if free_symbols(c) & names:
                raise self.error("not linear in the basis elements", piece)
            coeffs.append(c)
        rest = simplify(subs(e, {h.name: Const(0) for h in holders}))
        if not is_symbolic_zero(rest):
            raise self.error(f"term {rest} carries no basis element", piece)
        return coeffs

    def _header(self, rest: _Piece, kw: str) -> tuple[str, Declaration, _Piece, _Piece]:
        """``NAME on CHART`` followed by ``= rhs`` or ``{ body }``."""
        m = re.match(rf"({NAME})\s+on\s+({NAME})\s*", rest.text)
        if m is None:
            raise self.error(f"expected '{kw} NAME on CHART'", rest)
        name = m.group(1)
        chart_decl = self._lookup(rest.sub(m.start(2), m.end(2)), ("manifold",))
        return name, chart_decl, rest.sub(m.start(1), m.end(1)), rest.sub(m.end())

    def _body(self, piece: _Piece) -> list[_Piece]:
        if not (piece.text.startswith("{") and piece.text.endswith("}")):
            raise self.error("expected a block '{ ... }'", piece)
        inner = piece.sub(1, len(piece.text) - 1)
        return [p for p in _split_top(inner, ";\n") if p.text]

    def _coord(self, piece: _Piece, chart: Chart) -> int:
        if piece.text not in chart.coords:
            raise self.error(f"{piece.text!r} is not a coordinate of {chart.name}", piece)
        return chart.coords.index(piece.text)

    # -- statements

    def _st_manifold(self, st: _Piece, rest: _Piece):
        m = re.fullmatch(rf"({NAME})\s+coords((?:\s+{NAME})+)", rest.text)
        if m is None:
            raise self.error("expected 'manifold NAME coords c1 c2 ...'", rest)
        coords = m.group(2).split()
        if len(set(coords)) != len(coords):
            raise self.error("duplicate coordinate name", rest)
        for c in coords:
            if c in FUNCTIONS or c == "d":
                raise self.error(f"{c!r} cannot be a coordinate name", rest)
            if c.startswith("d") and c[1:] in coords:
                raise self.error(f"coordinate {c!r} clashes with the basis 1-form d{c[1:]}", rest)
        chart = Chart(m.group(1), tuple(coords))
        self._declare(Declaration("manifold", chart.name, chart, line=self.src.pos(st.offset)[0]), rest)

    def _linear_decl(self, st: _Piece, rest: _Piece, kw: str):
        name, cd, name_piece, rhs = self._header(rest, kw)
        if not rhs.text.startswith("="):
            raise self.error("expected '='", rhs)
        chart = cd.value
        coeffs = self._combination(rhs.sub(1), chart, vector=kw == "vectorfield")
        cls = VectorField if kw == "vectorfield" else OneForm
        self._declare(Declaration(kw, name, cls(chart, coeffs), (cd.name,), self.src.pos(st.offset)[0]), name_piece)

    def _st_vectorfield(self, st, rest):
        self._linear_decl(st, rest, "vectorfield")

    def _st_oneform(self, st, rest):
        self._linear_decl(st, rest, "oneform")

    def _matrix_decl(self, st: _Piece, rest: _Piece, kw: str):
        name, cd, name_piece, body = self._header(rest, kw)
        chart: Chart = cd.value
        n = chart.dim
        rows: list[list[Expr | None]] = [[None] * n for _ in range(n)]
        sign = 1 if kw == "metric" else -1
        for entry in self._body(body):
            m = re.fullmatch(rf"\(\s*({NAME})\s*,\s*({NAME})\s*\)\s*=(.*)", entry.text, re.S)
            if m is None:
                raise self.error("expected '(ci,cj) = expr'", entry)
            i = self._coord(entry.sub(m.start(1), m.end(1)), chart)
            j = self._coord(entry.sub(m.start(2), m.end(2)), chart)
            value = simplify(self._expr(entry.sub(m.start(3)), chart))
            mirror = simplify(value * sign)
            if i == j and sign < 0:
                if not is_symbolic_zero(value):
                    raise self.error(f"diagonal entry of a {kw} must vanish", entry)
            for (a, b, v) in ((i, j, value), (j, i, mirror)):
                if rows[a][b] is not None and not is_symbolic_zero(simplify(rows[a][b] - v)):
                    raise self.error(f"conflicting entries for ({chart.coords[a]},{chart.coords[b]})", entry)
                rows[a][b] = v
        comps = [[Const(0) if v is None else v for v in r] for r in rows]
        cls = {"twoform": TwoForm, "bivector": Bivector, "metric": Metric}[kw]
        self._declare(Declaration(kw, name, cls(chart, comps), (cd.name,), self.src.pos(st.offset)[0]), name_piece)

    def _st_twoform(self, st, rest):
        self._matrix_decl(st, rest, "twoform")

    def _st_bivector(self, st, rest):
        self._matrix_decl(st, rest, "bivector")

    def _st_metric(self, st, rest):
        self._matrix_decl(st, rest, "metric")

    def _st_endo(self, st: _Piece, rest: _Piece):
        name, cd, name_piece, body = self._header(rest, "endo")
        chart: Chart = cd.value
        cols: list[VectorField | None] = [None] * chart.dim
        for entry in self._body(body):
            m = re.fullmatch(r"(d/d|d)(" + NAME + r")\s*->(.*)", entry.text, re.S)
            if m is None:
                raise self.error("expected 'dc -> combination'", entry)
            i = self._coord(entry.sub(m.start(2), m.end(2)), chart)
            if cols[i] is not None:
                raise self.error(f"image of d/d{chart.coords[i]} given twice", entry)
            cols[i] = VectorField(chart, self._combination(entry.sub(m.start(3)), chart, vector=True))
        cols = [VectorField.zero(chart) if c is None else c for c in cols]
        phi = Endo.from_columns(chart, cols)
        self._declare(Declaration("endo", name, phi, (cd.name,), self.src.pos(st.offset)[0]), name_piece)

    def _st_structure(self, st: _Piece, rest: _Piece):
        m = re.fullmatch(rf"({NAME})\s+({NAME})\s*=\s*\((.*)\)", rest.text, re.S)
        if m is None:
            raise self.error("expected 'structure apc|gapc NAME = (...)'", rest)
        kind, name = m.group(1), m.group(2)
        name_piece = rest.sub(m.start(2), m.end(2))
        parts = _split_top(rest.sub(m.start(3), m.end(3)), ",")
        if kind == "apc":
            slots = [("endo",), ("vectorfield",), ("oneform",), ("metric",)]
            if len(parts) not in (3, 4):
                raise self.error("apc takes (phi, xi, eta) or (phi, xi, eta, g)", rest)
        elif kind == "gapc":
            slots = [("endo",), ("bivector",), ("twoform",), ("vectorfield",), ("oneform",)]
            if len(parts) != 5:
                raise self.error("gapc takes (phi, beta, B, xi, eta)", rest)
        else:
            raise self.error(f"unknown structure kind {kind!r}", rest.sub(m.start(1), m.end(1)))
        decls = [self._lookup(p, s) for p, s in zip(parts, slots)]
        charts = {d.chart for d in decls}
        if len(charts) > 1:
            dims = sorted({c.dim for c in charts})
            what = "dimension mismatch" if len(dims) > 1 else "chart mismatch"
            raise self.error(f"{what}: components of {name} live on {', '.join(sorted(c.name for c in charts))}", rest)
        vals = [d.value for d in decls]
        if kind == "apc":
            value = APC(*vals[:3], vals[3] if len(vals) == 4 else None, name=name)
        else:
            value = GAPC(GenEndo(*vals[:3]), vals[3], vals[4], name=name)
        refs = tuple(d.name for d in decls)
        self._declare(Declaration(kind, name, value, refs, self.src.pos(st.offset)[0]), name_piece)

    def _st_map(self, st: _Piece, rest: _Piece):
        m = re.match(rf"({NAME})\s*:\s*({NAME})\s*->\s*({NAME})\s*", rest.text)
        if m is None:
            raise self.error("expected 'map NAME : CHART -> CHART { ... }'", rest)
        name = m.group(1)
        src = self._lookup(rest.sub(m.start(2), m.end(2)), ("manifold",)).value
        tgt = self._lookup(rest.sub(m.start(3), m.end(3)), ("manifold",)).value
        if src.dim != tgt.dim:
            raise self.error(f"dimension mismatch: {src.name} has {src.dim} coordinates, {tgt.name} has {tgt.dim}", rest)
        found: dict[str, tuple[Expr, ...]] = {}
        for entry in self._body(rest.sub(m.end())):
            km = re.match(r"(forward|inverse)\s*:", entry.text)
            if km is None:
                raise self.error("expected 'forward:' or 'inverse:'", entry)
            key = km.group(1)
            if key in found:
                raise self.error(f"{key} given twice", entry)
            chart = src if key == "forward" else tgt
            comps = _split_top(entry.sub(km.end()), ",")
            if len(comps) != chart.dim:
                raise self.error(f"dimension mismatch: {key} needs {chart.dim} components, got {len(comps)}", entry)
            found[key] = tuple(simplify(self._expr(p, chart)) for p in comps)
        for key in ("forward", "inverse"):
            if key not in found:
                raise self.error(f"map {name} has no {key} components", rest)
        f = Diffeo(name, src, tgt, found["forward"], found["inverse"])
        self._declare(Declaration("map", name, f, (src.name, tgt.name), self.src.pos(st.offset)[0]),
                      rest.sub(m.start(1), m.end(1)))

    def _st_check(self, st: _Piece, rest: _Piece):
        tokens = [
            (mt.group(), rest.offset + mt.start())
            for mt in re.finditer(r'"(?:[^"\\]|\\.)*"|\S+', rest.text)
        ]
        if not tokens:
            raise self.error("expected a check kind", rest)
        kind, off = tokens[0]
        if kind not in DIRECTIVES:
            raise self.error(f"unknown check {kind!r}; expected one of {', '.join(DIRECTIVES)}", off)
        pos = 1
        args = []
        decls = []
        for kw, kinds in DIRECTIVES[kind]:
            if kw is not None:
                if pos >= len(tokens) or tokens[pos][0] != kw:
                    at = tokens[pos][1] if pos < len(tokens) else rest.offset + len(rest.text)
                    raise self.error(f"expected {kw!r}", at)
                pos += 1
            if pos >= len(tokens):
                raise self.error(f"check {kind} needs a {' or '.join(kinds)}", rest.offset + len(rest.text))
            tok, off = tokens[pos]
            decls.append(self._lookup(_Piece(tok, off), kinds))
            args.append(tok)
            pos += 1
        via = None
        if pos < len(tokens) and tokens[pos][0] == "via":
            if kind != "normal":
                raise self.error("'via' applies to 'check normal' only", tokens[pos][1])
            if pos + 1 >= len(tokens) or tokens[pos + 1][0] not in VIA:
                raise self.error(f"expected one of {', '.join(VIA)} after 'via'", tokens[pos][1])
            via = tokens[pos + 1][0]
            pos += 2
        expect = None
        if pos < len(tokens) and tokens[pos][0] == "expect":
            if pos + 1 >= len(tokens) or tokens[pos + 1][0] != "fail":
                raise self.error("expected 'fail' after 'expect'", tokens[pos][1])
            labels = []
            for tok, off in tokens[pos + 2:]:
                if not tok.startswith('"'):
                    raise self.error("expected a quoted item label", off)
                labels.append(json.loads(tok))
            expect = tuple(labels)
            pos = len(tokens)
        if pos < len(tokens):
            raise self.error(f"unexpected {tokens[pos][0]!r}", tokens[pos][1])
        self._check_charts(kind, decls, rest)
        self.session.directives.append(Directive(kind, tuple(args), via, expect, self.src.pos(st.offset)[0]))

    def _check_charts(self, kind: str, decls: list[Declaration], rest: _Piece):
        if kind == "morphism":
            f, s1, s2 = (d.value for d in decls)
            ok = s1.chart == f.source and s2.chart == f.target
        else:
            ok = len({d.chart for d in decls}) == 1
        if not ok:
            raise self.error(f"chart mismatch between the arguments of check {kind}", rest)


def parse_session(text: str, name: str = "session") -> Session:
    """Parse session text; raises ParseError with line and column."""
    return _SessionParser(text, name).parse()


# ------------------------------------------------------------- printing

def _unparse_decl(d: Declaration) -> str:
    v = d.value
    if d.kind == "manifold":
        return f"manifold {v.name} coords {' '.join(v.coords)}"
    chart = d.refs[0] if d.refs else ""
    coords = v.chart.coords if hasattr(v, "chart") else ()
    if d.kind == "vectorfield":
        return f"vectorfield {d.name} on {chart} = {combo_text(v.comps, [f'd/d{c}' for c in coords])}"
    if d.kind == "oneform":
        return f"oneform {d.name} on {chart} = {combo_text(v.comps, [f'd{c}' for c in coords])}"
    if d.kind in ("twoform", "bivector", "metric"):
        n = len(coords)
        entries = [
            f"({coords[i]},{coords[j]}) = {v.comps[i][j]}"
            for i in range(n)
            for j in range(i if d.kind == "metric" else i + 1, n)
            if not is_symbolic_zero(v.comps[i][j])
        ]
        return f"{d.kind} {d.name} on {chart} {{ {'; '.join(entries)} }}"
    if d.kind == "endo":
        n = len(coords)
        entries = []
        for j in range(n):
            col = [v.comps[i][j] for i in range(n)]
            if all(is_symbolic_zero(c) for c in col):
                continue
            entries.append(f"d{coords[j]} -> {combo_text(col, [f'd{c}' for c in coords])}")
        return f"endo {d.name} on {chart} {{ {'; '.join(entries)} }}"
    if d.kind in STRUCTURE_KINDS:
        return f"structure {d.kind} {d.name} = ({', '.join(d.refs)})"
    if d.kind == "map":
        fw = ", ".join(str(e) for e in v.forward)
        inv = ", ".join(str(e) for e in v.inverse)
        return f"map {d.name} : {v.source.name} -> {v.target.name} {{ forward: {fw}; inverse: {inv} }}"
    raise ValueError(f"cannot print a {d.kind}")


def unparse_directive(d: Directive) -> str:
    parts = ["check", d.check]
    for (kw, _), a in zip(DIRECTIVES[d.check], d.args):
        if kw is not None:
            parts.append(kw)
        parts.append(a)
    if d.via is not None:
        parts += ["via", d.via]
    if d.expect is not None:
        parts += ["expect", "fail"] + [json.dumps(lbl) for lbl in d.expect]
    return " ".join(parts)


def unparse_session(s: Session) -> str:
    lines = [_unparse_decl(d) for d in s.declarations.values()]
    lines += [unparse_directive(d) for d in s.directives]
    return "\n".join(lines) + "\n"


__all__ = [
    "Declaration", "Directive", "Session", "DIRECTIVES", "ParseError",
    "parse_session", "unparse_session", "unparse_directive",
]
