"""The generalized tangent bundle TM + T*M over a single chart.

Sections are pairs ``X + alpha``. Endomorphisms act on the stacked
component vector ``(X^1..X^n, alpha_1..alpha_n)``. In that basis a block
endomorphism with blocks ``(phi, beta, B)`` has the matrix

    [[ phi        , beta^ij ],
     [ B_ji       , -phi^T  ]]

because ``beta(alpha)^i = sum_j beta^ij alpha_j`` and
``B(X)_j = sum_i X^i B_ij`` (first slot), while ``(phi^* alpha)_j =
sum_i phi_ij alpha_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .reports import CheckReport, info_item, residual_item
from .symkernel import ZERO, Expr, as_expr, simplify
from .symkernel.canonical import is_symbolic_zero
from .symkernel.zero import DEFAULT_SAMPLER, SamplerConfig
from .tensorcalc import (
    Bivector,
    Chart,
    ChartMismatch,
    DegenerateMetric,
    dual_endo_apply,
    Endo,
    Matrix,
    Metric,
    OneForm,
    TwoForm,
    VectorField,
    _same_chart,
    exterior_derivative,
    identity_matrix,
    lie_bracket,
    lie_derivative_oneform,
    mat_add,
    mat_mul,
    mat_neg,
    mat_sub,
    transpose,
    zero_matrix,
)

HALF = as_expr(Fraction(1, 2))


class SkewnessViolation(ValueError):
    """A 2n x 2n matrix does not have the g0-skew block shape."""


# ---------------------------------------------------------------- sections

@dataclass(frozen=True)
class GenSection:
    vf: VectorField
    form: OneForm

    def __post_init__(self):
        if self.vf.chart != self.form.chart:
            raise ChartMismatch("vector and form parts live on different charts")

    @property
    def chart(self) -> Chart:
        return self.vf.chart

    @classmethod
    def zero(cls, chart: Chart) -> GenSection:
        return cls(VectorField.zero(chart), OneForm.zero(chart))

    @classmethod
    def of(cls, x=None, a=None) -> GenSection:
        """``X + 0``, ``0 + alpha`` or ``X + alpha``."""
        chart = (x or a).chart
        return cls(x if x is not None else VectorField.zero(chart), a if a is not None else OneForm.zero(chart))

    @classmethod
    def from_vector(cls, chart: Chart, comps) -> GenSection:
        n = chart.dim
        return cls(VectorField(chart, comps[:n]), OneForm(chart, comps[n:]))

    @property
    def comps(self) -> tuple[Expr, ...]:
        return self.vf.comps + self.form.comps

    def __add__(self, other):
        return GenSection(self.vf + other.vf, self.form + other.form)

    def __sub__(self, other):
        return GenSection(self.vf - other.vf, self.form - other.form)

    def __neg__(self):
        return GenSection(-self.vf, -self.form)

    def scale(self, f) -> GenSection:
        return GenSection(self.vf.scale(f), self.form.scale(f))

    def __rmul__(self, f):
        return self.scale(f)

    def is_zero(self) -> bool:
        return self.vf.is_zero() and self.form.is_zero()

    def __str__(self):
        parts = [str(t) for t in (self.vf, self.form) if not t.is_zero()]
        return " + ".join(parts) or "0"


def frame_sections(chart: Chart) -> list[tuple[str, GenSection]]:
    """The 2n frame sections ``d/dx^i + 0`` then ``0 + dx^i``."""
    out = []
    for i, c in enumerate(chart.coords):
        out.append((f"d/d{c}", GenSection.of(x=VectorField.basis(chart, i))))
    for i, c in enumerate(chart.coords):
        out.append((f"d{c}", GenSection.of(a=OneForm.basis(chart, i))))
    return out


def frame_pairs(chart: Chart, ordered: bool = True):
    fr = frame_sections(chart)
    for i, (la, a) in enumerate(fr):
        for j, (lc, c) in enumerate(fr):
            if ordered or i < j:
                yield f"({la}, {lc})", a, c


def g0_pair(A: GenSection, C: GenSection) -> Expr:
    """Neutral pairing 1/2 (alpha(Y) + gamma(X))."""
    _same_chart(A, C)
    return simplify(HALF * (A.form(C.vf) + C.form(A.vf)))


def courant_bracket(A: GenSection, C: GenSection) -> GenSection:
    """[X,Y] + L_X gamma - L_Y alpha + 1/2 d(alpha(Y) - gamma(X))."""
    chart = _same_chart(A, C)
    X, a = A.vf, A.form
    Y, c = C.vf, C.form
    form = (
        lie_derivative_oneform(X, c)
        - lie_derivative_oneform(Y, a)
        + exterior_derivative(HALF * (a(Y) - c(X)), chart)
    )
    return GenSection(lie_bracket(X, Y), form)


# ----------------------------------------------------------- operators

def block_matrix(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    top = [tuple(ra) + tuple(rb) for ra, rb in zip(a, b)]
    bot = [tuple(rc) + tuple(rd) for rc, rd in zip(c, d)]
    return tuple(top + bot)


def split_blocks(m: Matrix, n: int) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    a = tuple(tuple(r[:n]) for r in m[:n])
    b = tuple(tuple(r[n:]) for r in m[:n])
    c = tuple(tuple(r[:n]) for r in m[n:])
    d = tuple(tuple(r[n:]) for r in m[n:])
    return a, b, c, d


@dataclass(frozen=True)
class GenOp:
    """Arbitrary endomorphism of TM + T*M given by its 2n x 2n matrix."""

    chart: Chart
    matrix: Matrix

    def __post_init__(self):
        m = tuple(tuple(simplify(as_expr(v)) for v in row) for row in self.matrix)
        k = 2 * self.chart.dim
        if len(m) != k or any(len(r) != k for r in m):
            raise ValueError(f"generalized operator on {self.chart.name} needs a {k}x{k} matrix")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls, chart: Chart) -> GenOp:
        return cls(chart, identity_matrix(2 * chart.dim))

    @classmethod
    def zero(cls, chart: Chart) -> GenOp:
        return cls(chart, zero_matrix(2 * chart.dim))

    @classmethod
    def from_blocks(cls, chart: Chart, a, b, c, d) -> GenOp:
        return cls(chart, block_matrix(a, b, c, d))

    @property
    def blocks(self):
        return split_blocks(self.matrix, self.chart.dim)

    def apply(self, A: GenSection) -> GenSection:
        _same_chart(self, A)
        v = A.comps
        out = []
        for row in self.matrix:
            acc: Expr = ZERO
            for m, x in zip(row, v):
                if is_symbolic_zero(m) or is_symbolic_zero(x):
                    continue
                acc = acc + m * x
            out.append(acc)
        return GenSection.from_vector(self.chart, out)

    __call__ = apply

    def __matmul__(self, other: GenOp) -> GenOp:
        other = as_op(other)
        _same_chart(self, other)
        return GenOp(self.chart, mat_mul(self.matrix, other.matrix))

    def __add__(self, other):
        other = as_op(other)
        return GenOp(self.chart, mat_add(self.matrix, other.matrix))

    def __sub__(self, other):
        other = as_op(other)
        return GenOp(self.chart, mat_sub(self.matrix, other.matrix))

    def __neg__(self):
        return GenOp(self.chart, mat_neg(self.matrix))

    def scale(self, f) -> GenOp:
        f = as_expr(f)
        return GenOp(self.chart, tuple(tuple(f * v for v in r) for r in self.matrix))

    def __rmul__(self, f):
        return self.scale(f)

    def is_zero(self) -> bool:
        return all(is_symbolic_zero(v) for r in self.matrix for v in r)

    def __str__(self):
        return "[" + "; ".join(", ".join(str(v) for v in r) for r in self.matrix) + "]"


@dataclass(frozen=True)
class GenEndo:
    """g0-skew endomorphism with blocks (phi, beta, B); lower right is -phi^*."""

    phi: Endo
    beta: Bivector
    b: TwoForm

    def __post_init__(self):
        _same_chart(self.phi, self.beta, self.b)

    @property
    def chart(self) -> Chart:
        return self.phi.chart

    @classmethod
    def diag(cls, phi: Endo) -> GenEndo:
        return cls(phi, Bivector.zero(phi.chart), TwoForm.zero(phi.chart))

    @property
    def matrix(self) -> Matrix:
        return block_matrix(self.phi.comps, self.beta.comps, transpose(self.b.comps), mat_neg(transpose(self.phi.comps)))

    @property
    def op(self) -> GenOp:
        return GenOp(self.chart, self.matrix)

    def apply(self, A: GenSection) -> GenSection:
        """(X, alpha) -> (phi X + beta(alpha), B(X) - phi^* alpha)."""
        _same_chart(self, A)
        return GenSection(
            self.phi.apply(A.vf) + self.beta.apply(A.form),
            self.b.apply(A.vf) - dual_endo_apply(self.phi, A.form),
        )

    __call__ = apply

    def __matmul__(self, other) -> GenOp:
        return self.op @ other

    def __add__(self, other):
        if isinstance(other, GenEndo):
            return GenEndo(self.phi + other.phi, self.beta + other.beta, self.b + other.b)
        return self.op + other

    def __sub__(self, other):
        if isinstance(other, GenEndo):
            return GenEndo(self.phi - other.phi, self.beta - other.beta, self.b - other.b)
        return self.op - other

    def scale(self, f) -> GenEndo:
        return GenEndo(self.phi.scale(f), self.beta.scale(f), self.b.scale(f))

    def __rmul__(self, f):
        return self.scale(f)

    @classmethod
    def from_op(cls, op: GenOp) -> GenEndo:
        """Re-extract blocks; raises SkewnessViolation if the shape is wrong."""
        chart = op.chart
        a, b, c, d = op.blocks
        bad = []
        if not _is_zero_matrix(mat_add(d, transpose(a))):
            bad.append("lower-right block is not -(upper-left)^*")
        if not _is_zero_matrix(mat_add(b, transpose(b))):
            bad.append("upper-right block is not skew")
        if not _is_zero_matrix(mat_add(c, transpose(c))):
            bad.append("lower-left block is not skew")
        if bad:
            raise SkewnessViolation("; ".join(bad))
        return cls(Endo(chart, a), Bivector(chart, b), TwoForm(chart, transpose(c)))

    def __str__(self):
        return f"phi={self.phi} beta={self.beta} B={self.b}"


def as_op(x) -> GenOp:
    if isinstance(x, GenOp):
        return x
    if isinstance(x, (GenEndo, GenMetric)):
        return x.op
    raise TypeError(f"cannot use {type(x).__name__} as a generalized operator")


def _is_zero_matrix(m) -> bool:
    return all(is_symbolic_zero(v) for r in m for v in r)


def op_difference(P, Q) -> GenOp:
    return as_op(P) - as_op(Q)


# ---------------------------------------------------------- B and beta

def exp_b(B: TwoForm) -> GenOp:
    """e^B = ((I, 0), (B, I)), B acting as X -> B(X, .)."""
    n = B.chart.dim
    return GenOp.from_blocks(B.chart, identity_matrix(n), zero_matrix(n), transpose(B.comps), identity_matrix(n))


def exp_beta(beta: Bivector) -> GenOp:
    """e^beta = ((I, beta), (0, I))."""
    n = beta.chart.dim
    return GenOp.from_blocks(beta.chart, identity_matrix(n), beta.comps, zero_matrix(n), identity_matrix(n))


def b_transform(Phi: GenEndo, B2: TwoForm) -> GenEndo:
    """e^B Phi e^-B by literal block-matrix conjugation."""
    _same_chart(Phi, B2)
    return GenEndo.from_op(exp_b(B2) @ Phi.op @ exp_b(-B2))


def beta_transform(Phi: GenEndo, beta2: Bivector) -> GenEndo:
    """e^beta Phi e^-beta by literal block-matrix conjugation."""
    _same_chart(Phi, beta2)
    return GenEndo.from_op(exp_beta(beta2) @ Phi.op @ exp_beta(-beta2))


def _maps(Phi: GenEndo):
    """Matrices of phi, beta, B (as X -> B(X,.)) and phi^*."""
    return Phi.phi.comps, Phi.beta.comps, transpose(Phi.b.comps), transpose(Phi.phi.comps)


def b_transform_closed(Phi: GenEndo, B2: TwoForm, printed: bool = False) -> GenOp:
    """Closed-form blocks of the B-transform.

    With distinct transforming form ``B2`` and structure block ``B``:
    ((phi - beta B2, beta), (B2 phi + phi^* B2 + B - B2 beta B2, -phi^* + B2 beta)).
    ``printed`` uses the single-letter version where ``B2`` and ``B`` are
    identified, which only makes sense when ``Phi.b == B2``.
    """
    phi, beta, Bs, phis = _maps(Phi)
    B = transpose(B2.comps)
    Bphi = Bs if not printed else B
    mm = mat_mul
    return GenOp.from_blocks(
        Phi.chart,
        mat_sub(phi, mm(beta, B)),
        beta,
        mat_sub(mat_add(mat_add(mm(B, phi), mm(phis, B)), Bphi), mm(mm(B, beta), B)),
        mat_add(mat_neg(phis), mm(B, beta)),
    )


def beta_transform_closed(Phi: GenEndo, beta2: Bivector, printed: bool = False) -> GenOp:
    """Closed-form blocks of the beta-transform.

    Upper right is -phi beta2 - beta2 phi^* + beta - beta2 B beta2. The
    ``printed`` variant identifies ``beta2`` with ``beta`` and ends the
    upper-right block in ``- beta B phi``; it disagrees with conjugation
    in general and is kept so that the disagreement can be shown.
    """
    phi, beta, Bs, phis = _maps(Phi)
    b2 = beta2.comps
    mm = mat_mul
    if printed:
        b_own = b2
        tail = mm(mm(b2, Bs), phi)
    else:
        b_own = beta
        tail = mm(mm(b2, Bs), b2)
    return GenOp.from_blocks(
        Phi.chart,
        mat_add(phi, mm(b2, Bs)),
        mat_sub(mat_add(mat_neg(mat_add(mm(phi, b2), mm(b2, phis))), b_own), tail),
        Bs,
        mat_sub(mat_neg(phis), mm(Bs, b2)),
    )


# ------------------------------------------------------------ metrics

@dataclass(frozen=True)
class GenMetric:
    """G = ((phi, sharp_g1), (flat_g2, phi^*))."""

    phi: Endo
    g1: Metric
    g2: Metric

    def __post_init__(self):
        _same_chart(self.phi, self.g1, self.g2)

    @property
    def chart(self) -> Chart:
        return self.phi.chart

    @property
    def op(self) -> GenOp:
        return GenOp.from_blocks(
            self.chart, self.phi.comps, self.g1.inverse, self.g2.comps, transpose(self.phi.comps)
        )

    def apply(self, A: GenSection) -> GenSection:
        return self.op.apply(A)

    __call__ = apply


def gen_metric_from_riemannian(g: Metric) -> GenMetric:
    if not g.is_nondegenerate():
        raise DegenerateMetric(f"metric on {g.chart.name} is degenerate")
    return GenMetric(Endo.zero(g.chart), g, g)


def check_gen_metric(G: GenMetric, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    chart = G.chart
    op = G.op
    rep = CheckReport("generalized metric")
    frames = frame_sections(chart)
    rep.add(residual_item(
        "g0(GA, GC) = g0(A, C)",
        ((lbl, g0_pair(op(A), op(C)) - g0_pair(A, C)) for lbl, A, C in frame_pairs(chart)),
        sampler,
    ))
    sq = op @ op
    rep.add(residual_item("G^2 = I", ((lbl, sq(A) - A) for lbl, A in frames), sampler))
    phi = G.phi
    target = mat_sub(identity_matrix(chart.dim), mat_mul(G.g1.inverse, G.g2.comps))
    rep.add(residual_item(
        "phi^2 = I - sharp_g1 flat_g2",
        [("matrix", Endo(chart, mat_sub((phi @ phi).comps, target)))],
        sampler,
    ))
    for name, g in (("g1", G.g1), ("g2", G.g2)):
        skew = mat_add(mat_mul(g.comps, phi.comps), mat_mul(transpose(phi.comps), g.comps))
        rep.add(residual_item(
            f"{name}(X, phi Y) + {name}(phi X, Y) = 0", [("matrix", Endo(chart, skew))], sampler
        ))
    for name, g in (("g1", G.g1), ("g2", G.g2)):
        sig = g.signature(sampler)
        if sig is None:
            note = "signature varies over the sample points"
        else:
            definite = sig[1] == 0
            note = f"signature {sig}; {'positive definite' if definite else 'not positive definite'}"
        rep.add(info_item(f"{name} signature", note))
    return rep


def is_g0_orthogonal(op: GenOp, sampler: SamplerConfig = DEFAULT_SAMPLER):
    chart = op.chart
    return residual_item(
        "g0(TA, TC) = g0(A, C)",
        ((lbl, g0_pair(op(A), op(C)) - g0_pair(A, C)) for lbl, A, C in frame_pairs(chart)),
        sampler,
    )


def g0_skew_item(Phi, sampler: SamplerConfig = DEFAULT_SAMPLER, label: str = "g0-skew"):
    op = as_op(Phi)
    return residual_item(
        label,
        ((lbl, g0_pair(op(A), C) + g0_pair(A, op(C))) for lbl, A, C in frame_pairs(op.chart)),
        sampler,
    )


__all__ = [
    "GenSection", "GenOp", "GenEndo", "GenMetric", "SkewnessViolation",
    "frame_sections", "frame_pairs", "g0_pair", "courant_bracket",
    "exp_b", "exp_beta", "b_transform", "beta_transform",
    "b_transform_closed", "beta_transform_closed",
    "gen_metric_from_riemannian", "check_gen_metric", "is_g0_orthogonal", "g0_skew_item",
]
