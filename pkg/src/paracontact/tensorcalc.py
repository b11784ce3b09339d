"""Coordinate tensor fields on a single chart and the Lie-Cartan calculus.

Conventions used throughout:

* ``Endo`` components ``m[i][j]`` are the i-th component of ``phi(d/dx^j)``.
* ``d`` and ``wedge`` carry no 1/2: ``(d alpha)_ij = d_i alpha_j - d_j alpha_i``
  and ``(a ^ b)_ij = a_i b_j - a_j b_i``.
* Every constructor simplifies its components, so stored components are
  canonical trees.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .symkernel import ONE, ZERO, Expr, InvEntry, Sym, as_expr, evaluate, expr_diff, simplify
from .symkernel.canonical import is_symbolic_zero
from .symkernel.expr import Add, Const, Neg, Sub, derivative
from .symkernel.zero import DEFAULT_SAMPLER, SamplerConfig, sample_points

Matrix = tuple[tuple[Expr, ...], ...]

SYMBOLIC_INVERSE_LIMIT = 4


class ChartMismatch(ValueError):
    pass


class DegenerateMetric(ValueError):
    pass


@dataclass(frozen=True)
class Chart:
    name: str
    coords: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(self.coords))
        if not self.coords:
            raise ValueError("a chart needs at least one coordinate")
        if len(set(self.coords)) != len(self.coords):
            raise ValueError(f"duplicate coordinate names in chart {self.name}: {self.coords}")

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def symbols(self) -> tuple[Sym, ...]:
        return tuple(Sym(c) for c in self.coords)

    def index(self, coord: str) -> int:
        try:
            return self.coords.index(coord)
        except ValueError:
            raise KeyError(f"{coord!r} is not a coordinate of chart {self.name}") from None


def _same_chart(*objs):
    charts = {o.chart for o in objs}
    if len(charts) != 1:
        names = ", ".join(sorted(c.name for c in charts))
        raise ChartMismatch(f"objects live on different charts: {names}")
    return objs[0].chart


def _simp_vec(values) -> tuple[Expr, ...]:
    return tuple(simplify(as_expr(v)) for v in values)


def _simp_mat(rows) -> Matrix:
    return tuple(tuple(simplify(as_expr(v)) for v in row) for row in rows)


def _check_len(chart: Chart, comps, what: str):
    if len(comps) != chart.dim:
        raise ValueError(f"{what} on {chart.name} needs {chart.dim} components, got {len(comps)}")


def _check_square(chart: Chart, rows, what: str):
    if len(rows) != chart.dim or any(len(r) != chart.dim for r in rows):
        raise ValueError(f"{what} on {chart.name} needs a {chart.dim}x{chart.dim} matrix")


# ------------------------------------------------------------------ fields

class _Linear:
    """Shared arithmetic for component-vector tensors."""

    def _new(self, comps):
        return type(self)(self.chart, comps)

    def __add__(self, other):
        _same_chart(self, other)
        return self._new(a + b for a, b in zip(self.comps, other.comps))

    def __sub__(self, other):
        _same_chart(self, other)
        return self._new(a - b for a, b in zip(self.comps, other.comps))

    def __neg__(self):
        return self._new(-a for a in self.comps)

    def scale(self, f) -> "_Linear":
        f = as_expr(f)
        return self._new(f * a for a in self.comps)

    def __rmul__(self, f):
        return self.scale(f)

    def is_zero(self) -> bool:
        return all(is_symbolic_zero(c) for c in self.comps)


@dataclass(frozen=True, eq=True)
class VectorField(_Linear):
    chart: Chart
    comps: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", _simp_vec(self.comps))
        _check_len(self.chart, self.comps, "vector field")

    @classmethod
    def zero(cls, chart: Chart) -> VectorField:
        return cls(chart, [ZERO] * chart.dim)

    @classmethod
    def basis(cls, chart: Chart, i: int) -> VectorField:
        return cls(chart, [ONE if k == i else ZERO for k in range(chart.dim)])

    def __call__(self, f) -> Expr:
        """Directional derivative X(f)."""
        f = as_expr(f)
        total: Expr = ZERO
        for c, name in zip(self.comps, self.chart.coords):
            if not is_symbolic_zero(c):
                total = total + c * derivative(f, name)
        return simplify(total)

    def __str__(self):
        return combo_text(self.comps, [f"d/d{c}" for c in self.chart.coords])


@dataclass(frozen=True, eq=True)
class OneForm(_Linear):
    chart: Chart
    comps: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", _simp_vec(self.comps))
        _check_len(self.chart, self.comps, "1-form")

    @classmethod
    def zero(cls, chart: Chart) -> OneForm:
        return cls(chart, [ZERO] * chart.dim)

    @classmethod
    def basis(cls, chart: Chart, i: int) -> OneForm:
        return cls(chart, [ONE if k == i else ZERO for k in range(chart.dim)])

    def __call__(self, X: VectorField) -> Expr:
        _same_chart(self, X)
        return simplify(_dot(self.comps, X.comps))

    def __str__(self):
        return combo_text(self.comps, [f"d{c}" for c in self.chart.coords])


def _dot(a, b) -> Expr:
    total: Expr = ZERO
    for u, v in zip(a, b):
        if is_symbolic_zero(u) or is_symbolic_zero(v):
            continue
        total = total + u * v
    return total


def _term(c: Expr, basis: str) -> tuple[str, str]:
    """(sign, text) of one term of a linear combination."""
    sign = "+"
    if isinstance(c, Neg):
        sign, c = "-", c.arg
    elif isinstance(c, Const) and c.value < 0:
        sign, c = "-", Const(-c.value)
    if c == ONE:
        return sign, basis
    s = str(c)
    # only a top-level sum needs parentheses before "*basis"
    return sign, (f"({s})" if isinstance(c, (Add, Sub)) else s) + "*" + basis


def combo_text(comps, names) -> str:
    """Signed text of a linear combination, e.g. ``-y*dx + dz``."""
    out = ""
    for c, n in zip(comps, names):
        if is_symbolic_zero(c):
            continue
        sign, t = _term(c, n)
        if not out:
            out = t if sign == "+" else f"-{t}"
        else:
            out += f" {sign} {t}"
    return out or "0"


class _MatrixTensor:
    def _new(self, rows):
        return type(self)(self.chart, rows)

    def __add__(self, other):
        _same_chart(self, other)
        return self._new([[a + b for a, b in zip(r, s)] for r, s in zip(self.comps, other.comps)])

    def __sub__(self, other):
        _same_chart(self, other)
        return self._new([[a - b for a, b in zip(r, s)] for r, s in zip(self.comps, other.comps)])

    def __neg__(self):
        return self._new([[-a for a in r] for r in self.comps])

    def scale(self, f):
        f = as_expr(f)
        return self._new([[f * a for a in r] for r in self.comps])

    def __rmul__(self, f):
        return self.scale(f)

    def is_zero(self) -> bool:
        return all(is_symbolic_zero(c) for r in self.comps for c in r)

    def is_antisymmetric(self) -> bool:
        n = self.chart.dim
        return all(
            is_symbolic_zero(self.comps[i][j] + self.comps[j][i]) for i in range(n) for j in range(i, n)
        )

    def is_symmetric(self) -> bool:
        n = self.chart.dim
        return all(is_symbolic_zero(self.comps[i][j] - self.comps[j][i]) for i in range(n) for j in range(i + 1, n))

    def __str__(self):
        return "[" + "; ".join(", ".join(str(c) for c in r) for r in self.comps) + "]"


@dataclass(frozen=True, eq=True)
class TwoForm(_MatrixTensor):
    """Skew 2-form; ``apply(X)`` is the 1-form ``B(X, .)``."""

    chart: Chart
    comps: Matrix

    def __post_init__(self):
        object.__setattr__(self, "comps", _simp_mat(self.comps))
        _check_square(self.chart, self.comps, "2-form")

    @classmethod
    def zero(cls, chart: Chart) -> TwoForm:
        return cls(chart, [[ZERO] * chart.dim for _ in range(chart.dim)])

    def __call__(self, X: VectorField, Y: VectorField) -> Expr:
        _same_chart(self, X, Y)
        return simplify(_bilinear(self.comps, X.comps, Y.comps))

    def apply(self, X: VectorField) -> OneForm:
        _same_chart(self, X)
        n = self.chart.dim
        return OneForm(self.chart, [_dot(X.comps, [self.comps[i][j] for i in range(n)]) for j in range(n)])


@dataclass(frozen=True, eq=True)
class Bivector(_MatrixTensor):
    """Skew bivector; ``apply(a)`` has components ``sum_j beta^ij a_j``."""

    chart: Chart
    comps: Matrix

    def __post_init__(self):
        object.__setattr__(self, "comps", _simp_mat(self.comps))
        _check_square(self.chart, self.comps, "bivector")

    @classmethod
    def zero(cls, chart: Chart) -> Bivector:
        return cls(chart, [[ZERO] * chart.dim for _ in range(chart.dim)])

    def __call__(self, a: OneForm, b: OneForm) -> Expr:
        _same_chart(self, a, b)
        return simplify(_bilinear(self.comps, a.comps, b.comps))

    def apply(self, a: OneForm) -> VectorField:
        _same_chart(self, a)
        return VectorField(self.chart, [_dot(row, a.comps) for row in self.comps])


def _bilinear(m, u, v) -> Expr:
    total: Expr = ZERO
    for i, ui in enumerate(u):
        if is_symbolic_zero(ui):
            continue
        total = total + ui * _dot(m[i], v)
    return total


@dataclass(frozen=True, eq=True)
class Endo(_MatrixTensor):
    chart: Chart
    comps: Matrix

    def __post_init__(self):
        object.__setattr__(self, "comps", _simp_mat(self.comps))
        _check_square(self.chart, self.comps, "endomorphism")

    @classmethod
    def identity(cls, chart: Chart) -> Endo:
        n = chart.dim
        return cls(chart, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, chart: Chart) -> Endo:
        return cls(chart, [[ZERO] * chart.dim for _ in range(chart.dim)])

    @classmethod
    def from_columns(cls, chart: Chart, columns) -> Endo:
        """Build from the images of the coordinate fields."""
        cols = [c.comps for c in columns]
        return cls(chart, [[cols[j][i] for j in range(chart.dim)] for i in range(chart.dim)])

    def apply(self, X: VectorField) -> VectorField:
        _same_chart(self, X)
        return VectorField(self.chart, [_dot(row, X.comps) for row in self.comps])

    __call__ = apply

    def column(self, j: int) -> VectorField:
        return VectorField(self.chart, [row[j] for row in self.comps])

    def __matmul__(self, other: Endo) -> Endo:
        _same_chart(self, other)
        return Endo(self.chart, mat_mul(self.comps, other.comps))

    def transpose_matrix(self) -> Matrix:
        return transpose(self.comps)


@dataclass(frozen=True, eq=True)
class Metric(_MatrixTensor):
    chart: Chart
    comps: Matrix

    def __post_init__(self):
        object.__setattr__(self, "comps", _simp_mat(self.comps))
        _check_square(self.chart, self.comps, "metric")

    def __call__(self, X: VectorField, Y: VectorField) -> Expr:
        _same_chart(self, X, Y)
        return simplify(_bilinear(self.comps, X.comps, Y.comps))

    @cached_property
    def det(self) -> Expr:
        if self.chart.dim > SYMBOLIC_INVERSE_LIMIT + 2:
            raise ValueError("symbolic determinant limited to small charts")
        return simplify(determinant(self.comps))

    def is_nondegenerate(self, sampler: SamplerConfig = DEFAULT_SAMPLER) -> bool:
        if self.chart.dim <= SYMBOLIC_INVERSE_LIMIT + 2:
            return not is_symbolic_zero(self.det)
        return bool(np.all(np.abs(self.numeric_values(sampler)[1]) > 1e-12))

    def numeric_values(self, sampler: SamplerConfig = DEFAULT_SAMPLER):
        """Sampled matrices (samples, n, n) and their determinants."""
        env = sample_points(self.chart.coords, sampler)
        n = self.chart.dim
        m = np.empty((sampler.samples, n, n))
        for i in range(n):
            for j in range(n):
                m[:, i, j] = np.broadcast_to(evaluate(self.comps[i][j], env), (sampler.samples,))
        return m, np.linalg.det(m)

    def signature(self, sampler: SamplerConfig = DEFAULT_SAMPLER) -> tuple[int, int] | None:
        """(positive, negative) eigenvalue counts if constant over the samples."""
        m, _ = self.numeric_values(sampler)
        sigs = set()
        for mat in m:
            ev = np.linalg.eigvalsh(mat)
            sigs.add((int((ev > 1e-12).sum()), int((ev < -1e-12).sum())))
        return sigs.pop() if len(sigs) == 1 else None

    @property
    def numeric_inverse(self) -> bool:
        """True when sharp is evaluated by pointwise numeric inversion."""
        return self.chart.dim > SYMBOLIC_INVERSE_LIMIT

    @cached_property
    def inverse(self) -> Matrix:
        n = self.chart.dim
        if self.numeric_inverse:
            return tuple(tuple(InvEntry(self.comps, i, j) for j in range(n)) for i in range(n))
        det = self.det
        if is_symbolic_zero(det):
            raise DegenerateMetric(f"metric on {self.chart.name} has zero determinant")
        adj = adjugate(self.comps)
        return _simp_mat([[adj[i][j] / det for j in range(n)] for i in range(n)])


# ----------------------------------------------------------- matrix helpers

def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zero_matrix(n: int, m: int | None = None) -> Matrix:
    return tuple(tuple(ZERO for _ in range(n if m is None else m)) for _ in range(n))


def transpose(m: Matrix) -> Matrix:
    return tuple(zip(*m))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return _simp_mat([[_dot(row, col) for col in bt] for row in a])


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return _simp_mat([[x + y for x, y in zip(r, s)] for r, s in zip(a, b)])


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return _simp_mat([[x - y for x, y in zip(r, s)] for r, s in zip(a, b)])


def mat_neg(a: Matrix) -> Matrix:
    return _simp_mat([[-x for x in r] for r in a])


def determinant(m: Matrix) -> Expr:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total: Expr = ZERO
    for j in range(n):
        if is_symbolic_zero(m[0][j]):
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * simplify(determinant(minor))
        total = total + term if j % 2 == 0 else total - term
    return total


def adjugate(m: Matrix) -> Matrix:
    n = len(m)
    if n == 1:
        return ((ONE,),)
    out = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            cof = simplify(determinant(minor))
            out[j][i] = cof if (i + j) % 2 == 0 else -cof
    return _simp_mat(out)


# ------------------------------------------------------------- operations

def lie_bracket(X: VectorField, Y: VectorField) -> VectorField:
    """[X, Y]^i = sum_j X^j d_j Y^i - Y^j d_j X^i."""
    chart = _same_chart(X, Y)
    return VectorField(chart, [X(yi) - Y(xi) for xi, yi in zip(X.comps, Y.comps)])


def exterior_derivative(omega, chart: Chart | None = None):
    """d of a scalar (needs ``chart``) or of a 1-form; no 1/2 normalization."""
    if isinstance(omega, OneForm):
        c = omega.chart
        n = c.dim
        grads = [[expr_diff(omega.comps[j], c.coords[i]) for j in range(n)] for i in range(n)]
        return TwoForm(c, [[grads[i][j] - grads[j][i] for j in range(n)] for i in range(n)])
    if isinstance(omega, (TwoForm, Bivector, Endo, Metric, VectorField)):
        raise TypeError(f"exterior derivative of {type(omega).__name__} is not supported")
    if chart is None:
        raise TypeError("exterior derivative of a scalar needs the chart")
    f = as_expr(omega)
    return OneForm(chart, [expr_diff(f, c) for c in chart.coords])


def two_form_d(B: TwoForm) -> dict[tuple[int, int, int], Expr]:
    """Components (dB)_ijk, i<j<k, of the exterior derivative of a 2-form."""
    c = B.chart
    n = c.dim
    d = lambda e, k: derivative(e, c.coords[k])  # noqa: E731
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                out[(i, j, k)] = simplify(
                    d(B.comps[j][k], i) + d(B.comps[k][i], j) + d(B.comps[i][j], k)
                )
    return out


def interior_vf_two_form(X: VectorField, B: TwoForm) -> OneForm:
    return B.apply(X)


def lie_derivative_oneform(X: VectorField, alpha: OneForm) -> OneForm:
    """Cartan: L_X alpha = i_X d alpha + d(alpha(X))."""
    chart = _same_chart(X, alpha)
    return exterior_derivative(alpha).apply(X) + exterior_derivative(alpha(X), chart)


def lie_derivative_endo(X: VectorField, phi: Endo) -> Endo:
    """(L_X phi)(Y) = [X, phi Y] - phi [X, Y], assembled on coordinate fields."""
    chart = _same_chart(X, phi)
    cols = []
    for j in range(chart.dim):
        e = VectorField.basis(chart, j)
        cols.append(lie_bracket(X, phi.apply(e)) - phi.apply(lie_bracket(X, e)))
    return Endo.from_columns(chart, cols)


def dual_endo_apply(phi: Endo, alpha: OneForm) -> OneForm:
    """(phi^* alpha)(X) = alpha(phi X)."""
    _same_chart(phi, alpha)
    return OneForm(phi.chart, [_dot(alpha.comps, col) for col in transpose(phi.comps)])


def interior_product_metric(X: VectorField, g: Metric) -> OneForm:
    chart = _same_chart(X, g)
    return OneForm(chart, [_dot(X.comps, col) for col in transpose(g.comps)])


def flat(g: Metric, X: VectorField) -> OneForm:
    return interior_product_metric(X, g)


def sharp(g: Metric, alpha: OneForm) -> VectorField:
    chart = _same_chart(g, alpha)
    return VectorField(chart, [_dot(row, alpha.comps) for row in g.inverse])


def wedge_vv(a: VectorField, b: VectorField) -> Bivector:
    chart = _same_chart(a, b)
    n = chart.dim
    return Bivector(chart, [[a.comps[i] * b.comps[j] - a.comps[j] * b.comps[i] for j in range(n)] for i in range(n)])


def wedge_ff(a: OneForm, b: OneForm) -> TwoForm:
    chart = _same_chart(a, b)
    n = chart.dim
    return TwoForm(chart, [[a.comps[i] * b.comps[j] - a.comps[j] * b.comps[i] for j in range(n)] for i in range(n)])


def tensor_endo(eta: OneForm, xi: VectorField) -> Endo:
    """The endomorphism eta (x) xi : X -> eta(X) xi."""
    chart = _same_chart(eta, xi)
    n = chart.dim
    return Endo(chart, [[xi.comps[i] * eta.comps[j] for j in range(n)] for i in range(n)])


def nijenhuis_endo(phi: Endo, X: VectorField, Y: VectorField) -> VectorField:
    """[phi X, phi Y] + phi^2 [X, Y] - phi [phi X, Y] - phi [X, phi Y]."""
    _same_chart(phi, X, Y)
    pX, pY = phi.apply(X), phi.apply(Y)
    return (
        lie_bracket(pX, pY)
        + phi.apply(phi.apply(lie_bracket(X, Y)))
        - phi.apply(lie_bracket(pX, Y))
        - phi.apply(lie_bracket(X, pY))
    )


# ---------------------------------------------------------- product chart

@dataclass(frozen=True)
class ProductChart:
    """M x R: the base chart, the product chart and the name of the line coordinate."""

    base: Chart
    chart: Chart
    t: str
    note: str = ""

    def lift_vf(self, X: VectorField) -> VectorField:
        return VectorField(self.chart, list(X.comps) + [ZERO])

    def lift_form(self, a: OneForm) -> OneForm:
        return OneForm(self.chart, list(a.comps) + [ZERO])

    def lift_endo(self, phi: Endo) -> Endo:
        rows = [list(r) + [ZERO] for r in phi.comps]
        rows.append([ZERO] * (self.base.dim + 1))
        return Endo(self.chart, rows)

    @property
    def dt(self) -> OneForm:
        return OneForm.basis(self.chart, self.base.dim)

    @property
    def d_dt(self) -> VectorField:
        return VectorField.basis(self.chart, self.base.dim)


def product_with_line(M: Chart, t: str = "t") -> ProductChart:
    """Chart of M x R with a fresh last coordinate (renamed on collision)."""
    name, note = t, ""
    k = 1
    while name in M.coords:
        name = f"{t}{k}"
        k += 1
    if name != t:
        note = f"coordinate {t!r} already used on {M.name}; line coordinate renamed to {name!r}"
    return ProductChart(M, Chart(f"{M.name}xR", M.coords + (name,)), name, note)
