"""Coordinate diffeomorphisms, push-forward and pull-back, paracontactomorphisms.

A map carries its forward components (target coordinates as functions of
source coordinates) and a user-supplied inverse. Push-forwards are
re-expressed through the inverse so that they live on the target chart.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gentangent import GenEndo, GenSection, frame_sections
from .parastruct import APC, _axiom_items
from .reports import CheckItem, CheckReport, logic_item, residual_item
from .symkernel import Expr, Sym, as_expr, simplify, subs
from .symkernel.zero import DEFAULT_SAMPLER, SamplerConfig
from .tensorcalc import Chart, ChartMismatch, OneForm, VectorField, determinant, dual_endo_apply
from .symkernel import expr_diff


@dataclass(frozen=True)
class Diffeo:
    name: str
    source: Chart
    target: Chart
    forward: tuple[Expr, ...]
    inverse: tuple[Expr, ...]

    def __post_init__(self):
        if self.source.dim != self.target.dim:
            raise ValueError("maps between charts of different dimension are not supported")
        fw = tuple(simplify(as_expr(e)) for e in self.forward)
        inv = tuple(simplify(as_expr(e)) for e in self.inverse)
        if len(fw) != self.target.dim or len(inv) != self.source.dim:
            raise ValueError(f"map {self.name} needs {self.target.dim} forward and inverse components")
        object.__setattr__(self, "forward", fw)
        object.__setattr__(self, "inverse", inv)

    @property
    def jacobian(self):
        """J[i][j] = d f^i / d x^j in source coordinates."""
        return [[expr_diff(f, c) for c in self.source.coords] for f in self.forward]

    @property
    def inverse_jacobian(self):
        return [[expr_diff(g, c) for c in self.target.coords] for g in self.inverse]

    def to_target(self, e: Expr) -> Expr:
        """Re-express a source-coordinate function in target coordinates (e o f^-1)."""
        return simplify(subs(e, dict(zip(self.source.coords, self.inverse))))

    def to_source(self, e: Expr) -> Expr:
        """e o f for a target-coordinate function."""
        return simplify(subs(e, dict(zip(self.target.coords, self.forward))))

    def inverted(self) -> Diffeo:
        return Diffeo(f"{self.name}^-1", self.target, self.source, self.inverse, self.forward)

    def then(self, other: Diffeo) -> Diffeo:
        """other o self."""
        if other.source != self.target:
            raise ChartMismatch("composition needs matching charts")
        fw = [self.to_source(e) for e in other.forward]
        inv = [other.to_target(e) for e in self.inverse]
        return Diffeo(f"{other.name}.{self.name}", self.source, other.target, fw, inv)


def diffeo_items(f: Diffeo, sampler: SamplerConfig = DEFAULT_SAMPLER) -> list[CheckItem]:
    src = [Sym(c) for c in f.source.coords]
    tgt = [Sym(c) for c in f.target.coords]
    back = [simplify(subs(g, dict(zip(f.target.coords, f.forward)))) - s for g, s in zip(f.inverse, src)]
    forth = [simplify(subs(e, dict(zip(f.source.coords, f.inverse)))) - t for e, t in zip(f.forward, tgt)]
    det = simplify(determinant(tuple(tuple(r) for r in f.jacobian)))
    det_item = residual_item("jacobian determinant", [("", det)], sampler, kind="info")
    nondeg = CheckItem(
        "jacobian determinant nonzero",
        "symbolic-zero" if det_item.tier == "nonzero" else "nonzero",
        note=f"det = {det}",
    )
    return [
        residual_item("inverse o forward = id", [(c, e) for c, e in zip(f.source.coords, back)], sampler),
        residual_item("forward o inverse = id", [(c, e) for c, e in zip(f.target.coords, forth)], sampler),
        nondeg,
    ]


def pushforward_vf(f: Diffeo, X: VectorField) -> VectorField:
    if X.chart != f.source:
        raise ChartMismatch(f"vector field is not on the source chart of {f.name}")
    J = f.jacobian
    comps = []
    for row in J:
        acc = as_expr(0)
        for a, x in zip(row, X.comps):
            acc = acc + a * x
        comps.append(f.to_target(acc))
    return VectorField(f.target, comps)


def pullback_form(f: Diffeo, alpha: OneForm) -> OneForm:
    if alpha.chart != f.target:
        raise ChartMismatch(f"1-form is not on the target chart of {f.name}")
    J = f.jacobian
    pulled = [f.to_source(a) for a in alpha.comps]
    n = f.source.dim
    return OneForm(f.source, [sum((pulled[i] * J[i][j] for i in range(n)), as_expr(0)) for j in range(n)])


def pushforward_form(f: Diffeo, alpha: OneForm) -> OneForm:
    """(f^-1)^* alpha, a 1-form on the target chart."""
    return pullback_form(f.inverted(), alpha)


def induced_gen_map(f: Diffeo, A: GenSection) -> GenSection:
    """f~(X + alpha) = f_* X + (f^-1)^* alpha."""
    return GenSection(pushforward_vf(f, A.vf), pushforward_form(f, A.form))


def _fields(chart: Chart):
    return [(f"d/d{c}", VectorField.basis(chart, i)) for i, c in enumerate(chart.coords)]


def _forms(chart: Chart):
    return [(f"d{c}", OneForm.basis(chart, i)) for i, c in enumerate(chart.coords)]


def check_paracontactomorphism(f: Diffeo, S1: APC, S2: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    if S1.chart != f.source or S2.chart != f.target:
        raise ChartMismatch(f"structures do not live on the charts of {f.name}")
    rep = CheckReport(f"morphism {f.name}: {S1.name} -> {S2.name}")
    for it in diffeo_items(f, sampler):
        rep.add(it)
    push = lambda X: pushforward_vf(f, X)  # noqa: E731
    intertwine = rep.add(residual_item(
        "phi2 o f_* = f_* o phi1",
        ((lbl, S2.phi.apply(push(X)) - push(S1.phi.apply(X))) for lbl, X in _fields(f.source)),
        sampler,
    ))
    xi_item = rep.add(residual_item("f_* xi1 = xi2", [("xi1", push(S1.xi) - S2.xi)], sampler))
    axioms = [
        CheckItem(f"{role} {it.label}", it.tier, it.max_abs_residual, it.witness, "hypothesis", it.checked)
        for role, S in (("source", S1), ("target", S2))
        for it in _axiom_items(S, sampler)
    ]
    for it in axioms:
        rep.add(it)
    eta_item = rep.add(residual_item(
        "f^* eta2 = eta1", [("eta2", pullback_form(f, S2.eta) - S1.eta)], sampler, kind="conditional"
    ))
    lemma = rep.add(residual_item(
        "phi1^* o f^* = f^* o phi2^*",
        (
            (lbl, dual_endo_apply(S1.phi, pullback_form(f, a)) - pullback_form(f, dual_endo_apply(S2.phi, a)))
            for lbl, a in _forms(f.target)
        ),
        sampler,
        kind="conditional",
    ))
    rep.add(logic_item("paracontactomorphism => f^* eta2 = eta1", [intertwine, xi_item] + axioms, [eta_item]))
    rep.add(logic_item("paracontactomorphism => dual intertwining", [intertwine], [lemma]))
    return rep


def check_gen_commutation(f: Diffeo, S1: APC, S2: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    base = check_paracontactomorphism(f, S1, S2, sampler)
    rep = CheckReport(f"induced map {f.name}: {S1.name} -> {S2.name}")
    hyp = [
        CheckItem(it.label, it.tier, it.max_abs_residual, it.witness, "hypothesis", it.checked)
        for it in base.items
        if it.counts and it.kind == "residual"
    ]
    for it in hyp:
        rep.add(it)
    P1, P2 = GenEndo.diag(S1.phi), GenEndo.diag(S2.phi)
    ft = lambda A: induced_gen_map(f, A)  # noqa: E731
    comm = rep.add(residual_item(
        "Phi2 o f~ = f~ o Phi1",
        ((lbl, P2.apply(ft(A)) - ft(P1.apply(A))) for lbl, A in frame_sections(f.source)),
        sampler,
        kind="conditional",
    ))
    a1 = rep.add(residual_item(
        "f~(xi1 + 0) = xi2 + 0",
        [("xi1", ft(GenSection.of(x=S1.xi)) - GenSection.of(x=S2.xi))],
        sampler,
        kind="conditional",
    ))
    a2 = rep.add(residual_item(
        "f~(0 + eta1) = 0 + eta2",
        [("eta1", ft(GenSection.of(a=S1.eta)) - GenSection.of(a=S2.eta))],
        sampler,
        kind="conditional",
    ))
    axioms = [it for it in base.items if it.kind == "hypothesis"]
    rep.add(logic_item("paracontactomorphism => induced map commutes", hyp, [comm, a1]))
    rep.add(logic_item("paracontactomorphism => f~ maps eta1 to eta2", hyp + axioms, [a2]))
    return rep
