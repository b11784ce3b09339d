"""Normality: the classical system and the Courant-Nijenhuis tensor on M x R.

The adapted structure on M x R is

    P = ((phi, xi ^ d/dt), (eta ^ dt, -phi^*))

with phi, xi, eta lifted with zero t-components. With the block matrix
convention of :mod:`gentangent` this gives ``beta B = eta(x)xi + dt(x)d/dt``
and hence ``P^2 = I``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .gentangent import GenEndo, GenSection, courant_bracket, frame_sections
from .parastruct import APC, check_apc, product_block_conditions
from .reports import CheckItem, CheckReport, PreconditionError, logic_item, residual_item
from .symkernel import Expr
from .symkernel.zero import DEFAULT_SAMPLER, SamplerConfig
from .tensorcalc import (
    Endo,
    ProductChart,
    VectorField,
    exterior_derivative,
    lie_derivative_endo,
    lie_derivative_oneform,
    nijenhuis_endo,
    product_with_line,
    tensor_endo,
    wedge_ff,
    wedge_vv,
)

N_PHI = "N_phi(X, Y) - d eta(X, Y) xi = 0"
L_XI_ETA = "L_xi eta = 0"
L_XI_PHI = "L_xi phi = 0"
L_PHI_ETA = "(L_phi X eta) Y - (L_phi Y eta) X = 0"
N_P = "N_P(A, C) = 0"


def _require_apc(S: APC, sampler):
    rep = check_apc(S, sampler)
    if not rep.passed:
        raise PreconditionError(f"{S.name} is not almost paracontact: fails {', '.join(rep.failing())}")


def _fields(chart):
    return [(f"d/d{c}", VectorField.basis(chart, i)) for i, c in enumerate(chart.coords)]


def classical_normality(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER, check: bool = True) -> CheckReport:
    if check:
        _require_apc(S, sampler)
    chart = S.check_charts()
    phi, xi, eta = S.phi, S.xi, S.eta
    deta = exterior_derivative(eta)
    fields = _fields(chart)
    pairs = [(f"({a}, {b})", X, Y) for (a, X), (b, Y) in itertools.product(fields, fields)]
    rep = CheckReport(f"classical normality {S.name}")
    rep.add(residual_item(
        N_PHI,
        ((lbl, nijenhuis_endo(phi, X, Y) - xi.scale(deta(X, Y))) for lbl, X, Y in pairs),
        sampler,
    ))
    rep.add(residual_item(L_XI_ETA, [("xi", lie_derivative_oneform(xi, eta))], sampler))
    Lphi = lie_derivative_endo(xi, phi)
    rep.add(residual_item(L_XI_PHI, ((f"(xi, {lbl})", Lphi.apply(X)) for lbl, X in fields), sampler))

    def fourth(X, Y):
        return lie_derivative_oneform(phi.apply(X), eta)(Y) - lie_derivative_oneform(phi.apply(Y), eta)(X)

    rep.add(residual_item(L_PHI_ETA, ((lbl, fourth(X, Y)) for lbl, X, Y in pairs), sampler))
    return rep


@dataclass(frozen=True)
class AdaptedProduct:
    product: ProductChart
    P: GenEndo
    report: CheckReport

    @property
    def chart(self):
        return self.product.chart


def adapted_product(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER, check: bool = True) -> AdaptedProduct:
    if check:
        _require_apc(S, sampler)
    pc = product_with_line(S.chart)
    xi, eta = pc.lift_vf(S.xi), pc.lift_form(S.eta)
    P = GenEndo(pc.lift_endo(S.phi), wedge_vv(xi, pc.d_dt), wedge_ff(eta, pc.dt))
    rep = product_block_conditions(P, sampler, name=f"P({S.name})")
    if pc.note:
        rep.notes.append(pc.note)
    return AdaptedProduct(pc, P, rep)


def courant_nijenhuis(P: GenEndo, A: GenSection, C: GenSection) -> GenSection:
    """[PA, PC] + P^2 [A, C] - P [PA, C] - P [A, PC] with the Courant bracket."""
    br = courant_bracket
    PA, PC = P.apply(A), P.apply(C)
    return br(PA, PC) + P.apply(P.apply(br(A, C))) - P.apply(br(PA, C)) - P.apply(br(A, PC))


def generalized_normality(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER, check: bool = True) -> CheckReport:
    ap = adapted_product(S, sampler, check=check)
    rep = CheckReport(f"generalized normality {S.name}")
    rep.notes.extend(ap.report.notes)
    rep.extend(ap.report, prefix="P ", kind="hypothesis")
    frames = frame_sections(ap.chart)
    rep.add(residual_item(
        N_P,
        (
            (f"({la}, {lc})", courant_nijenhuis(ap.P, A, C))
            for (la, A), (lc, C) in itertools.combinations(frames, 2)
        ),
        sampler,
    ))
    return rep


def nijenhuis_antisymmetry_item(P: GenEndo, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckItem:
    frames = frame_sections(P.chart)
    return residual_item(
        "N_P(A, C) + N_P(C, A) = 0",
        (
            (f"({la}, {lc})", courant_nijenhuis(P, A, C) + courant_nijenhuis(P, C, A))
            for (la, A), (lc, C) in itertools.combinations(frames, 2)
        ),
        sampler,
    )


def courant_antisymmetry_item(chart, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckItem:
    frames = frame_sections(chart)
    return residual_item(
        "[A, C] + [C, A] = 0",
        (
            (f"({la}, {lc})", courant_bracket(A, C) + courant_bracket(C, A))
            for (la, A), (lc, C) in itertools.product(frames, frames)
        ),
        sampler,
    )


def tensoriality_item(P: GenEndo, multipliers: list[Expr], sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckItem:
    """N_P(f A, C) - f N_P(A, C) on frame pairs for each multiplier f."""
    frames = frame_sections(P.chart)

    def entries():
        for f in multipliers:
            for (la, A), (lc, C) in itertools.combinations(frames, 2):
                yield f"f={f} ({la}, {lc})", courant_nijenhuis(P, A.scale(f), C) - courant_nijenhuis(P, A, C).scale(f)

    return residual_item("N_P(f A, C) = f N_P(A, C)", entries(), sampler, kind="info")


def product_structures(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER, check: bool = True):
    """E1 = phi - eta(x)xi, E2 = phi + eta(x)xi and their Nijenhuis reports."""
    if check:
        _require_apc(S, sampler)
    chart = S.check_charts()
    J = tensor_endo(S.eta, S.xi)
    E1, E2 = S.phi - J, S.phi + J
    ident = Endo.identity(chart)
    fields = _fields(chart)
    pairs = [(f"({a}, {b})", X, Y) for (a, X), (b, Y) in itertools.product(fields, fields)]
    rep = CheckReport(f"product structures {S.name}")
    rep.add(residual_item("E1^2 = I", [("matrix", (E1 @ E1) - ident)], sampler))
    rep.add(residual_item("E2^2 = I", [("matrix", (E2 @ E2) - ident)], sampler))
    rep.add(residual_item("E1 + E2 = 2 phi", [("matrix", E1 + E2 - S.phi.scale(2))], sampler))
    n1 = rep.add(residual_item(
        "N_E1 = 0", ((lbl, nijenhuis_endo(E1, X, Y)) for lbl, X, Y in pairs), sampler, kind="conditional"
    ))
    rep.add(residual_item(
        "N_E2 = 0", ((lbl, nijenhuis_endo(E2, X, Y)) for lbl, X, Y in pairs), sampler, kind="conditional"
    ))
    phi, eta = S.phi, S.eta

    def aux(X, Y):
        # eta applied to N_E1(phi X, Y) = 0 yields this expression
        return (
            lie_derivative_oneform(phi.apply(phi.apply(X)), eta)(Y)
            - lie_derivative_oneform(phi.apply(Y), eta)(phi.apply(X))
        )

    ax = rep.add(residual_item(
        "(L_phi^2X eta) Y - (L_phiY eta)(phi X) = 0",
        ((lbl, aux(X, Y)) for lbl, X, Y in pairs),
        sampler,
        kind="conditional",
    ))
    rep.add(residual_item(
        "eta(N_E1(phi X, Y)) = 0",
        ((lbl, eta(nijenhuis_endo(E1, phi.apply(X), Y))) for lbl, X, Y in pairs),
        sampler,
        kind="conditional",
    ))
    rep.add(logic_item("N_E1 = 0 => auxiliary identity", [n1], [ax]))
    return E1, E2, rep


def normality_equivalence(
    S: APC,
    sampler: SamplerConfig = DEFAULT_SAMPLER,
    classical: CheckReport | None = None,
    generalized: CheckReport | None = None,
) -> CheckReport:
    """Compare the two verdicts; precomputed reports for S may be passed in."""
    _require_apc(S, sampler)
    cl = classical if classical is not None else classical_normality(S, sampler, check=False)
    gn = generalized if generalized is not None else generalized_normality(S, sampler, check=False)
    rep = CheckReport(f"normality equivalence {S.name}")
    rep.extend(cl, prefix="classical ", kind="hypothesis")
    rep.extend(gn, prefix="generalized ", kind="hypothesis")
    a, b = cl.passed, gn.passed
    note = f"classical {'normal' if a else 'not normal'}, generalized {'normal' if b else 'not normal'}"
    if a != b:
        differing = cl.failing() + gn.failing()
        note += "; differing items: " + ", ".join(differing)
    rep.add(CheckItem("classical and generalized verdicts agree", "symbolic-zero" if a == b else "nonzero",
                      kind="logic", note=note))
    return rep


def implied_lie_item(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckItem:
    """Condition 1 and L_xi eta = 0 => L_xi phi = 0."""
    rep = classical_normality(S, sampler, check=False)
    return logic_item(
        "N_phi - d eta xi = 0 and L_xi eta = 0 => L_xi phi = 0",
        [rep.item(N_PHI), rep.item(L_XI_ETA)],
        [rep.item(L_XI_PHI)],
    )


__all__ = [
    "AdaptedProduct", "adapted_product", "classical_normality", "courant_nijenhuis",
    "generalized_normality", "normality_equivalence", "product_structures",
    "nijenhuis_antisymmetry_item", "courant_antisymmetry_item", "tensoriality_item",
    "implied_lie_item",
]
