"""Almost paracontact structures and their generalized counterparts.

Constructors never validate; every axiom is checked explicitly by a
``check_*`` function returning a :class:`CheckReport`, so broken
structures can be built on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gentangent import (
    GenEndo,
    GenMetric,
    GenOp,
    GenSection,
    b_transform,
    b_transform_closed,
    beta_transform,
    beta_transform_closed,
    frame_sections,
    g0_pair,
    g0_skew_item,
    gen_metric_from_riemannian,
)
from .reports import (
    CheckItem,
    CheckReport,
    PreconditionError,
    info_item,
    logic_item,
    residual_item,
)
from .symkernel import ONE, ZERO, Sym, cos, sin
from .symkernel.zero import DEFAULT_SAMPLER, SamplerConfig
from .tensorcalc import (
    Bivector,
    Chart,
    Endo,
    Metric,
    OneForm,
    TwoForm,
    VectorField,
    _same_chart,
    dual_endo_apply,
    exterior_derivative,
    flat,
    identity_matrix,
    mat_add,
    mat_mul,
    mat_sub,
    tensor_endo,
    transpose,
    two_form_d,
    zero_matrix,
)

# item labels
APC_SQUARE = "phi^2 = I - eta(x)xi"
APC_NORM = "eta(xi) = 1"
PHI_XI = "phi xi = 0"
ETA_PHI = "eta o phi = 0"
METRIC_COMPAT = "g(phi X, phi Y) = -g(X, Y) + eta(X) eta(Y)"
METRIC_ETA = "i_xi g = eta"
METRIC_XI = "g(xi, xi) = 1"
METRIC_SKEW = "g(phi X, Y) + g(X, phi Y) = 0"
GAPC_1 = "1: g0(Phi A, C) + g0(A, Phi C) = 0"
GAPC_2 = "2: Phi^2 = diag(I - eta(x)xi, (I - eta(x)xi)^*)"
GAPC_3 = "3: Phi F = 0"
GAPC_4 = "4: g0(xi + eta, xi + eta) = 1"
BLK_SQUARE = "phi^2 = I - eta(x)xi - beta B"
BLK_BETA = "beta(alpha, phi^* gamma) = beta(phi^* alpha, gamma)"
BLK_B = "B(X, phi Y) = B(phi X, Y)"
BLK_BETA_ETA = "beta(eta, .) = 0"
BLK_B_XI = "B(xi, .) = 0"
PROD_SQUARE = "phi^2 = I - beta B"


@dataclass(frozen=True)
class APC:
    phi: Endo
    xi: VectorField
    eta: OneForm
    g: Metric | None = None
    name: str = "S"

    @property
    def chart(self) -> Chart:
        return self.phi.chart

    def check_charts(self):
        parts = [self.phi, self.xi, self.eta] + ([self.g] if self.g is not None else [])
        return _same_chart(*parts)

    @property
    def J(self) -> Endo:
        """eta (x) xi as an endomorphism."""
        return tensor_endo(self.eta, self.xi)


@dataclass(frozen=True)
class GAPC:
    Phi: GenEndo
    xi: VectorField
    eta: OneForm
    name: str = "G"

    @property
    def chart(self) -> Chart:
        return self.Phi.chart


def _coord_fields(chart: Chart):
    return [(f"d/d{c}", VectorField.basis(chart, i)) for i, c in enumerate(chart.coords)]


def _coord_forms(chart: Chart):
    return [(f"d{c}", OneForm.basis(chart, i)) for i, c in enumerate(chart.coords)]


def _coord_pairs(chart: Chart):
    fs = _coord_fields(chart)
    return [(f"({a}, {b})", X, Y) for a, X in fs for b, Y in fs]


def _axiom_items(S: APC, sampler, kind="residual") -> list[CheckItem]:
    chart = S.check_charts()
    resid = Endo(chart, mat_sub((S.phi @ S.phi).comps, mat_sub(identity_matrix(chart.dim), S.J.comps)))
    return [
        residual_item(APC_SQUARE, [("matrix", resid)], sampler, kind=kind),
        residual_item(APC_NORM, [("", S.eta(S.xi) - ONE)], sampler, kind=kind),
    ]


def check_apc(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    rep = CheckReport(f"apc {S.name}")
    axioms = _axiom_items(S, sampler)
    for it in axioms:
        rep.add(it)
    derived = [
        residual_item(PHI_XI, [("xi", S.phi.apply(S.xi))], sampler, kind="conditional"),
        residual_item(ETA_PHI, [("eta", dual_endo_apply(S.phi, S.eta))], sampler, kind="conditional"),
    ]
    for it in derived:
        rep.add(it)
    rep.add(logic_item("axioms => phi xi = 0 and eta o phi = 0", axioms, derived))
    return rep


def check_apc_metric(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    if S.g is None:
        raise PreconditionError(f"structure {S.name} has no metric")
    chart = S.check_charts()
    g, phi, eta, xi = S.g, S.phi, S.eta, S.xi
    rep = CheckReport(f"apc metric {S.name}")
    axioms = _axiom_items(S, sampler, kind="hypothesis")
    for it in axioms:
        rep.add(it)
    nondegenerate = g.is_nondegenerate(sampler)
    rep.add(CheckItem(
        "g nondegenerate",
        "symbolic-zero" if nondegenerate else "nonzero",
        kind="hypothesis",
        note=None if nondegenerate else "determinant vanishes",
    ))
    compat = rep.add(residual_item(
        METRIC_COMPAT,
        ((lbl, g(phi.apply(X), phi.apply(Y)) + g(X, Y) - eta(X) * eta(Y)) for lbl, X, Y in _coord_pairs(chart)),
        sampler,
    ))
    derived = [
        residual_item(METRIC_ETA, [("", flat(g, xi) - eta)], sampler, kind="conditional"),
        residual_item(METRIC_XI, [("", g(xi, xi) - ONE)], sampler, kind="conditional"),
        residual_item(
            METRIC_SKEW,
            ((lbl, g(phi.apply(X), Y) + g(X, phi.apply(Y))) for lbl, X, Y in _coord_pairs(chart)),
            sampler,
            kind="conditional",
        ),
    ]
    for it in derived:
        rep.add(it)
    rep.add(logic_item("axioms and compatibility => derived identities", axioms + [compat], derived))
    return rep


# ------------------------------------------------------------ generalized

def induce_gapc(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER, check: bool = True) -> GAPC:
    """Phi = diag(phi, -phi^*)."""
    if check:
        rep = check_apc(S, sampler)
        if not rep.passed:
            raise PreconditionError(f"{S.name} is not almost paracontact: fails {', '.join(rep.failing())}")
    S.check_charts()
    return GAPC(GenEndo.diag(S.phi), S.xi, S.eta, name=f"Phi({S.name})")


def F_operator(xi: VectorField, eta: OneForm) -> GenOp:
    """F = diag(eta(x)xi, (eta(x)xi)^*)."""
    J = tensor_endo(eta, xi)
    n = J.chart.dim
    return GenOp.from_blocks(J.chart, J.comps, zero_matrix(n), zero_matrix(n), transpose(J.comps))


def gapc_square_target(xi: VectorField, eta: OneForm) -> GenOp:
    return GenOp.identity(xi.chart) - F_operator(xi, eta)


def check_gapc(G: GAPC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    chart = _same_chart(G.Phi, G.xi, G.eta)
    op = G.Phi.op
    frames = frame_sections(chart)
    rep = CheckReport(f"gapc {G.name}")
    rep.add(g0_skew_item(op, sampler, label=GAPC_1))
    sq = op @ op
    target = gapc_square_target(G.xi, G.eta)
    rep.add(residual_item(GAPC_2, ((lbl, sq(A) - target(A)) for lbl, A in frames), sampler))
    pf = op @ F_operator(G.xi, G.eta)
    rep.add(residual_item(GAPC_3, ((lbl, pf(A)) for lbl, A in frames), sampler))
    s = GenSection(G.xi, G.eta)
    rep.add(residual_item(GAPC_4, [("xi + eta", g0_pair(s, s) - ONE)], sampler))
    return rep


def induced_square_item(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckItem:
    """Phi^2 (X + alpha) = (X + alpha) - [eta(X) xi + alpha(xi) eta] on frames."""
    op = GenEndo.diag(S.phi).op
    sq = op @ op

    def rhs(A: GenSection) -> GenSection:
        return A - GenSection(S.xi.scale(S.eta(A.vf)), S.eta.scale(A.form(S.xi)))

    return residual_item(
        "Phi^2(X + alpha) = (X + alpha) - [eta(X) xi + alpha(xi) eta]",
        ((lbl, sq(A) - rhs(A)) for lbl, A in frame_sections(S.chart)),
        sampler,
    )


def _block_items(phi: Endo, beta: Bivector, B: TwoForm, J: Endo, sampler, square_label: str):
    chart = phi.chart
    Bmap = transpose(B.comps)
    resid = mat_sub(
        mat_mul(phi.comps, phi.comps),
        mat_sub(mat_sub(identity_matrix(chart.dim), J.comps), mat_mul(beta.comps, Bmap)),
    )
    beta_sym = mat_sub(mat_mul(phi.comps, beta.comps), mat_mul(beta.comps, transpose(phi.comps)))
    b_sym = mat_sub(mat_mul(B.comps, phi.comps), mat_mul(transpose(phi.comps), B.comps))
    return [
        residual_item(square_label, [("matrix", Endo(chart, resid))], sampler),
        residual_item(BLK_BETA, [("matrix", Endo(chart, beta_sym))], sampler),
        residual_item(BLK_B, [("matrix", Endo(chart, b_sym))], sampler),
    ]


def gapc_block_conditions(G: GAPC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    """Conditions on the blocks (phi, beta, B) equivalent to check_gapc."""
    _same_chart(G.Phi, G.xi, G.eta)
    phi, beta, B = G.Phi.phi, G.Phi.beta, G.Phi.b
    rep = CheckReport(f"gapc blocks {G.name}")
    for it in _block_items(phi, beta, B, tensor_endo(G.eta, G.xi), sampler, BLK_SQUARE):
        rep.add(it)
    rep.add(residual_item(BLK_BETA_ETA, [("eta", beta.apply(G.eta))], sampler))
    rep.add(residual_item(BLK_B_XI, [("xi", B.apply(G.xi))], sampler))
    rep.add(residual_item(PHI_XI, [("xi", phi.apply(G.xi))], sampler))
    rep.add(residual_item(ETA_PHI, [("eta", dual_endo_apply(phi, G.eta))], sampler))
    rep.add(residual_item(APC_NORM, [("", G.eta(G.xi) - ONE)], sampler))
    return rep


def product_block_conditions(P: GenEndo, sampler: SamplerConfig = DEFAULT_SAMPLER, name: str = "P") -> CheckReport:
    """Block conditions for P^2 = I (generalized almost product structure)."""
    chart = P.chart
    rep = CheckReport(f"product blocks {name}")
    for it in _block_items(P.phi, P.beta, P.b, Endo.zero(chart), sampler, PROD_SQUARE):
        rep.add(it)
    sq = P.op @ P.op
    rep.add(residual_item(
        "P^2 = I", ((lbl, sq(A) - A) for lbl, A in frame_sections(chart)), sampler
    ))
    return rep


# ------------------------------------------------------- one-parameter

@dataclass
class FamilyResult:
    family: GAPC
    report: CheckReport
    t: Sym = field(default_factory=lambda: Sym("t"))


def one_param_family(S1: APC, S2: APC, t: str = "t", sampler: SamplerConfig = DEFAULT_SAMPLER) -> FamilyResult:
    """Phi_t = cos t Phi_1 + sin t Phi_2 with hypotheses checked, not assumed."""
    chart = _same_chart(S1.phi, S2.phi, S1.xi, S2.xi, S1.eta, S2.eta)
    if t in chart.coords:
        raise ValueError(f"family parameter {t!r} collides with a coordinate of {chart.name}")
    ts = Sym(t)
    c, s = cos(ts), sin(ts)
    P1, P2 = GenEndo.diag(S1.phi), GenEndo.diag(S2.phi)
    Pt = P1.scale(c) + P2.scale(s)
    xi_t = S1.xi.scale(c) + S2.xi.scale(s)
    eta_t = S1.eta.scale(c) + S2.eta.scale(s)
    fam = GAPC(Pt, xi_t, eta_t, name=f"Phi_{t}({S1.name}, {S2.name})")
    rep = CheckReport(f"family {S1.name} {S2.name}")

    hyps = []
    structs = ((1, S1), (2, S2))
    for i, Si in structs:
        for j, Sj in structs:
            delta = ONE if i == j else ZERO
            hyps.append(residual_item(f"eta{i}(xi{j}) = {int(i == j)}", [("", Si.eta(Sj.xi) - delta)], sampler, kind="hypothesis"))
    for i, Si in structs:
        for j, Sj in structs:
            hyps.append(residual_item(f"phi{i} xi{j} = 0", [("", Si.phi.apply(Sj.xi))], sampler, kind="hypothesis"))
    anti = (S1.phi @ S2.phi) + (S2.phi @ S1.phi) + tensor_endo(S1.eta, S2.xi) + tensor_endo(S2.eta, S1.xi)
    hyps.append(residual_item(
        "phi1 phi2 + phi2 phi1 = -(eta1(x)xi2 + eta2(x)xi1)", [("matrix", anti)], sampler, kind="hypothesis"
    ))
    for it in hyps:
        rep.add(it)

    op1, op2, opt = P1.op, P2.op, Pt.op
    expansion = (
        (op1 @ op1).scale(c * c) + (op2 @ op2).scale(s * s) + ((op1 @ op2) + (op2 @ op1)).scale(c * s)
    )
    frames = frame_sections(chart)
    sq = opt @ opt
    rep.add(residual_item(
        "Phi_t^2 = cos^2 Phi1^2 + sin^2 Phi2^2 + cos sin (Phi1 Phi2 + Phi2 Phi1)",
        ((lbl, sq(A) - expansion(A)) for lbl, A in frames),
        sampler,
    ))
    target = gapc_square_target(xi_t, eta_t)
    concl = rep.add(residual_item(
        "Phi_t^2 = diag(I - eta_t(x)xi_t, (I - eta_t(x)xi_t)^*)",
        ((lbl, sq(A) - target(A)) for lbl, A in frames),
        sampler,
        kind="conditional",
    ))
    rep.add(logic_item("hypotheses => Phi_t^2 condition", hyps, [concl]))

    both_apc = check_apc(S1, sampler).passed and check_apc(S2, sampler).passed
    if both_apc and not all(h.holds for h in hyps):
        rep.add(info_item(
            "hypotheses vacuous for genuine pairs",
            "phi1 xi2 = 0 and eta1(xi2) = 0 give xi2 = phi1^2 xi2 + eta1(xi2) xi1 = 0, "
            "which contradicts eta2(xi2) = 1; no pair of almost paracontact structures meets them",
        ))
    return FamilyResult(fam, rep, ts)


# ---------------------------------------------------------- compatibility

def compatibility_check(G: GAPC, gt: Metric, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    """Anticommutation of G_gt with Phi, under g~(phi X, Y) = -g~(X, phi Y)."""
    chart = _same_chart(G.Phi, gt)
    Gm: GenMetric = gen_metric_from_riemannian(gt)
    phi = G.Phi.phi
    rep = CheckReport(f"compat {G.name}")
    hyps = [
        residual_item(
            "g~(phi X, Y) + g~(X, phi Y) = 0",
            ((lbl, gt(phi.apply(X), Y) + gt(X, phi.apply(Y))) for lbl, X, Y in _coord_pairs(chart)),
            sampler,
            kind="hypothesis",
        ),
        residual_item(
            "Phi induced (beta = 0, B = 0)",
            [("beta", G.Phi.beta), ("B", G.Phi.b)],
            sampler,
            kind="hypothesis",
        ),
    ]
    for it in hyps:
        rep.add(it)
    sig = gt.signature(sampler)
    rep.add(info_item("g~ signature", f"{sig}" if sig is not None else "varies over the sample points"))
    gop, pop = Gm.op, G.Phi.op
    anti = (gop @ pop) + (pop @ gop)
    main = rep.add(residual_item(
        "G Phi + Phi G = 0", ((lbl, anti(A)) for lbl, A in frame_sections(chart)), sampler, kind="conditional"
    ))
    comm = (gop @ pop) - (pop @ gop)
    rep.add(residual_item(
        "G Phi - Phi G = 0", ((lbl, comm(A)) for lbl, A in frame_sections(chart)), sampler, kind="info",
        note="commutator, reported alongside the anticommutator",
    ))
    flat_m = transpose(gt.comps)  # flat(X)_j = sum_i X^i g_ij
    sharp_m = gt.inverse
    phis = transpose(phi.comps)
    r1 = mat_add(mat_mul(flat_m, phi.comps), mat_mul(phis, flat_m))
    r2 = mat_add(mat_mul(sharp_m, phis), mat_mul(phi.comps, sharp_m))
    rem = [
        residual_item("flat o phi = -phi^* o flat", [("matrix", Endo(chart, r1))], sampler, kind="conditional"),
        residual_item("sharp o phi^* = -phi o sharp", [("matrix", Endo(chart, r2))], sampler, kind="conditional"),
    ]
    for it in rem:
        rep.add(it)
    rep.add(logic_item("hypothesis => G Phi = -Phi G", hyps, [main]))
    rep.add(logic_item("hypothesis => intertwining identities", hyps[:1], rem))
    return rep


# ---------------------------------------------------- B and beta transforms

def _blockwise(label: str, P: GenEndo, Q: GenEndo, sampler, kind="residual") -> CheckItem:
    return residual_item(
        label,
        [("phi", P.phi - Q.phi), ("beta", P.beta - Q.beta), ("B", P.b - Q.b)],
        sampler,
        kind=kind,
    )


def _closed_item(B: TwoForm, sampler) -> CheckItem:
    d = two_form_d(B)
    chart = B.chart
    entries = [(f"({chart.coords[i]},{chart.coords[j]},{chart.coords[k]})", e) for (i, j, k), e in d.items()]
    return residual_item("dB = 0", entries or [("", ZERO)], sampler, kind="info",
                         note="closedness is reported only; the block algebra does not use it")


def b_invariance(B2: TwoForm, S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    chart = _same_chart(B2, S.phi)
    phi = S.phi
    Phi = GenEndo.diag(phi)
    PhiB = b_transform(Phi, B2)
    rep = CheckReport(f"b-invariance {S.name}")
    cond = rep.add(residual_item(
        "B(phi X, Y) = -B(X, phi Y)",
        ((lbl, B2(phi.apply(X), Y) + B2(X, phi.apply(Y))) for lbl, X, Y in _coord_pairs(chart)),
        sampler,
        kind="hypothesis",
    ))
    rep.add(_closed_item(B2, sampler))
    cons = rep.add(_blockwise("Phi_B = Phi", PhiB, Phi, sampler, kind="conditional"))
    rep.add(logic_item("condition => Phi_B = Phi", [cond], [cons]))
    closed = b_transform_closed(Phi, B2)
    rep.add(residual_item(
        "closed-form blocks = conjugation",
        [("matrix", closed - PhiB.op)],
        sampler,
    ))
    ll = mat_add(mat_mul(transpose(B2.comps), phi.comps), mat_mul(transpose(phi.comps), transpose(B2.comps)))
    rep.add(residual_item(
        "lower-left of Phi_B = B(phi X, .) + B(X, phi .)",
        [("matrix", Endo(chart, mat_sub(transpose(PhiB.b.comps), ll)))],
        sampler,
    ))
    return rep


def b_sufficiency(B2: TwoForm, S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    chart = _same_chart(B2, S.phi)
    phi = S.phi
    phi2 = phi @ phi
    PhiB = b_transform(GenEndo.diag(phi), B2)
    rep = CheckReport(f"b-sufficiency {S.name}")
    hyps = _axiom_items(S, sampler, kind="hypothesis")
    hyps.append(residual_item(
        "B(phi^2 X, Y) = B(phi X, phi Y)",
        ((lbl, B2(phi2.apply(X), Y) - B2(phi.apply(X), phi.apply(Y))) for lbl, X, Y in _coord_pairs(chart)),
        sampler,
        kind="hypothesis",
    ))
    for it in hyps:
        rep.add(it)
    sub = check_gapc(GAPC(PhiB, S.xi, S.eta, name=f"Phi_B({S.name})"), sampler)
    rep.extend(sub, prefix="Phi_B ", kind="conditional")
    concl = [it for it in rep.items if it.label.startswith("Phi_B ")]
    rep.add(logic_item("hypotheses => Phi_B is generalized almost paracontact", hyps, concl))
    return rep


def beta_invariance(beta2: Bivector, S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    chart = _same_chart(beta2, S.phi)
    phi = S.phi
    Phi = GenEndo.diag(phi)
    Pb = beta_transform(Phi, beta2)
    rep = CheckReport(f"beta-invariance {S.name}")
    m = mat_add(mat_mul(beta2.comps, transpose(phi.comps)), mat_mul(phi.comps, beta2.comps))
    cond = rep.add(residual_item("beta o phi^* = -phi o beta", [("matrix", Endo(chart, m))], sampler, kind="hypothesis"))
    cons = rep.add(_blockwise("Phi_beta = Phi", Pb, Phi, sampler, kind="conditional"))
    rep.add(logic_item("condition => Phi_beta = Phi", [cond], [cons]))
    rep.add(residual_item(
        "closed-form blocks = conjugation", [("matrix", beta_transform_closed(Phi, beta2) - Pb.op)], sampler
    ))
    direct = mat_add(mat_mul(phi.comps, beta2.comps), mat_mul(beta2.comps, transpose(phi.comps)))
    rep.add(residual_item(
        "upper-right of Phi_beta = -phi beta - beta phi^*",
        [("matrix", Endo(chart, mat_add(Pb.beta.comps, direct)))],
        sampler,
    ))
    return rep


def beta_sufficiency(beta2: Bivector, S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> CheckReport:
    chart = _same_chart(beta2, S.phi)
    phi, xi, eta = S.phi, S.xi, S.eta
    Pb = beta_transform(GenEndo.diag(phi), beta2)
    rep = CheckReport(f"beta-sufficiency {S.name}")
    axioms = _axiom_items(S, sampler, kind="hypothesis")
    for it in axioms:
        rep.add(it)
    be = beta2.apply(eta)
    hyp = rep.add(residual_item(
        "eta(beta(alpha)) xi = alpha(xi) beta(eta)",
        ((lbl, xi.scale(eta(beta2.apply(a))) - be.scale(a(xi))) for lbl, a in _coord_forms(chart)),
        sampler,
        kind="hypothesis",
    ))
    phi2 = phi @ phi

    def proof_resid(a: OneForm):
        lhs = beta2.apply(dual_endo_apply(phi, dual_endo_apply(phi, a))) - phi2.apply(beta2.apply(a))
        return lhs - (xi.scale(eta(beta2.apply(a))) - be.scale(a(xi)))

    ident = rep.add(residual_item(
        "beta((phi^*)^2 alpha) - phi^2 beta(alpha) = eta(beta(alpha)) xi - alpha(xi) beta(eta)",
        ((lbl, proof_resid(a)) for lbl, a in _coord_forms(chart)),
        sampler,
        kind="conditional",
    ))
    rep.add(logic_item("axioms => proof identity", axioms, [ident]))
    sub = check_gapc(GAPC(Pb, xi, eta, name=f"Phi_beta({S.name})"), sampler)
    rep.extend(sub, prefix="Phi_beta ", kind="conditional")
    concl = [it for it in rep.items if it.label.startswith("Phi_beta ")]
    rep.add(logic_item("hypotheses => Phi_beta is generalized almost paracontact", axioms + [hyp], concl))
    return rep


def paracosymplectic_form(S: APC) -> TwoForm:
    """B(X, Y) = g(phi X, Y)."""
    if S.g is None:
        raise PreconditionError(f"structure {S.name} has no metric")
    # B_ij = g(phi d_i, d_j) = sum_k phi_ki g_kj
    return TwoForm(S.chart, mat_mul(transpose(S.phi.comps), S.g.comps))


def paracosymplectic_items(S: APC, sampler: SamplerConfig = DEFAULT_SAMPLER) -> list[CheckItem]:
    """d(g(phi., .)) = 0 and d eta = 0."""
    B = paracosymplectic_form(S)
    c = S.chart.coords
    entries = [(f"({c[i]},{c[j]},{c[k]})", e) for (i, j, k), e in two_form_d(B).items()]
    return [
        residual_item("d(g(phi ., .)) = 0", entries or [("", ZERO)], sampler, kind="hypothesis"),
        residual_item("d eta = 0", [("", exterior_derivative(S.eta))], sampler, kind="hypothesis"),
    ]
