"""Built-in example structures on R^3 (x, y, z).

S0  flat: phi swaps d/dx and d/dy, xi = d/dz, eta = dz
S1  eta = dz - y dx, phi d/dx = d/dy, phi d/dy = d/dx + y d/dz (normal)
S2  phi d/dx = e^z d/dy, phi d/dy = e^-z d/dx, eta = dz (not normal)

plus deliberately broken negatives, each failing one labeled item.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gentangent import GenEndo
from .parastruct import APC, GAPC
from .symkernel import expr_parse
from .tensorcalc import Bivector, Chart, Endo, Metric, OneForm, TwoForm, VectorField, wedge_ff, wedge_vv

R3 = Chart("R3", ("x", "y", "z"))


def _e(v) -> object:
    return expr_parse(str(v), R3.coords)


def vf(*comps, chart: Chart = R3) -> VectorField:
    return VectorField(chart, [_e(c) for c in comps])


def form(*comps, chart: Chart = R3) -> OneForm:
    return OneForm(chart, [_e(c) for c in comps])


def endo_cols(*cols, chart: Chart = R3) -> Endo:
    return Endo.from_columns(chart, [vf(*c, chart=chart) for c in cols])


def metric(rows, chart: Chart = R3) -> Metric:
    return Metric(chart, [[_e(v) for v in r] for r in rows])


def diag_metric(*d, chart: Chart = R3) -> Metric:
    n = len(d)
    return metric([[d[i] if i == j else 0 for j in range(n)] for i in range(n)], chart)


D_X, D_Y, D_Z = (VectorField.basis(R3, i) for i in range(3))
DX, DY, DZ = (OneForm.basis(R3, i) for i in range(3))


def s0() -> APC:
    return APC(endo_cols((0, 1, 0), (1, 0, 0), (0, 0, 0)), D_Z, DZ, diag_metric(1, -1, 1), name="S0")


def s1() -> APC:
    # g = dx^2 - dy^2 + eta^2
    g = metric([["1 + y^2", 0, "-y"], [0, -1, 0], ["-y", 0, 1]])
    return APC(endo_cols((0, 1, 0), (1, 0, "y"), (0, 0, 0)), D_Z, form("-y", 0, 1), g, name="S1")


def s2() -> APC:
    g = diag_metric("exp(z)", "-exp(-z)", 1)
    return APC(endo_cols((0, "exp(z)", 0), ("exp(-z)", 0, 0), (0, 0, 0)), D_Z, DZ, g, name="S2")


def structures() -> dict[str, APC]:
    return {s.name: s for s in (s0(), s1(), s2())}


@dataclass(frozen=True)
class Negative:
    """A broken structure and the single counted item it must fail."""

    name: str
    check: str
    target: object
    label: str


def negatives() -> list[Negative]:
    from . import parastruct as ps

    zero_v, zero_f = VectorField.zero(R3), OneForm.zero(R3)
    ident = Endo.identity(R3)
    s0phi = s0().phi
    return [
        Negative("N_phi_identity", "apc", APC(ident, D_Z, DZ, name="N_phi_identity"), ps.APC_SQUARE),
        Negative("N_unnormalized", "apc", APC(ident, zero_v, zero_f, name="N_unnormalized"), ps.APC_NORM),
        Negative("N_euclidean", "apcmetric", APC(s0phi, D_Z, DZ, diag_metric(1, 1, 1), name="N_euclidean"),
                 ps.METRIC_COMPAT),
        Negative("N_doubled", "gapc", GAPC(GenEndo.diag(s0phi.scale(2)), D_Z, DZ, name="N_doubled"), ps.GAPC_2),
        Negative("N_doubled", "blocks", GAPC(GenEndo.diag(s0phi.scale(2)), D_Z, DZ, name="N_doubled"), ps.BLK_SQUARE),
        Negative("N_no_xi", "gapc", GAPC(GenEndo.diag(ident), zero_v, zero_f, name="N_no_xi"), ps.GAPC_4),
        Negative("N_no_xi", "blocks", GAPC(GenEndo.diag(ident), zero_v, zero_f, name="N_no_xi"), ps.APC_NORM),
    ]


# auxiliary tensors used by the transform and morphism examples

def b_paracosymplectic() -> TwoForm:
    from .parastruct import paracosymplectic_form

    return paracosymplectic_form(s0())


def b_dxdz() -> TwoForm:
    return wedge_ff(DX, DZ)


def beta_dxdy() -> Bivector:
    return wedge_vv(D_X, D_Y)


def beta_dxdz() -> Bivector:
    return wedge_vv(D_X, D_Z)
