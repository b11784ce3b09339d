import random

import pytest
from helpers import diffeo, random_const_apc

from paracontact import catalog
from paracontact import parastruct as ps
from paracontact.catalog import D_X, D_Y, D_Z, DX, DY, DZ, R3, diag_metric
from paracontact.gentangent import GenEndo
from paracontact.morphisms import check_gen_commutation, check_paracontactomorphism
from paracontact.normality import implied_lie_item, product_structures
from paracontact.reports import CheckReport, PreconditionError
from paracontact.symkernel import NONZERO, SYMBOLIC
from paracontact.tensorcalc import Endo, TwoForm, wedge_ff, wedge_vv

STRUCTS = {"S0": catalog.s0, "S1": catalog.s1, "S2": catalog.s2}


@pytest.fixture(scope="module", params=sorted(STRUCTS))
def S(request):
    return STRUCTS[request.param]()


def test_check_apc(S):
    rep = ps.check_apc(S)
    assert rep.verdict == "pass"
    assert rep.item(ps.PHI_XI).tier == SYMBOLIC
    assert rep.item(ps.ETA_PHI).tier == SYMBOLIC


def test_check_apc_metric(S):
    rep = ps.check_apc_metric(S)
    assert rep.verdict == "pass"
    for label in (ps.METRIC_ETA, ps.METRIC_XI, ps.METRIC_SKEW):
        assert rep.item(label).holds


def test_apc_metric_needs_metric():
    S = catalog.s0()
    with pytest.raises(PreconditionError):
        ps.check_apc_metric(ps.APC(S.phi, S.xi, S.eta))


def test_induced_structure_is_generalized(S):
    G = ps.induce_gapc(S)
    assert G.Phi.beta.is_zero() and G.Phi.b.is_zero()
    assert ps.check_gapc(G).verdict == "pass"
    assert ps.gapc_block_conditions(G).verdict == "pass"


def test_induced_square_identity(S):
    it = ps.induced_square_item(S)
    assert it.tier == SYMBOLIC
    assert it.checked == 36


def test_induce_requires_apc():
    bad = ps.APC(Endo.identity(R3), D_Z, DZ, name="bad")
    with pytest.raises(PreconditionError, match="phi\\^2"):
        ps.induce_gapc(bad)


@pytest.mark.parametrize("neg", catalog.negatives(), ids=lambda n: f"{n.name}-{n.check}")
def test_negatives_fail_exactly_their_item(neg):
    check = {
        "apc": ps.check_apc,
        "apcmetric": ps.check_apc_metric,
        "gapc": ps.check_gapc,
        "blocks": ps.gapc_block_conditions,
    }[neg.check]
    rep = check(neg.target)
    assert rep.verdict == "fail"
    assert rep.failing() == [neg.label]
    assert rep.item(neg.label).witness is not None


def test_bivector_along_xi_breaks_two_conditions():
    S0 = catalog.s0()
    G = ps.GAPC(GenEndo(S0.phi, wedge_vv(D_X, D_Z), TwoForm.zero(R3)), D_Z, DZ)
    assert set(ps.check_gapc(G).failing()) == {ps.GAPC_2, ps.GAPC_3}


def test_phi_invariant_bivector_breaks_square_only():
    # phi swaps x and y, so phi beta = -beta phi^* for beta = d/dx ^ d/dy
    S0 = catalog.s0()
    G = ps.GAPC(GenEndo(S0.phi, wedge_vv(D_X, D_Y), TwoForm.zero(R3)), D_Z, DZ)
    assert ps.check_gapc(G).failing() == [ps.GAPC_2]
    assert ps.gapc_block_conditions(G).failing() == ["beta(alpha, phi^* gamma) = beta(phi^* alpha, gamma)"]


def test_block_conditions_agree_with_operator_conditions():
    rng = random.Random(1)
    S0 = catalog.s0()
    for _ in range(6):
        a, b = rng.randint(-2, 2), rng.randint(-2, 2)
        G = ps.GAPC(GenEndo(S0.phi, wedge_vv(D_X, D_Y).scale(a), wedge_ff(DX, DY).scale(b)), D_Z, DZ)
        assert ps.check_gapc(G).passed == ps.gapc_block_conditions(G).passed


def test_gapc_square_target_blocks():
    a, b, c, d = ps.gapc_square_target(D_Z, DZ).blocks
    assert [str(a[i][i]) for i in range(3)] == ["1", "1", "0"]
    assert [str(d[i][i]) for i in range(3)] == ["1", "1", "0"]
    assert all(str(e) == "0" for row in b + c for e in row)


# -- one-parameter family


def test_family_of_catalog_pair(S):
    res = ps.one_param_family(catalog.s0(), S)
    rep = res.report
    assert rep.passed
    expansion = [i for i in rep.items if i.kind == "residual"]
    assert len(expansion) == 1 and expansion[0].tier == SYMBOLIC
    if S.name != "S0":
        assert rep.item("hypotheses vacuous for genuine pairs").kind == "info"
        assert rep.item("hypotheses => Phi_t^2 condition").note == "hypothesis unmet"


def test_family_rejects_parameter_clash():
    with pytest.raises(ValueError, match="collides"):
        ps.one_param_family(catalog.s0(), catalog.s1(), t="x")


def test_family_expansion_for_random_constant_pairs():
    rng = random.Random(20140917)
    for k in range(20):
        S1, S2 = random_const_apc(rng, f"A{k}"), random_const_apc(rng, f"B{k}")
        rep = ps.one_param_family(S1, S2).report
        assert rep.item("Phi_t^2 = cos^2 Phi1^2 + sin^2 Phi2^2 + cos sin (Phi1 Phi2 + Phi2 Phi1)").tier == SYMBOLIC


def test_family_hypotheses_unmet_when_xi_shared():
    # both structures share xi = d/dx, so eta1(xi2) = 1 and the hypotheses fail
    S1 = ps.APC(Endo(R3, [[0, 0, 0], [0, 0, 1], [0, 1, 0]]), D_X, DX, name="P1")
    S2 = ps.APC(Endo(R3, [[0, 0, 0], [0, 1, 0], [0, 0, -1]]), D_X, DX, name="P2")
    rep = ps.one_param_family(S1, S2).report
    assert not all(h.holds for h in rep.items if h.kind == "hypothesis")
    assert rep.passed


# -- compatibility with generalized metrics


def test_compat_lorentzian_commutes_instead_of_anticommuting():
    G = ps.induce_gapc(catalog.s0())
    rep = ps.compatibility_check(G, diag_metric(1, -1, 1))
    assert rep.item("g~(phi X, Y) + g~(X, phi Y) = 0").holds
    assert rep.item("flat o phi = -phi^* o flat").tier == SYMBOLIC
    assert rep.item("sharp o phi^* = -phi o sharp").tier == SYMBOLIC
    assert rep.item("G Phi - Phi G = 0").tier == SYMBOLIC
    anti = rep.item("G Phi + Phi G = 0")
    assert anti.tier == NONZERO
    assert anti.witness["frame"] == "d/dx"
    assert rep.item("hypothesis => G Phi = -Phi G").note.startswith("hypothesis holds but conclusion fails")


def test_compat_euclidean_fails_hypothesis():
    G = ps.induce_gapc(catalog.s0())
    rep = ps.compatibility_check(G, diag_metric(1, 1, 1))
    hyp = rep.item("g~(phi X, Y) + g~(X, phi Y) = 0")
    assert hyp.tier == NONZERO and hyp.kind == "hypothesis"
    assert rep.item("hypothesis => G Phi = -Phi G").note == "hypothesis unmet"
    assert rep.passed


# -- transforms


def test_paracosymplectic_form_of_s0():
    B = ps.paracosymplectic_form(catalog.s0())
    assert B == wedge_ff(DX, DY).scale(-1)
    assert all(i.holds for i in ps.paracosymplectic_items(catalog.s0()))


def test_b_invariance_with_paracosymplectic_form():
    S0 = catalog.s0()
    rep = ps.b_invariance(ps.paracosymplectic_form(S0), S0)
    assert rep.verdict == "pass"
    assert rep.item("B(phi X, Y) = -B(X, phi Y)").tier == SYMBOLIC
    assert rep.item("Phi_B = Phi").tier == SYMBOLIC


def test_b_sufficiency_hypothesis_fails_for_paracosymplectic_form():
    S0 = catalog.s0()
    rep = ps.b_sufficiency(ps.paracosymplectic_form(S0), S0)
    assert not rep.item("B(phi^2 X, Y) = B(phi X, phi Y)").holds
    # the conclusion holds anyway since Phi_B = Phi
    assert all(i.holds for i in rep.items if i.label.startswith("Phi_B "))


def test_b_invariance_fails_for_dx_dz():
    S0 = catalog.s0()
    rep = ps.b_invariance(wedge_ff(DX, DZ), S0)
    assert rep.item("B(phi X, Y) = -B(X, phi Y)").tier == NONZERO
    assert rep.item("Phi_B = Phi").tier == NONZERO
    assert rep.item("closed-form blocks = conjugation").tier == SYMBOLIC


def test_beta_sufficiency_dx_dy():
    S0 = catalog.s0()
    rep = ps.beta_sufficiency(wedge_vv(D_X, D_Y), S0)
    assert rep.item("eta(beta(alpha)) xi = alpha(xi) beta(eta)").tier == SYMBOLIC
    assert all(i.tier == SYMBOLIC for i in rep.items if i.label.startswith("Phi_beta "))
    assert rep.verdict == "pass"


def test_beta_sufficiency_dx_dz_witness():
    S0 = catalog.s0()
    rep = ps.beta_sufficiency(wedge_vv(D_X, D_Z), S0)
    hyp = rep.item("eta(beta(alpha)) xi = alpha(xi) beta(eta)")
    assert hyp.tier == NONZERO
    assert hyp.witness["frame"] == "dx"


def test_beta_invariance_blocks(S):
    rep = ps.beta_invariance(wedge_vv(D_X, D_Y), S)
    assert rep.item("closed-form blocks = conjugation").tier == SYMBOLIC
    assert rep.item("upper-right of Phi_beta = -phi beta - beta phi^*").tier == SYMBOLIC


# -- proposition-logic items across the catalog


def catalog_logic_reports():
    swap = diffeo("swap", ["y", "x", "z"], ["y", "x", "z"])
    S0 = catalog.s0()
    for S in catalog.structures().values():
        yield ps.one_param_family(S0, S).report
        yield ps.compatibility_check(ps.induce_gapc(S), S.g)
        yield product_structures(S)[2]
        yield CheckReport(f"implied lie {S.name}", [implied_lie_item(S)])
    for B in (catalog.b_paracosymplectic(), catalog.b_dxdz(), wedge_ff(DX, DY)):
        yield ps.b_invariance(B, S0)
        yield ps.b_sufficiency(B, S0)
    for b in (catalog.beta_dxdy(), catalog.beta_dxdz()):
        yield ps.beta_invariance(b, S0)
        yield ps.beta_sufficiency(b, S0)
    yield check_paracontactomorphism(swap, S0, S0)
    yield check_gen_commutation(swap, S0, S0)


def test_logic_items_never_contradicted_on_catalog():
    # a logic item whose hypotheses hold but whose conclusion fails is a
    # counterexample to the stated implication
    bad = [
        f"{rep.name}: {it.label}"
        for rep in catalog_logic_reports()
        for it in rep.items
        if it.kind == "logic" and it.note and it.note.startswith("hypothesis holds but conclusion fails")
    ]
    assert bad == []
