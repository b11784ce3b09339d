import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from paracontact import catalog
from paracontact.catalog import D_X, D_Y, D_Z, DX, DY, DZ, R3, form, metric, vf
from paracontact.gentangent import (
    GenEndo,
    GenOp,
    GenSection,
    SkewnessViolation,
    b_transform,
    b_transform_closed,
    beta_transform,
    beta_transform_closed,
    check_gen_metric,
    courant_bracket,
    exp_b,
    exp_beta,
    frame_sections,
    g0_pair,
    g0_skew_item,
    gen_metric_from_riemannian,
    is_g0_orthogonal,
)
from paracontact.symkernel import Const
from paracontact.tensorcalc import Bivector, DegenerateMetric, OneForm, TwoForm, VectorField
from helpers import random_endo, random_gen_endo, random_skew
from strategies import exprs

sections = st.builds(
    lambda a, b, c, d, e, f: GenSection(VectorField(R3, [a, b, c]), OneForm(R3, [d, e, f])),
    exprs, exprs, exprs, exprs, exprs, exprs,
)


def test_frame_sections_order_and_labels():
    labels = [lbl for lbl, _ in frame_sections(R3)]
    assert labels == ["d/dx", "d/dy", "d/dz", "dx", "dy", "dz"]


def test_g0_pairing_oracle():
    A = GenSection.of(x=D_X)
    C = GenSection.of(a=DX)
    assert g0_pair(A, C) == Const(Fraction(1, 2))
    assert g0_pair(A, A) == Const(0)
    assert g0_pair(GenSection(D_Z, DZ), GenSection(D_Z, DZ)) == Const(1)


def test_courant_bracket_oracle():
    # [X, gamma] = L_X gamma - 1/2 d(gamma(X))
    gamma = form(0, "x", 0)
    assert courant_bracket(GenSection.of(x=D_X), GenSection.of(a=gamma)) == GenSection.of(a=DY)
    got = courant_bracket(GenSection.of(x=D_Y), GenSection.of(a=gamma))
    assert got == GenSection.of(a=form("-1/2", 0, 0))


def test_courant_bracket_restricts_to_lie_bracket():
    X, Y = vf("y", 0, 0), vf(0, "x*z", 1)
    br = courant_bracket(GenSection.of(x=X), GenSection.of(x=Y))
    assert br.form.is_zero()
    from paracontact.tensorcalc import lie_bracket

    assert br.vf == lie_bracket(X, Y)


@settings(max_examples=20)
@given(sections, sections)
def test_courant_bracket_antisymmetric(A, C):
    assert (courant_bracket(A, C) + courant_bracket(C, A)).is_zero()


def test_exp_b_and_exp_beta_are_orthogonal():
    rng = random.Random(5)
    for _ in range(3):
        assert is_g0_orthogonal(exp_b(random_skew(rng))).holds
        assert is_g0_orthogonal(exp_beta(random_skew(rng, cls=Bivector))).holds


def test_exp_b_inverse():
    B = TwoForm(R3, [[0, "z", "x"], ["-z", 0, "y^2"], ["-x", "-y^2", 0]])
    assert (exp_b(B) @ exp_b(-B) - GenOp.identity(R3)).is_zero()


def test_every_gen_endo_is_g0_skew():
    rng = random.Random(2)
    for _ in range(5):
        assert g0_skew_item(random_gen_endo(rng)).holds


def test_from_op_round_trip_and_violation():
    rng = random.Random(3)
    P = random_gen_endo(rng)
    assert GenEndo.from_op(P.op) == P
    with pytest.raises(SkewnessViolation):
        GenEndo.from_op(GenOp.identity(R3))


def test_apply_matches_matrix():
    rng = random.Random(4)
    P = random_gen_endo(rng)
    A = GenSection(vf("x", 1, "y"), form("z", 0, "x*y"))
    assert P.apply(A) == P.op.apply(A)


def test_b_transform_round_trip_is_exact():
    rng = random.Random(6)
    for _ in range(3):
        P = random_gen_endo(rng)
        B = random_skew(rng)
        assert b_transform(b_transform(P, B), -B) == P
        beta = random_skew(rng, cls=Bivector)
        assert beta_transform(beta_transform(P, beta), -beta) == P


def test_closed_form_b_blocks_match_conjugation():
    rng = random.Random(20140917)
    for _ in range(10):
        P, B2 = random_gen_endo(rng), random_skew(rng)
        assert (b_transform_closed(P, B2) - b_transform(P, B2).op).is_zero()


def test_printed_b_blocks_need_matching_forms():
    rng = random.Random(9)
    phi, beta, B = random_endo(rng), random_skew(rng, cls=Bivector), random_skew(rng)
    P = GenEndo(phi, beta, B)
    assert (b_transform_closed(P, B, printed=True) - b_transform(P, B).op).is_zero()


def test_closed_form_beta_blocks_match_conjugation():
    rng = random.Random(20140918)
    for _ in range(10):
        P, b2 = random_gen_endo(rng), random_skew(rng, cls=Bivector)
        assert (beta_transform_closed(P, b2) - beta_transform(P, b2).op).is_zero()


def test_printed_beta_blocks_disagree_with_conjugation():
    # the printed tail beta B phi differs from beta B beta once B is nonzero
    rng = random.Random(10)
    phi, beta, B = random_endo(rng), random_skew(rng, cls=Bivector), random_skew(rng)
    P = GenEndo(phi, beta, B)
    assert not (beta_transform_closed(P, beta, printed=True) - beta_transform(P, beta).op).is_zero()
    diag = GenEndo(phi, beta, TwoForm.zero(R3))
    assert (beta_transform_closed(diag, beta, printed=True) - beta_transform(diag, beta).op).is_zero()


def test_non_constant_b_transform_closed_form():
    P = GenEndo.diag(catalog.s1().phi)
    B2 = TwoForm(R3, [[0, "exp(z)", 0], ["-exp(z)", 0, "x"], [0, "-x", 0]])
    assert (b_transform_closed(P, B2) - b_transform(P, B2).op).is_zero()


@pytest.mark.parametrize("diag", [(1, 1, 1), (1, -1, 1), (2, 3, "1 + x^2")])
def test_generalized_metric_from_metric(diag):
    g = catalog.diag_metric(*diag)
    rep = check_gen_metric(gen_metric_from_riemannian(g))
    assert rep.passed
    assert rep.verdict == "pass"


def test_generalized_metric_reports_signature():
    rep = check_gen_metric(gen_metric_from_riemannian(catalog.diag_metric(1, -1, 1)))
    assert "not positive definite" in rep.item("g1 signature").note


def test_generalized_metric_rejects_degenerate():
    with pytest.raises(DegenerateMetric):
        gen_metric_from_riemannian(metric([[1, 0, 0], [0, 0, 0], [0, 0, 1]]))


def test_genendo_arithmetic_is_blockwise():
    rng = random.Random(12)
    P, Q = random_gen_endo(rng), random_gen_endo(rng)
    assert ((P + Q).op - (P.op + Q.op)).is_zero()
    assert ((P - Q).op - (P.op - Q.op)).is_zero()
    assert (P.scale(3).op - P.op.scale(3)).is_zero()
