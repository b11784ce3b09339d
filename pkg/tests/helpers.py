"""Shared test helpers."""

import re
from fractions import Fraction

from paracontact.catalog import R3, form, vf
from paracontact.frontend import parse_session
from paracontact.frontend.dsl import DIRECTIVES
from paracontact.gentangent import GenEndo
from paracontact.morphisms import Diffeo, pushforward_form, pushforward_vf
from paracontact.parastruct import APC
from paracontact.symkernel import expr_parse
from paracontact.tensorcalc import Bivector, Endo, TwoForm, VectorField


def diffeo(name, fw, inv, source=R3, target=R3):
    return Diffeo(name, source, target, [expr_parse(e) for e in fw], [expr_parse(e) for e in inv])


def push_structure(f: Diffeo, S: APC) -> APC:
    """The structure on the target making f a paracontactomorphism."""
    back = f.inverted()
    cols = []
    for j in range(f.target.dim):
        X = pushforward_vf(back, VectorField.basis(f.target, j))
        cols.append(pushforward_vf(f, S.phi.apply(X)))
    phi = Endo.from_columns(f.target, cols)
    return APC(phi, pushforward_vf(f, S.xi), pushforward_form(f, S.eta), name=f"{f.name}_*{S.name}")


def random_skew(rng, chart=R3, cls=TwoForm, lo=-3, hi=3):
    n = chart.dim
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
            m[i][j], m[j][i] = v, -v
    return cls(chart, m)


def random_endo(rng, chart=R3):
    n = chart.dim
    return Endo(chart, [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)])


def random_gen_endo(rng):
    return GenEndo(random_endo(rng), random_skew(rng, cls=Bivector), random_skew(rng))


def random_const_apc(rng, name):
    """Constant rational (phi, xi, eta), not necessarily almost paracontact."""
    cols = [vf(*[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(3)]) for _ in range(3)]
    xi = vf(*[rng.randint(-2, 2) for _ in range(3)])
    eta = form(*[rng.randint(-2, 2) for _ in range(3)])
    return APC(Endo.from_columns(R3, cols), xi, eta, name=name)


PRODUCTIONS = [
    "manifold", "vectorfield", "oneform", "twoform", "bivector", "metric", "endo",
    "structure apc", "structure apc with metric", "structure gapc", "map",
    "via", "expect fail", "expect fail labels", "multi-line block", "comment",
] + [f"check {k}" for k in DIRECTIVES]


def productions_used(text):
    s = parse_session(text)
    used = {d.kind for d in s.declarations.values()}
    for d in s.of_kind("apc"):
        used.add("structure apc")
        if d.value.g is not None:
            used.add("structure apc with metric")
    if s.of_kind("gapc"):
        used.add("structure gapc")
    for d in s.directives:
        used.add(f"check {d.check}")
        if d.via:
            used.add("via")
        if d.expect is not None:
            used.add("expect fail labels" if d.expect else "expect fail")
    if re.search(r"\{[^}\n]*\n", text):
        used.add("multi-line block")
    if re.search(r"#", text):
        used.add("comment")
    return used
