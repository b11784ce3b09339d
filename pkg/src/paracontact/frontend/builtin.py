"""Session files for the built-in catalog structures."""

from __future__ import annotations

from ..catalog import structures
from ..parastruct import APC
from .dsl import Declaration, Directive, Session, unparse_session


def structure_session(S: APC) -> Session:
    """Declarations for S on its chart plus the standard checks."""
    chart = S.chart
    s = Session(name=S.name)
    decls = [Declaration("manifold", chart.name, chart)]
    parts = [("endo", "phi", S.phi), ("vectorfield", "xi", S.xi), ("oneform", "eta", S.eta)]
    if S.g is not None:
        parts.append(("metric", "g", S.g))
    refs = []
    for kind, base, value in parts:
        name = f"{base}_{S.name}"
        decls.append(Declaration(kind, name, value, (chart.name,)))
        refs.append(name)
    decls.append(Declaration("apc", S.name, S, tuple(refs)))
    for d in decls:
        s.declarations[d.name] = d
    s.directives.append(Directive("apc", (S.name,)))
    if S.g is not None:
        s.directives.append(Directive("apcmetric", (S.name,)))
    s.directives.append(Directive("gapc", (S.name,)))
    s.directives.append(Directive("blocks", (S.name,)))
    return s


def catalog_sessions() -> dict[str, str]:
    """File name -> session text for every built-in structure."""
    return {f"{name}.pcs": unparse_session(structure_session(S)) for name, S in structures().items()}
