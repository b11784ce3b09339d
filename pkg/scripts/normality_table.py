"""Classical versus generalized normality for catalog structures and their
images under a few coordinate changes.

    python3 scripts/normality_table.py [--samples N]
"""

from __future__ import annotations

import argparse
from dataclasses import asdict, dataclass

from paracontact import catalog
from paracontact.morphisms import Diffeo, pushforward_form, pushforward_vf
from paracontact.normality import classical_normality, generalized_normality
from paracontact.parastruct import APC
from paracontact.symkernel import SamplerConfig, expr_parse
from paracontact.tensorcalc import Endo, VectorField


@dataclass
class Config:
    seed: int = 20140917
    samples: int = 100
    tolerance: float = 1e-8


MAPS = {
    "shear": (["x", "y", "z + x*y"], ["x", "y", "z - x*y"]),
    "expy": (["x", "y + exp(x)", "z"], ["x", "y - exp(x)", "z"]),
}


def push(f: Diffeo, S: APC) -> APC:
    back = f.inverted()
    cols = [pushforward_vf(f, S.phi.apply(pushforward_vf(back, VectorField.basis(f.target, j))))
            for j in range(f.target.dim)]
    return APC(Endo.from_columns(f.target, cols), pushforward_vf(f, S.xi), pushforward_form(f, S.eta),
               name=f"{f.name}_*{S.name}")


def structures():
    base = catalog.structures()
    yield from base.values()
    for mname, (fw, inv) in MAPS.items():
        f = Diffeo(mname, catalog.R3, catalog.R3, [expr_parse(e) for e in fw], [expr_parse(e) for e in inv])
        for S in base.values():
            yield push(f, S)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, default in asdict(Config()).items():
        ap.add_argument(f"--{f}", type=type(default), default=default)
    cfg = Config(**vars(ap.parse_args(argv)))
    sampler = SamplerConfig(samples=cfg.samples, seed=cfg.seed, tolerance=cfg.tolerance)
    print(f"{'structure':<12} {'classical':<10} {'generalized':<12} agree  failing")
    disagree = 0
    for S in structures():
        cl, gn = classical_normality(S, sampler), generalized_normality(S, sampler)
        agree = cl.passed == gn.passed
        disagree += not agree
        failing = ", ".join(cl.failing() + gn.failing())
        print(f"{S.name:<12} {cl.verdict:<10} {gn.verdict:<12} {'yes' if agree else 'NO':<6} {failing}")
    return 1 if disagree else 0


if __name__ == "__main__":
    raise SystemExit(main())
