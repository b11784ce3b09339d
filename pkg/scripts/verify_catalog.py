"""Run every structure checker over the built-in catalog and print a table.

    python3 scripts/verify_catalog.py [--samples N] [--seed N] [--json out.json]
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass

from paracontact import catalog
from paracontact import parastruct as ps
from paracontact.normality import (
    L_XI_PHI,
    N_P,
    N_PHI,
    classical_normality,
    generalized_normality,
    normality_equivalence,
)
from paracontact.symkernel import SamplerConfig


@dataclass
class Config:
    seed: int = 20140917
    samples: int = 100
    tolerance: float = 1e-8
    json: str | None = None


# S2 is the catalog's non-normal structure
KNOWN = {
    "classical normality S2": [N_PHI, L_XI_PHI],
    "generalized normality S2": [N_P],
}


def reports_for(S, sampler):
    G = ps.induce_gapc(S, sampler)
    out = [
        ps.check_apc(S, sampler),
        ps.check_gapc(G, sampler),
        ps.gapc_block_conditions(G, sampler),
    ]
    if S.g is not None:
        out.append(ps.check_apc_metric(S, sampler))
    cl, gn = classical_normality(S, sampler), generalized_normality(S, sampler)
    out += [cl, gn, normality_equivalence(S, sampler, cl, gn)]
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, default in asdict(Config()).items():
        ap.add_argument(f"--{f}", type=type(default) if default is not None else str, default=default)
    cfg = Config(**vars(ap.parse_args(argv)))
    sampler = SamplerConfig(samples=cfg.samples, seed=cfg.seed, tolerance=cfg.tolerance)

    rows = []
    for name, S in catalog.structures().items():
        for rep in reports_for(S, sampler):
            rows.append({"structure": name, "report": rep.name, "verdict": rep.verdict, "failing": rep.failing(),
                         "expected": KNOWN.get(rep.name, [])})
    for neg in catalog.negatives():
        check = {"apc": ps.check_apc, "apcmetric": ps.check_apc_metric,
                 "gapc": ps.check_gapc, "blocks": ps.gapc_block_conditions}[neg.check]
        rep = check(neg.target, sampler)
        rows.append({"structure": neg.name, "report": rep.name, "verdict": rep.verdict, "failing": rep.failing(),
                     "expected": [neg.label]})

    width = max(len(r["report"]) for r in rows)
    for r in rows:
        extra = "" if not r["failing"] else "  fails: " + "; ".join(r["failing"])
        print(f"{r['structure']:<16} {r['report']:<{width}}  {r['verdict']}{extra}")
    bad = [r for r in rows if r["expected"] != r["failing"]]
    print(f"{len(rows)} reports, {len(bad)} unexpected")
    if cfg.json:
        with open(cfg.json, "w", encoding="utf-8") as fh:
            json.dump({"config": asdict(cfg), "rows": rows}, fh, indent=2)
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
