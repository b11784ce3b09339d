"""Execute the directives of a parsed session in order."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..gentangent import check_gen_metric, gen_metric_from_riemannian
from ..morphisms import check_gen_commutation, check_paracontactomorphism
from ..normality import classical_normality, generalized_normality, normality_equivalence, product_structures
from ..parastruct import (
    APC,
    b_invariance,
    b_sufficiency,
    beta_invariance,
    beta_sufficiency,
    check_apc,
    check_apc_metric,
    check_gapc,
    compatibility_check,
    gapc_block_conditions,
    induce_gapc,
    induced_square_item,
    one_param_family,
)
from ..reports import FAIL, NUMERIC_PASS, CheckReport
from ..symkernel.zero import SYMBOLIC, SamplerConfig
from .dsl import Directive, Session


@dataclass(frozen=True)
class RunConfig:
    seed: int = 20140917
    samples: int = 100
    tolerance: float = 1e-8
    strict: bool = False

    @property
    def sampler(self) -> SamplerConfig:
        return SamplerConfig(samples=self.samples, seed=self.seed, tolerance=self.tolerance)


@dataclass
class DirectiveResult:
    index: int
    directive: Directive
    reports: list[CheckReport] = field(default_factory=list)
    error: str | None = None
    ok: bool = True


@dataclass
class RunResult:
    session: str
    config: RunConfig
    results: list[DirectiveResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def reports(self) -> list[CheckReport]:
        return [rep for r in self.results for rep in r.reports]

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1


def report_failed(rep: CheckReport, strict: bool = False) -> bool:
    return rep.verdict == FAIL or (strict and rep.verdict == NUMERIC_PASS)


def failing_labels(rep: CheckReport, strict: bool = False) -> list[str]:
    if strict:
        return [i.label for i in rep.items if i.counts and i.tier != SYMBOLIC]
    return rep.failing()


def _judge(d: Directive, reports: list[CheckReport], strict: bool) -> bool:
    failed = [r for r in reports if report_failed(r, strict)]
    if d.expect is None:
        return not failed
    if not failed:
        return False
    if not d.expect:
        return True
    seen = {lbl for r in failed for lbl in failing_labels(r, strict)}
    return seen == set(d.expect)


class _Runner:
    def __init__(self, session: Session, config: RunConfig):
        self.s = session
        self.cfg = config
        self.sampler = config.sampler
        self._normal: dict[tuple[str, str], CheckReport] = {}

    def value(self, name: str):
        return self.s.get(name).value

    def _gapc(self, name: str):
        v = self.value(name)
        return induce_gapc(v, self.sampler) if isinstance(v, APC) else v

    def _normality(self, S: APC, how: str) -> CheckReport:
        key = (S.name, how)
        if key not in self._normal:
            fn = classical_normality if how == "classical" else generalized_normality
            self._normal[key] = fn(S, self.sampler)
        return self._normal[key]

    def run(self, d: Directive) -> list[CheckReport]:
        sp = self.sampler
        a = [self.value(n) for n in d.args]
        k = d.check
        if k == "apc":
            return [check_apc(a[0], sp)]
        if k == "apcmetric":
            return [check_apc_metric(a[0], sp)]
        if k == "gapc":
            return [check_gapc(self._gapc(d.args[0]), sp)]
        if k == "blocks":
            return [gapc_block_conditions(self._gapc(d.args[0]), sp)]
        if k == "induced":
            rep = CheckReport(f"induced square {a[0].name}")
            rep.add(induced_square_item(a[0], sp))
            return [rep]
        if k == "normal":
            via = d.via or "both"
            out = []
            if via in ("classical", "both"):
                out.append(self._normality(a[0], "classical"))
            if via in ("generalized", "both"):
                out.append(self._normality(a[0], "generalized"))
            if via == "both":
                out.append(normality_equivalence(a[0], sp, out[0], out[1]))
            return out
        if k == "equiv":
            S = a[0]
            return [normality_equivalence(S, sp, self._normality(S, "classical"), self._normality(S, "generalized"))]
        if k == "products":
            return [product_structures(a[0], sp)[2]]
        if k == "compat":
            return [compatibility_check(self._gapc(d.args[0]), a[1], sp)]
        if k == "btransform":
            return [b_invariance(a[1], a[0], sp), b_sufficiency(a[1], a[0], sp)]
        if k == "betatransform":
            return [beta_invariance(a[1], a[0], sp), beta_sufficiency(a[1], a[0], sp)]
        if k == "morphism":
            return [check_paracontactomorphism(a[0], a[1], a[2], sp), check_gen_commutation(a[0], a[1], a[2], sp)]
        if k == "family":
            return [one_param_family(a[0], a[1], sampler=sp).report]
        if k == "genmetric":
            return [check_gen_metric(gen_metric_from_riemannian(a[0]), sp)]
        raise ValueError(f"unknown directive {k!r}")


def run_session(session: Session, config: RunConfig | None = None) -> RunResult:
    """Run every directive; checker errors are recorded and execution continues."""
    config = config or RunConfig()
    runner = _Runner(session, config)
    results = []
    for i, d in enumerate(session.directives):
        res = DirectiveResult(i, d)
        try:
            res.reports = runner.run(d)
        except (ValueError, ArithmeticError) as e:
            res.error = f"{type(e).__name__}: {e}"
            res.ok = False
        else:
            if d.expect is not None:
                for rep in res.reports:
                    rep.expect = "fail"
            res.ok = _judge(d, res.reports, config.strict)
        results.append(res)
    return RunResult(session.name, config, results)


__all__ = ["RunConfig", "RunResult", "DirectiveResult", "run_session", "report_failed", "failing_labels"]
