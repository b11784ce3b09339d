"""Check reports: labeled residual items with zero verdicts.

An item aggregates one condition over all frame elements it was evaluated
on. Item kinds:

``residual``     counts toward the verdict
``logic``        an implication hypothesis => conclusion; counts
``hypothesis``   reported, does not count
``conditional``  a conclusion only claimed under hypotheses; does not count
``info``         free-form note, does not count
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .symkernel import Expr, as_expr
from .symkernel.zero import (
    DEFAULT_SAMPLER,
    NONZERO,
    NUMERIC,
    SYMBOLIC,
    TIER_RANK,
    SamplerConfig,
    expr_is_zero,
    sample_points,
)
from .tensorcalc import Bivector, Endo, Metric, OneForm, TwoForm, VectorField

PASS = "pass"
NUMERIC_PASS = "numeric-pass"
FAIL = "fail"

COUNTED = ("residual", "logic")


class PreconditionError(ValueError):
    pass


@dataclass
class CheckItem:
    label: str
    tier: str
    max_abs_residual: float = 0.0
    witness: dict | None = None
    kind: str = "residual"
    checked: int = 0
    residual: str | None = None
    note: str | None = None

    @property
    def holds(self) -> bool:
        return self.tier in (SYMBOLIC, NUMERIC)

    @property
    def counts(self) -> bool:
        return self.kind in COUNTED

    def as_dict(self) -> dict:
        d = {
            "label": self.label,
            "kind": self.kind,
            "tier": self.tier,
            "max_abs_residual": self.max_abs_residual,
            "checked": self.checked,
        }
        if self.witness is not None:
            d["witness"] = self.witness
        if self.residual is not None:
            d["residual"] = self.residual
        if self.note is not None:
            d["note"] = self.note
        return d


@dataclass
class CheckReport:
    name: str
    items: list[CheckItem] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    expect: str | None = None

    @property
    def verdict(self) -> str:
        tiers = [i.tier for i in self.items if i.counts]
        if all(t == SYMBOLIC for t in tiers):
            return PASS
        if all(t != NONZERO for t in tiers):
            return NUMERIC_PASS
        return FAIL

    @property
    def passed(self) -> bool:
        return self.verdict != FAIL

    def item(self, label: str) -> CheckItem:
        for it in self.items:
            if it.label == label:
                return it
        raise KeyError(f"no item {label!r} in report {self.name!r}")

    def failing(self) -> list[str]:
        return [i.label for i in self.items if i.counts and not i.holds]

    def add(self, item: CheckItem) -> CheckItem:
        self.items.append(item)
        return item

    def extend(self, other: CheckReport, prefix: str = "", kind: str | None = None):
        for it in other.items:
            copy = CheckItem(**{**it.__dict__})
            copy.label = prefix + it.label
            if kind is not None and copy.counts:
                copy.kind = kind
            self.items.append(copy)

    def as_dict(self) -> dict:
        d = {"name": self.name, "items": [i.as_dict() for i in self.items], "verdict": self.verdict}
        if self.notes:
            d["notes"] = list(self.notes)
        if self.expect is not None:
            d["expect"] = self.expect
        return d


# ------------------------------------------------------------ flattening

def components(value) -> list[tuple[str, Expr]]:
    """Flatten a residual value into labeled scalar components."""
    if isinstance(value, VectorField):
        return [(f"d/d{c}", e) for c, e in zip(value.chart.coords, value.comps)]
    if isinstance(value, OneForm):
        return [(f"d{c}", e) for c, e in zip(value.chart.coords, value.comps)]
    if isinstance(value, (TwoForm, Bivector, Endo, Metric)):
        cs = value.chart.coords
        return [(f"[{cs[i]},{cs[j]}]", e) for i, row in enumerate(value.comps) for j, e in enumerate(row)]
    if hasattr(value, "matrix"):
        m = value.matrix
        return [(f"[{i},{j}]", e) for i, row in enumerate(m) for j, e in enumerate(row)]
    if hasattr(value, "vf") and hasattr(value, "form"):
        return components(value.vf) + components(value.form)
    if isinstance(value, (tuple, list)):
        out = []
        for i, v in enumerate(value):
            out.extend((f"[{i}]{lbl}", e) for lbl, e in components(v))
        return out
    return [("", as_expr(value))]


def _describe(value) -> str:
    return str(value)


def _coords_of(value) -> tuple[str, ...]:
    chart = getattr(value, "chart", None) or getattr(getattr(value, "vf", None), "chart", None)
    return chart.coords if chart is not None else ()


def _full_point(point: dict, coords, sampler: SamplerConfig) -> dict:
    """Complete a witness with every chart coordinate, in chart order.

    The residual does not depend on the missing coordinates, so the first
    seeded sample value serves for them.
    """
    missing = [c for c in coords if c not in point]
    if not missing:
        return point
    fill = sample_points(missing, sampler)
    full = {c: point[c] if c in point else float(fill[c][0]) for c in coords}
    full.update({k: v for k, v in point.items() if k not in full})
    return full


def residual_item(
    label: str,
    entries: Iterable[tuple[str, object]],
    sampler: SamplerConfig = DEFAULT_SAMPLER,
    kind: str = "residual",
    note: str | None = None,
) -> CheckItem:
    """Zero-test every component of every (frame label, residual) entry."""
    worst_tier = SYMBOLIC
    worst_res = 0.0
    witness = None
    residual_text = None
    checked = 0
    for frame, value in entries:
        for comp, e in components(value):
            checked += 1
            v = expr_is_zero(e, sampler)
            if TIER_RANK[v.tier] > TIER_RANK[worst_tier]:
                worst_tier = v.tier
            if v.tier == NONZERO and witness is None:
                point = _full_point(v.witness or {}, _coords_of(value), sampler)
                witness = {"point": point, "frame": frame, "component": comp}
                residual_text = _describe(value)
            worst_res = max(worst_res, v.max_abs_residual)
    return CheckItem(label, worst_tier, worst_res, witness, kind, checked, residual_text, note)


def logic_item(label: str, hypotheses: list[CheckItem], conclusions: list[CheckItem]) -> CheckItem:
    """hypotheses all hold => conclusions all hold."""
    hyp = all(h.holds for h in hypotheses)
    if not hyp:
        return CheckItem(label, SYMBOLIC, kind="logic", note="hypothesis unmet")
    bad = [c.label for c in conclusions if not c.holds]
    if bad:
        return CheckItem(label, NONZERO, kind="logic", note="hypothesis holds but conclusion fails: " + ", ".join(bad))
    numeric = any(c.tier == NUMERIC for c in conclusions + hypotheses)
    return CheckItem(label, NUMERIC if numeric else SYMBOLIC, kind="logic", note="hypothesis holds and conclusion holds")


def info_item(label: str, note: str) -> CheckItem:
    return CheckItem(label, SYMBOLIC, kind="info", note=note)
