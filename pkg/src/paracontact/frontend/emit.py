"""Text and JSON serialization of run results."""

from __future__ import annotations

import json
import math

from ..reports import CheckReport
from .runner import RunConfig, RunResult

SCHEMA_VERSION = 1


def _clean(value):
    """Plain JSON values: finite floats as float, non-finite as strings."""
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, float):
        return float(value) if math.isfinite(value) else str(value)
    return value


def result_document(result: RunResult) -> dict:
    reports = []
    directives = []
    for r in result.results:
        idx = []
        for rep in r.reports:
            d = rep.as_dict()
            d["directive"] = r.index
            idx.append(len(reports))
            reports.append(d)
        entry = {"index": r.index, "line": r.directive.line, "text": r.directive.text, "reports": idx, "ok": r.ok}
        if r.error is not None:
            entry["error"] = r.error
        directives.append(entry)
    return {
        **_header(result.session, result.config),
        "reports": reports,
        "directives": directives,
        "ok": result.ok,
    }


def _witness_text(w: dict) -> str:
    point = w.get("point") or {}
    where = "at (" + ", ".join(f"{k}={v:.6g}" for k, v in point.items()) + ")" if point else "everywhere (constant)"
    out = f"{where} frame {w.get('frame')}"
    if w.get("component"):
        out += f" component {w['component']}"
    return out


def report_text(rep: CheckReport) -> list[str]:
    lines = [f"  {rep.name}: {rep.verdict}" + (" (expected fail)" if rep.expect == "fail" else "")]
    width = max((len(i.label) for i in rep.items), default=0)
    for it in rep.items:
        line = f"    {it.kind:<11} {it.label:<{width}}  {it.tier:<13} max {it.max_abs_residual:.3g}"
        lines.append(line.rstrip())
        if it.witness is not None:
            lines.append(f"      witness {_witness_text(it.witness)}")
        if it.note:
            lines.append(f"      note: {it.note}")
    for n in rep.notes:
        lines.append(f"    note: {n}")
    return lines


def result_text(result: RunResult) -> str:
    cfg = result.config
    out = [f"session {result.session}  seed {cfg.seed}  samples {cfg.samples}  tolerance {cfg.tolerance:g}"
           + ("  strict" if cfg.strict else "")]
    for r in result.results:
        out.append(f"[{r.index + 1}] line {r.directive.line}: {r.directive.text}")
        if r.error is not None:
            out.append(f"  error: {r.error}")
        for rep in r.reports:
            out.extend(report_text(rep))
        out.append(f"  => {'ok' if r.ok else 'FAILED'}")
    bad = sum(not r.ok for r in result.results)
    out.append(f"{len(result.results)} directives, {bad} failed")
    return "\n".join(out) + "\n"


def _header(session: str, cfg: RunConfig) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "session": session,
        "seed": cfg.seed,
        "samples": cfg.samples,
        "tolerance": cfg.tolerance,
        "strict": cfg.strict,
    }


def emit_report(result: RunResult | list[CheckReport], fmt: str = "text", session: str = "session",
                config: RunConfig | None = None) -> bytes:
    """Serialize a run result, or a bare list of reports, as text or JSON bytes."""
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(result, RunResult):
        doc = result_document(result) if fmt == "json" else None
        text = result_text(result) if fmt == "text" else None
    else:
        cfg = config or RunConfig()
        doc = {**_header(session, cfg), "reports": [r.as_dict() for r in result]}
        text = "\n".join([f"session {session}  seed {cfg.seed}"] + [ln for r in result for ln in report_text(r)]) + "\n"
    if fmt == "json":
        return (json.dumps(_clean(doc), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    return text.encode("utf-8")


__all__ = ["emit_report", "result_document", "result_text", "report_text", "SCHEMA_VERSION"]
