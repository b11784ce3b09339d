"""Command line driver: ``check``, ``parse`` and ``catalog``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..catalog import negatives, structures
from ..symkernel.parse import ParseError
from .builtin import catalog_sessions
from .dsl import parse_session, unparse_session
from .emit import emit_report
from .runner import RunConfig, run_session

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _load(path: str):
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    return parse_session(text, name=p.name)


def _cmd_check(args) -> int:
    session = _load(args.file)
    cfg = RunConfig(seed=args.seed, samples=args.samples, tolerance=args.tolerance, strict=args.strict)
    result = run_session(session, cfg)
    sys.stdout.buffer.write(emit_report(result, args.format))
    sys.stdout.flush()
    return EXIT_OK if result.ok else EXIT_FAIL


def _cmd_parse(args) -> int:
    session = _load(args.file)
    if args.print:
        sys.stdout.write(unparse_session(session))
    else:
        print(f"{args.file}: {len(session.declarations)} declarations, {len(session.directives)} directives")
    return EXIT_OK


def _cmd_catalog(args) -> int:
    for name, S in structures().items():
        metric = "with metric" if S.g is not None else "no metric"
        print(f"{name}  on {S.chart.name}{S.chart.coords}  {metric}")
    for neg in negatives():
        print(f"{neg.name}  negative for check {neg.check}, fails {neg.label!r}")
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for fname, text in catalog_sessions().items():
            (out / fname).write_text(text, encoding="utf-8")
            print(f"wrote {out / fname}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="paracontact", description="Check almost paracontact structures.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run the directives of a session file")
    c.add_argument("file")
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.add_argument("--seed", type=int, default=RunConfig.seed)
    c.add_argument("--samples", type=int, default=RunConfig.samples)
    c.add_argument("--tolerance", type=float, default=RunConfig.tolerance)
    c.add_argument("--strict", action="store_true", help="treat numeric-pass as failure")
    c.set_defaults(func=_cmd_check)

    p = sub.add_parser("parse", help="syntax check a session file")
    p.add_argument("file")
    p.add_argument("--print", action="store_true", help="print the normalized session")
    p.set_defaults(func=_cmd_parse)

    k = sub.add_parser("catalog", help="list built-in structures and write their session files")
    k.add_argument("--out", default=".", help="directory for the session files (default: current directory)")
    k.set_defaults(func=_cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1 or getattr(args, "tolerance", 1.0) <= 0:
        print("paracontact: --samples must be positive and --tolerance greater than zero", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except OSError as e:
        print(f"paracontact: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as e:
        print(f"{args.file}:{e.line}:{e.column}: error: {e.message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
