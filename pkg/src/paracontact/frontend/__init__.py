"""Session language, runner, serializers and command line driver."""

from .dsl import Declaration, Directive, ParseError, Session, parse_session, unparse_session
from .emit import emit_report
from .runner import DirectiveResult, RunConfig, RunResult, run_session

__all__ = [
    "Declaration", "Directive", "ParseError", "Session", "parse_session", "unparse_session",
    "emit_report", "DirectiveResult", "RunConfig", "RunResult", "run_session",
]
