"""Session-file language: parsing, rendering and JSON traces."""

from .parser import (
    ArityError,
    FrontendError,
    SessionFile,
    SessionSyntaxError,
    UnknownName,
    parse,
    parse_design,
    parse_sequence,
    tokenize,
)
from .render import render, render_session
from .trace import SCHEMA, emit_trace_json, trace_dict

__all__ = [
    "ArityError", "FrontendError", "SessionFile", "SessionSyntaxError", "UnknownName",
    "parse", "parse_design", "parse_sequence", "tokenize",
    "render", "render_session", "SCHEMA", "emit_trace_json", "trace_dict",
]
