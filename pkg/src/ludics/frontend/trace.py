"""Versioned JSON form of interaction traces."""

from __future__ import annotations

import json

from ..paths import justifier_indices

SCHEMA = "ludics-trace/1"

__all__ = ["SCHEMA", "trace_dict", "emit_trace_json"]


def trace_dict(run) -> dict:
    acts = tuple(run.actions)
    just = justifier_indices(acts)
    rows = []
    for k, j in zip(acts, just):
        rows.append({
            "polarity": "positive" if k.positive else "negative",
            "kind": "daimon" if k.kind == "daimon" else "proper",
            "address": k.address,
            "name": k.name,
            "args": list(k.args),
            "justifier_index": j,
        })
    return {"schema": SCHEMA, "actions": rows, "status": run.status, "steps": run.steps}


def emit_trace_json(run) -> bytes:
    return (json.dumps(trace_dict(run), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
