"""Canonical concrete syntax for every value a session file can declare."""

from __future__ import annotations

from ..connectives import Connective
from ..interaction import MultiDesign
from ..orthogonality import AntiDesign, BehaviourWorkbench
from ..paths import Action, seq_text
from ..terms import Design, Signature, to_text

__all__ = ["render", "render_session"]


def _bracket(pos, bindings) -> str:
    parts = [] if pos is None else [to_text(pos)]
    parts += [f"{to_text(n)} / {x}" for x, n in bindings]
    return "[" + " ; ".join(parts) + "]"


def _actions(acts) -> str:
    return ", ".join(f"{a.name}({', '.join(a.args)})" for a in sorted(acts))


def render(x) -> str:
    if isinstance(x, Design):
        return to_text(x)
    if isinstance(x, (AntiDesign, MultiDesign)):
        return _bracket(x.positive_part, x.bindings)
    if isinstance(x, Connective):
        return f"({', '.join(x.bound_vars)} ; I={{{_actions(x.intro)}}} ; E={{{_actions(x.elim)}}})"
    if isinstance(x, Signature):
        return "sig { " + " ".join(f"{k}/{v}" for k, v in x.names.items()) + " }"
    if isinstance(x, BehaviourWorkbench):
        gens = ", ".join(render(g) for g in x.generators)
        tests = ", ".join(render(t) for t in x.testers)
        return f"({x.polarity}) {{ gen {gens} ; test {tests} }}"
    if isinstance(x, Action):
        return str(x)
    if isinstance(x, tuple) and all(isinstance(a, Action) for a in x):
        return seq_text(x)
    raise TypeError(f"cannot render {type(x).__name__}")


def render_session(s) -> str:
    """One declaration per line, in the order they were made."""
    lines = []
    if s.signature.names:
        lines.append(render(s.signature))
    for name in s.order:
        if name in s.designs:
            lines.append(f"design {name} = {render(s.designs[name])}")
        elif name in s.connectives:
            lines.append(f"conn {name} = {render(s.connectives[name])}")
        elif name in s.antis:
            lines.append(f"anti {name} = {render(s.antis[name])}")
        elif name in s.multis:
            lines.append(f"multi {name} = {render(s.multis[name])}")
        elif name in s.workbench_decls:
            lines.append(f"workbench {name} {render(s.workbench(name, check=False))}")
        elif name in s.sequences:
            lines.append(f"seq {name} = {render(s.sequences[name])}")
    return "\n".join(lines) + "\n"
