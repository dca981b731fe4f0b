import json
from pathlib import Path

import pytest
from hypothesis import given, settings

from gen import designs
import ludics.frontend as fe
from ludics.fixtures import FIG1_N, FIG1_P, PATH_FIG1
from ludics.frontend import (
    SessionSyntaxError,
    emit_trace_json,
    parse,
    parse_design,
    parse_sequence,
    render,
    render_session,
    trace_dict,
)
from ludics.interaction import iseq
from ludics.terms import alpha_eq

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
ACCEPTED = sorted((CORPUS / "accepted").glob("*.ludics"))
REJECTED = sorted((CORPUS / "rejected").glob("*.ludics"))


def _expected(path):
    first = path.read_text(encoding="utf-8").splitlines()[0]
    assert first.startswith("# expect:")
    return getattr(fe, first.split(":", 1)[1].strip())


@pytest.mark.parametrize("path", ACCEPTED, ids=[p.stem for p in ACCEPTED])
def test_accepted_round_trip(path):
    s = parse(path.read_text(encoding="utf-8"))
    text = render_session(s)
    s2 = parse(text)
    assert s2.order == s.order
    for name, d in s.designs.items():
        assert alpha_eq(d, s2.designs[name])
    assert (s.connectives, s.antis, s.multis, s.sequences) == (s2.connectives, s2.antis, s2.multis, s2.sequences)
    assert render_session(s2) == text


@pytest.mark.parametrize("path", REJECTED, ids=[p.stem for p in REJECTED])
def test_rejected(path):
    with pytest.raises(_expected(path)):
        parse(path.read_text(encoding="utf-8"))


def test_corpus_is_not_empty():
    assert len(ACCEPTED) >= 5 and len(REJECTED) >= 20


def test_error_position():
    with pytest.raises(SessionSyntaxError) as ei:
        parse("sig { a/0 }\ndesign D = daimon|a<>\n")
    assert (ei.value.line, ei.value.col) == (2, 18)


def test_fig1_file_matches_fixtures():
    s = parse((CORPUS / "accepted" / "fig1.ludics").read_text(encoding="utf-8"))
    assert alpha_eq(s.designs["P"], FIG1_P) and alpha_eq(s.designs["N"], FIG1_N)
    assert s.sequences["Path"] == PATH_FIG1


@settings(max_examples=200, deadline=None)
@given(designs(max_depth=4))
def test_render_parse_round_trip(d):
    assert alpha_eq(parse_design(render(d)), d)


def test_sequence_round_trip():
    text = "x0|a<y1,y2> b^y1(x1) x1|c<> b^y2(x2) x2|c<>"
    assert render(parse_sequence(text)) == text


def test_fig1_trace():
    data = json.loads(emit_trace_json(iseq(FIG1_P, FIG1_N)))
    assert data["schema"] == "ludics-trace/1" and data["status"] == "converged"
    acts = data["actions"]
    assert len(acts) == 5 and all(a["kind"] == "proper" for a in acts)
    assert [a["polarity"] for a in acts] == ["positive", "negative", "positive", "negative", "positive"]
    assert [a["justifier_index"] for a in acts] == [None, 0, 1, 0, 3]


def test_omega_trace():
    s = parse((CORPUS / "accepted" / "alpha0.ludics").read_text(encoding="utf-8"))
    d = trace_dict(iseq(s.designs["Probe"], s.antis["Sum0At"]))
    assert d["status"] == "omega"
    assert [(a["address"], a["name"]) for a in d["actions"]] == [("x0", "c")]


def test_trace_bytes_are_stable():
    runs = {emit_trace_json(iseq(FIG1_P, FIG1_N)) for _ in range(5)}
    assert len(runs) == 1
    (b,) = runs
    assert b.endswith(b"\n") and json.dumps(json.loads(b), sort_keys=True, indent=2).encode() + b"\n" == b


@pytest.mark.parametrize("text, cls, pos", [
    ("design D = @Missing\n", fe.UnknownName, (1, 12)),
    ("sig { a/1 }\ndesign D = x0|a<>\n", fe.ArityError, (2, 12)),
])
def test_name_and_arity_errors_carry_positions(text, cls, pos):
    with pytest.raises(cls) as ei:
        parse(text)
    assert (ei.value.line, ei.value.col) == pos
