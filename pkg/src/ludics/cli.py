"""Command-line front end.

Exit codes: 0 check passed or value computed, 1 check failed (a witness is printed),
2 inconclusive or out of fuel, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .connectives import LIBRARY, check_dual_decomposability_connective, check_harmony
from .frontend import FrontendError, emit_trace_json, parse, render, trace_dict
from .interaction import check_dual_decomposability_paths, check_regularity, iseq, msd_orthogonal
from .orthogonality import orthogonal_pair
from .paths import paths_of, seq_text, shuffle
from .reduction import DEFAULT_FUEL, Converged, Diverged, FuelExhausted, normalize
from .terms import LudicsError

OK, FAILED, INCONCLUSIVE, BAD_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    return parse(text)


def _get(session, name, *tables):
    for t in tables:
        table = getattr(session, t)
        if name in table:
            return table[name]
    raise InputError(f"{name} is not defined as one of: {', '.join(tables)}")


def _emit(args, payload: dict, text: str):
    if args.json_out:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_normalize(args):
    s = _load(args.file)
    d = _get(s, args.design, "designs")
    r = normalize(d, args.fuel)
    if isinstance(r, FuelExhausted):
        _emit(args, {"result": None, "status": "fuel_exhausted", "steps": r.steps}, f"fuel exhausted after {r.steps} steps")
        return INCONCLUSIVE
    out = "omega" if isinstance(r, Diverged) else render(r.design)
    _emit(args, {"result": out, "status": "converged" if isinstance(r, Converged) else "omega"}, out)
    return OK


def cmd_orthogonal(args):
    s = _load(args.file)
    a = _get(s, args.design, "designs", "antis", "multis")
    b = _get(s, args.anti, "designs", "antis", "multis")
    from .interaction import MultiDesign

    if isinstance(a, MultiDesign) or isinstance(b, MultiDesign):
        r = msd_orthogonal(a, b, args.fuel)
    else:
        r = orthogonal_pair(a, b, args.fuel)
    if isinstance(r, FuelExhausted):
        _emit(args, {"orthogonal": None, "status": "fuel_exhausted"}, "inconclusive: fuel exhausted")
        return INCONCLUSIVE
    witness = None
    if not r:
        try:
            witness = seq_text(iseq(a, b, args.fuel).actions)
        except LudicsError:
            witness = None
    text = "orthogonal: " + str(bool(r)).lower() + (f"\ninteraction: {witness}" if witness else "")
    _emit(args, {"orthogonal": bool(r), "witness": witness}, text)
    return OK if r else FAILED


def cmd_interact(args):
    s = _load(args.file)
    d = _get(s, args.left, "designs", "antis", "multis")
    e = _get(s, args.right, "designs", "antis", "multis")
    run = iseq(d, e, args.fuel)
    if args.json:
        data = emit_trace_json(run)
        if args.json == "-":
            sys.stdout.write(data.decode("utf-8"))
        else:
            Path(args.json).write_bytes(data)
    if args.json != "-":
        if args.json_out:
            print(json.dumps(trace_dict(run), sort_keys=True, indent=2))
        else:
            print(seq_text(run.actions))
            if run.status != "converged":
                print(f"status: {run.status}")
    return {"converged": OK, "omega": FAILED}.get(run.status, INCONCLUSIVE)


def _connective(s, name):
    if name in s.connectives:
        return s.connectives[name]
    if name in LIBRARY:
        return LIBRARY[name]
    raise InputError(f"connective {name} is not defined")


def cmd_harmony(args):
    s = _load(args.file)
    c = _connective(s, args.conn)
    r = check_harmony(c)
    payload = {"inversion": r.inversion, "recovery": r.recovery, "harmony": r.harmony,
               "missing_from_intro": sorted(map(str, r.missing_from_intro)),
               "missing_from_elim": sorted(map(str, r.missing_from_elim))}
    _emit(args, payload, str(r))
    return OK if r.harmony else FAILED


def _workbench(session, ref):
    """``NAME`` from the session file, or ``PATH:NAME`` from another file."""
    if ":" in ref:
        path, name = ref.rsplit(":", 1)
        return _load(path).workbench(name)
    return session.workbench(ref)


def cmd_decompose(args):
    s = _load(args.file)
    c = _connective(s, args.conn)
    wbs = [_workbench(s, w) for w in args.workbench]
    if args.mode == "connective":
        r = check_dual_decomposability_connective(c, wbs, args.fuel)
        payload = {"verdict": r.verdict, "witnesses": [{k: str(v) for k, v in w.items()} for w in r.witnesses],
                   "notes": r.notes}
    else:
        r = check_dual_decomposability_paths(c, wbs, args.fuel, args.max_len)
        payload = {"verdict": r.verdict, "elim_equal": r.elim_equal, "intro_equal": r.intro_equal,
                   "witnesses": [{k: str(v) for k, v in w.items()} for w in r.witnesses], "notes": r.notes}
    _emit(args, payload, str(r))
    return {"PASS": OK, "FAIL": FAILED}.get(r.verdict, INCONCLUSIVE)


def cmd_paths(args):
    s = _load(args.file)
    t = _get(s, args.design, "designs", "antis", "multis")
    ps = sorted(seq_text(p) for p in paths_of(t, args.max_len))
    _emit(args, {"paths": ps, "max_len": args.max_len}, "\n".join(ps))
    return OK


def cmd_shuffle(args):
    s = _load(args.file)
    if len(args.seq) != 2:
        raise InputError("shuffle takes exactly two --seq options")
    p, q = (_get(s, n, "sequences") for n in args.seq)
    r = shuffle(p, q)
    if not r:
        _emit(args, {"shuffle": None}, "undefined")
        return FAILED
    out = sorted(seq_text(x) for x in r)
    _emit(args, {"shuffle": out}, "\n".join(out))
    return OK


def cmd_regularity(args):
    s = _load(args.file)
    w = _workbench(s, args.workbench)
    dual = _workbench(s, args.dual) if args.dual else None
    r = check_regularity(w, dual, args.fuel, args.max_len)
    _emit(args, {"verdict": r.verdict, "clauses": r.clauses, "witnesses": r.witnesses, "max_len": r.max_len,
                 "scoped": r.scoped}, str(r))
    return {"PASS": OK, "FAIL": FAILED}.get(r.verdict, INCONCLUSIVE)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ludics", description="Designs, orthogonality and connectives on finite instances.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
        p.add_argument("--json-out", action="store_true", help="machine-readable output on stdout")
        p.set_defaults(fn=fn)
        return p

    add("normalize", cmd_normalize, "normal form of a design").add_argument("--design", required=True)
    p = add("orthogonal", cmd_orthogonal, "test a design against an anti-design")
    p.add_argument("--design", required=True)
    p.add_argument("--anti", required=True)
    p = add("interact", cmd_interact, "interaction sequence of two multi-designs")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--json", metavar="OUT", help="write a JSON trace to OUT ('-' for stdout)")
    add("harmony", cmd_harmony, "harmony of a connective").add_argument("--conn", required=True)
    p = add("decompose", cmd_decompose, "dual decomposability of a connective")
    p.add_argument("--conn", required=True)
    p.add_argument("--mode", choices=("connective", "paths"), default="connective")
    p.add_argument("--max-len", type=int, default=8)
    p.add_argument("--workbench", action="append", default=[], help="NAME or PATH:NAME, one per bound variable, in order")
    p = add("paths", cmd_paths, "paths of a design up to a length")
    p.add_argument("--design", required=True)
    p.add_argument("--max-len", type=int, default=6)
    add("shuffle", cmd_shuffle, "shuffle of two sequences").add_argument("--seq", action="append", default=[])
    p = add("regularity", cmd_regularity, "finite regularity check of a workbench")
    p.add_argument("--workbench", required=True)
    p.add_argument("--dual")
    p.add_argument("--max-len", type=int, default=8)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return BAD_INPUT if e.code else OK
    try:
        return args.fn(args)
    except (InputError, FrontendError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except LudicsError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
