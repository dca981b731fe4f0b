"""Acceptance criteria 1-10, one check each.

Run under pytest for pass/fail plus a summary line per criterion, or directly with
``python3 tests/test_acceptance.py`` to print only the summary lines.
"""

from __future__ import annotations

import glob
import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from gen import FREE, Gen, standard_pair  # noqa: E402

from ludics.connectives import (  # noqa: E402
    ALPHA0,
    DELTA,
    GAMMA,
    SHIFT_DOWN,
    SHIFT_UP,
    WITH,
    beta_check_exhaustive,
    check_dual_decomposability_connective,
    check_harmony,
    enumerate_connectives,
    eta_condition_check,
)
from ludics.fixtures import (  # noqa: E402
    ALPHA0_CUT_B,
    ALPHA0_CUT_C,
    ALPHA0_N,
    ALPHA0_Q,
    DUAL_PATH_FIG1,
    FIG1_N,
    FIG1_P,
    PATH_FIG1,
    SHUFFLE_EXPECTED,
    SHUFFLE_LEFT,
    SHUFFLE_RIGHT,
    regular_workbench,
)
from ludics.frontend import emit_trace_json, parse, render, render_session  # noqa: E402
from ludics.interaction import check_dual_decomposability_paths, check_shuffle_decomposition, iseq  # noqa: E402
from ludics.orthogonality import atomic_orthogonal  # noqa: E402
from ludics.paths import dual_seq, is_path_of, shuffle  # noqa: E402
from ludics.reduction import Converged, FuelExhausted, normalize, step  # noqa: E402
from ludics.terms import OMEGA, Omega, alpha_eq, substitute  # noqa: E402

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
RESULTS: dict = {}


def _c1():
    fwd = iseq(FIG1_P, FIG1_N)
    back = iseq(FIG1_N, FIG1_P)
    ok = fwd.actions == PATH_FIG1 and back.actions == DUAL_PATH_FIG1 and len(fwd.actions) == 5
    return ok, f"{len(fwd.actions)} actions forward, {len(back.actions)} back", 1


def _c2():
    got = shuffle(SHUFFLE_LEFT, SHUFFLE_RIGHT)
    return got == SHUFFLE_EXPECTED, f"{len(got)} interleavings", 1


def _c3():
    good = all(check_harmony(c).harmony for c in (WITH, SHIFT_DOWN, SHIFT_UP))
    bad = all(not r.inversion and not r.recovery for r in map(check_harmony, (GAMMA, DELTA, ALPHA0)))
    overlap = {str(a) for a in check_harmony(ALPHA0).overlap} == {"b(x2)"}
    return good and bad and overlap, "With, Down, Up harmonious; Gamma, Delta, Alpha0 fail both", 1


def _c4():
    memo, n, bad = {}, 0, []
    for c in enumerate_connectives():
        n += 1
        h = check_harmony(c).harmony
        b = beta_check_exhaustive(c, _memo=memo)
        e, _ = eta_condition_check(c)
        if h != (b and e):
            bad.append(c)
    return not bad and n > 0, f"{n} connectives, {len(bad)} discrepancies", 60


def _value(r):
    return r.design if isinstance(r, Converged) else OMEGA


def _c5():
    fails = skipped = 0
    for seed in range(1000):
        g = Gen(seed)
        t = g.design(4)
        ns = {x: g.neg(3, []) for x in FREE if g.r.random() < 0.7}
        lhs = normalize(substitute(t, ns))
        inner = normalize(t)
        parts = {x: normalize(n) for x, n in ns.items()}
        if any(isinstance(r, FuelExhausted) for r in [lhs, inner, *parts.values()]):
            skipped += 1
            continue
        rhs = normalize(substitute(_value(inner), {x: _value(v) for x, v in parts.items()}))
        if isinstance(rhs, FuelExhausted):
            skipped += 1
            continue
        fails += not alpha_eq(_value(lhs), _value(rhs))
    return fails == 0, f"1000 designs, {fails} failures, {skipped} skipped for fuel", 30


def _c6():
    n = seed = fails = 0
    while n < 200:
        p, m = standard_pair(seed)
        seed += 1
        if atomic_orthogonal(p, m) is not True:
            continue
        n += 1
        fwd, back = iseq(p, m), iseq(m, p)
        if fwd.actions != dual_seq(back.actions):
            fails += 1
        for run, d in ((fwd, p), (back, m)):
            if not all(is_path_of(run.actions[:k], d) for k in range(1, len(run.actions) + 1)):
                fails += 1
    return fails == 0, f"200 orthogonal pairs, {fails} failures", 30


def _c7():
    places = [("x1", regular_workbench("c", "e", "N1")), ("x2", regular_workbench("d", "f", "N2"))]
    r = check_shuffle_decomposition(places, max_len=8)
    return r.holds and len(r.visitable) > 1, f"{len(r.visitable)} paths on both sides", 30


def _c8():
    wbs = [regular_workbench("c", "e", "N1"), regular_workbench("d", "f", "N2")]
    with_ok = (check_dual_decomposability_connective(WITH, wbs).verdict == "PASS"
               and check_dual_decomposability_paths(WITH, wbs).verdict == "PASS")
    fails = []
    for c, ws in ((ALPHA0, wbs), (GAMMA, wbs + [regular_workbench("c", "e", "N3")])):
        a = check_dual_decomposability_connective(c, ws)
        b = check_dual_decomposability_paths(c, ws)
        fails.append(a.verdict == "FAIL" and a.witnesses and b.verdict == "FAIL" and b.witnesses)
    return with_ok and all(fails), "With passes both levels; Alpha0 and Gamma fail both with witnesses", 60


def _c9():
    b = step(ALPHA0_CUT_B)
    c = step(ALPHA0_CUT_C)
    ok = alpha_eq(b, substitute(ALPHA0_Q, {"x2": ALPHA0_N})) and isinstance(c, Omega)
    return ok, f"b-cut -> {b}, c-cut -> {c}", 1


def _c10():
    files = sorted(glob.glob(os.path.join(ROOT, "corpus", "accepted", "*.ludics")))
    bad = []
    for f in files:
        s = parse(open(f, encoding="utf-8").read())
        s2 = parse(render_session(s))
        for name in s.designs:
            if not alpha_eq(s.designs[name], s2.designs[name]):
                bad.append(f"{f}:{name}")
        for table in ("connectives", "antis", "multis", "sequences"):
            if getattr(s, table) != getattr(s2, table):
                bad.append(f"{f}:{table}")
        if render_session(s2) != render_session(s):
            bad.append(f"{f}: render not stable")
    for d in (FIG1_P, FIG1_N, ALPHA0_CUT_B, ALPHA0_CUT_C):
        if not alpha_eq(parse(f"design D = {render(d)}").designs["D"], d):
            bad.append(str(d))
    traces = [emit_trace_json(iseq(FIG1_P, FIG1_N)) for _ in range(3)]
    stable = len(set(traces)) == 1
    return not bad and stable and files, f"{len(files)} corpus files, byte-stable traces: {stable}", 5


CRITERIA = {
    1: ("interaction of the two-branch golden pair in both orientations", _c1),
    2: ("shuffle golden example", _c2),
    3: ("harmony verdicts", _c3),
    4: ("harmony iff beta and eta over all small connectives", _c4),
    5: ("associativity on random designs", _c5),
    6: ("interaction duality and prefix property", _c6),
    7: ("binary shuffle decomposition of visitable paths", _c7),
    8: ("dual decomposability checkers", _c8),
    9: ("partial computation of the alpha0 cuts", _c9),
    10: ("frontend round trip and stable traces", _c10),
}


def run(n):
    title, fn = CRITERIA[n]
    t = time.perf_counter()
    ok, detail, limit = fn()
    dt = time.perf_counter() - t
    ok = bool(ok) and dt < limit
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {title} -- {detail} ({dt:.2f}s, limit {limit}s)"
    RESULTS[n] = line
    return ok, line


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n):
    ok, line = run(n)
    print(line)
    assert ok, line


if __name__ == "__main__":
    worst = 0
    for n in sorted(CRITERIA):
        ok, line = run(n)
        print(line, flush=True)
        worst = worst or (not ok)
    sys.exit(1 if worst else 0)
