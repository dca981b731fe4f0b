import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gen import StandardGen, standard_pair
from ludics.fixtures import (
    DUAL_PATH_FIG1,
    FIG1_N,
    FIG1_P,
    FIG1_T_LEFT,
    FIG1_T_LEFT_RIGHT,
    FIG1_T_RIGHT,
    FIG1_T_RIGHT_LEFT,
    FIG1_T_STOP,
    FIG1_WB_GENERATORS,
    FIG1_WB_TESTERS,
    FIG2_D_POSITIVE,
    FIG2_E_BINDINGS,
    PATH_FIG1,
    regular_workbench,
)
from ludics.frontend import parse_design as pd
from ludics.interaction import (
    MalformedMultiDesign,
    MultiDesign,
    NotCompatible,
    anti_workbench,
    as_multidesign,
    check_regularity,
    check_shuffle_decomposition,
    compatible,
    cut_multidesigns,
    iseq,
    msd_orthogonal,
    quasi_closed_compatible,
    visitable,
)
from ludics.orthogonality import AntiDesign, BehaviourWorkbench, atomic_orthogonal
from ludics.paths import DAIMON_ACTION, canonical_seq, dual_seq, is_path_of, justifier_indices, seq_text
from ludics.reduction import Converged, normalize
from ludics.terms import DAIMON, alpha_eq


def texts(paths):
    return sorted(seq_text(p) for p in paths)


def test_fig2_union_is_not_a_multidesign():
    with pytest.raises(MalformedMultiDesign):
        MultiDesign(FIG2_D_POSITIVE, FIG2_E_BINDINGS)


def test_fig2_is_quasi_closed_compatible():
    d, e = MultiDesign(FIG2_D_POSITIVE), MultiDesign(None, FIG2_E_BINDINGS)
    assert quasi_closed_compatible(d, e)
    assert seq_text(iseq(d, e).actions) == "y1|b<x1> c^x1() y2|b<x2> c^x2() daimon"
    assert msd_orthogonal(d, e) is True


def test_cut_with_empty_is_identity():
    d = as_multidesign(FIG1_P)
    assert cut_multidesigns(d, MultiDesign()) == d


def test_cut_of_fig1_normalizes_to_daimon():
    c = cut_multidesigns(FIG1_P, FIG1_N)
    assert c.bindings == () and normalize(c.positive_part) == Converged(DAIMON)
    assert msd_orthogonal(FIG1_P, FIG1_N) is True
    assert msd_orthogonal(DAIMON, AntiDesign.of(FIG1_N)) is True


def test_stuck_pair_is_not_orthogonal():
    assert msd_orthogonal(pd("x0|a<>"), pd("{b() => daimon}")) is False


def test_incompatible_pairs():
    assert not compatible(FIG1_P, FIG1_P)
    with pytest.raises(NotCompatible):
        iseq(FIG1_P, FIG1_P)


def test_fig1_interaction_golden():
    assert iseq(FIG1_P, FIG1_N).actions == PATH_FIG1
    assert iseq(FIG1_N, FIG1_P).actions == DUAL_PATH_FIG1
    assert iseq(DAIMON, FIG1_N).actions == (DAIMON_ACTION,)
    assert iseq(FIG1_N, DAIMON).actions == ()


def test_omega_interaction_status():
    r = iseq(pd("x0|c<>"), pd("{a() => daimon}"))
    assert r.status == "omega"


def test_two_tester_workbench_frozen():
    w = BehaviourWorkbench([FIG1_P], [FIG1_T_LEFT, FIG1_N])
    got = texts(visitable(w).paths)
    assert got == ["x0|a<v0,v1> b^v0(v2) v2|c<>", "x0|a<v0,v1> b^v0(v2) v2|c<> b^v1(v3) v3|c<>"]


def test_fig1_workbench_regular():
    w = BehaviourWorkbench(FIG1_WB_GENERATORS, FIG1_WB_TESTERS)
    r = check_regularity(w, max_len=6)
    assert r.verdict == "PASS" and r.clauses == {"1": "PASS", "2": "PASS", "3": "PASS"}


def test_dropping_a_tester_breaks_shuffle_closure():
    testers = [t for t in FIG1_WB_TESTERS if t is not FIG1_T_RIGHT_LEFT]
    r = check_regularity(BehaviourWorkbench(FIG1_WB_GENERATORS, testers), max_len=6)
    assert r.verdict == "FAIL" and r.clauses["3"] == "FAIL"
    assert "x0|a<v0,v1> b^v1(v2) v2|c<> b^v0(v3) v3|c<>" in r.witnesses["3"]


def test_fig1_n_as_tester_leaves_a_branch_unvisited():
    testers = [FIG1_N, FIG1_T_RIGHT_LEFT, FIG1_T_LEFT, FIG1_T_RIGHT, FIG1_T_STOP]
    r = check_regularity(BehaviourWorkbench(FIG1_WB_GENERATORS, testers), max_len=6)
    assert r.clauses == {"1": "PASS", "2": "FAIL", "3": "PASS"}
    assert r.witnesses["2"] == ["a^x0(y1,y2) y1|b<y3> c^y3() y2|b<y4> a^y4(y5,y6) daimon"]


def test_empty_workbench_is_inconclusive():
    assert check_regularity(BehaviourWorkbench([], [], polarity="+")).verdict == "INCONCLUSIVE"


def test_testers_without_generators_fail_clause_two():
    r = check_regularity(BehaviourWorkbench([], [FIG1_N], polarity="+"))
    assert r.clauses == {"1": "PASS", "2": "FAIL", "3": "PASS"}


def test_regular_fixture_paths_frozen():
    w = regular_workbench("c", "e", "N1")
    assert texts(visitable(w).paths) == ["c^x0(v0) daimon", "c^x0(v0) v0|e<>", "eps"]
    assert texts(visitable(w.dual()).paths) == ["daimon", "x0|c<v0>", "x0|c<v0> e^v0() daimon"]
    assert check_regularity(w).verdict == "PASS"


@pytest.mark.parametrize("n", [1, 2])
def test_shuffle_decomposition(n):
    places = [("x1", regular_workbench("c", "e", "N1")), ("x2", regular_workbench("d", "f", "N2"))][:n]
    r = check_shuffle_decomposition(places, max_len=8)
    assert r.holds and r.visitable == r.shuffled


def test_anti_workbench_is_valid():
    w = anti_workbench([("x1", regular_workbench("c", "e", "N1"))])
    assert w.generators and w.testers


def _orthogonal_pairs(count, seed0=0):
    seed = seed0
    while count:
        p, n = standard_pair(seed)
        seed += 1
        if atomic_orthogonal(p, n) is True:
            count -= 1
            yield p, n


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_duality_and_prefix(seed0):
    p, n = next(_orthogonal_pairs(1, seed0))
    fwd, back = iseq(p, n), iseq(n, p)
    assert fwd.actions == dual_seq(back.actions)
    for k in range(1, len(fwd.actions) + 1):
        assert is_path_of(fwd.actions[:k], p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_orthogonality_bridge(seed):
    p, n = standard_pair(seed)
    orth = msd_orthogonal(p, n)
    assert orth == (iseq(p, n).status == "converged")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_cut_order_independence(seed, rnd):
    g = StandardGen(seed)
    p = g.pos(3, ["x1", "x2", "x3"])
    e = [(x, g.sum(3, [])) for x in ("x1", "x2", "x3")]
    base = cut_multidesigns(MultiDesign(p), MultiDesign(None, e))
    shuffled = list(e)
    rnd.shuffle(shuffled)
    other = cut_multidesigns(MultiDesign(p), MultiDesign(None, tuple(shuffled)))
    assert alpha_eq(base.positive_part, other.positive_part)
    assert [x for x, _ in base.bindings] == [x for x, _ in other.bindings]


def _under(acts, root):
    """Actions hereditarily justified by an initial action at ``root``, plus a final daimon."""
    just = justifier_indices(acts)
    keep = []
    for i, k in enumerate(acts):
        if not k.proper:
            keep.append(k)
            continue
        j = i
        while just[j] is not None:
            j = just[j]
        if acts[j].address == root:
            keep.append(k)
    return tuple(keep)


def test_associativity_for_paths():
    # interacting D with F and E at once, then keeping the part above y, matches
    # interacting the normal form of D cut against F with E alone
    checked = 0
    for seed in range(300):
        g = StandardGen(seed)
        d = g.pos(4, ["x0", "y"])
        f, e = g.sum(3, []), g.sum(3, [])
        both = iseq(MultiDesign(d), MultiDesign(None, (("x0", f), ("y", e))))
        nf = normalize(cut_multidesigns(MultiDesign(d), MultiDesign(None, (("x0", f),))).positive_part)
        if both.status != "converged" or not isinstance(nf, Converged):
            continue
        alone = iseq(nf.design, MultiDesign(None, (("y", e),)))
        proper = tuple(k for k in alone.actions if k.proper)
        assert canonical_seq(_under(both.actions, "y")[:len(proper)]) == canonical_seq(proper)
        # the daimon survives unless the tester at y played it
        last = both.actions[-1]
        by_e = last.proper and last in _under(both.actions, "y")
        assert (alone.actions[-1:] == (DAIMON_ACTION,)) == (not by_e)
        checked += 1
    assert checked >= 50
