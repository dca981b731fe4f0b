import pytest
from hypothesis import given, settings

from gen import designs, negative_designs, positive_designs
from ludics.fixtures import FIG1_N, FIG1_P, SIG_FIG1
from ludics.frontend import parse_design as pd
from ludics.terms import (
    DAIMON,
    OMEGA,
    UNDEFINED,
    App,
    MalformedDesign,
    Signature,
    Sum,
    Var,
    alpha_eq,
    bound_vars,
    canonicalize,
    check_design,
    classify,
    free_vars,
    intersect,
    obs_leq,
    stable_leq,
    substitute,
    to_text,
)


def test_canonicalize_renames_binders_in_order():
    assert canonicalize(pd("{a(x) => x|c<>}")) == pd("{a(v0) => v0|c<>}")
    assert canonicalize(DAIMON) == DAIMON


def test_canonicalize_fig1_n_frozen():
    # four binders, so four fresh names in pre-order
    assert to_text(canonicalize(FIG1_N)) == "{a(v0, v1) => v0|b<{c() => v1|b<{a(v2, v3) => daimon, c() => daimon}>}>}"


def test_canonical_names_skip_free_variables():
    d = pd("{a(x) => v0|c<x>}")
    assert to_text(canonicalize(d)) == "{a(v1) => v0|c<v1>}"


def test_free_vars_of_fig1():
    assert free_vars(FIG1_P) == {"x0"}
    assert free_vars(FIG1_N) == frozenset()
    assert sorted(bound_vars(FIG1_N)) == ["y1", "y2", "y5", "y6"]


def test_classification():
    assert classify(FIG1_P).standard and classify(FIG1_P).atomic
    ident = App(Var("x0"), "a", (Var("y"),))
    assert not classify(ident).identity_free
    assert not classify(pd("{a() => daimon}|a<>")).cut_free
    assert not classify(OMEGA).total
    assert not classify(pd("x0|b<{a() => y|c<>}, {a() => y|c<>}>")).linear


def test_arity_checked_against_signature():
    check_design(FIG1_P, SIG_FIG1)
    with pytest.raises(MalformedDesign):
        check_design(pd("x0|a<>"), SIG_FIG1)
    with pytest.raises(MalformedDesign):
        check_design(pd("x0|q<>"), SIG_FIG1)
    with pytest.raises(MalformedDesign):
        Signature({"a": -1})


def test_orderings():
    p = pd("x0|b<{c() => daimon}>")
    assert stable_leq(OMEGA, p)
    assert obs_leq(p, DAIMON) and not stable_leq(p, DAIMON)
    assert stable_leq(pd("{a() => daimon}"), pd("{a() => daimon, c() => daimon}"))
    assert not stable_leq(pd("{a() => daimon, c() => daimon}"), pd("{a() => daimon}"))


def test_intersection_clauses():
    assert intersect(DAIMON, DAIMON) == DAIMON
    assert intersect(OMEGA, FIG1_P) == OMEGA and intersect(FIG1_P, OMEGA) == OMEGA
    assert intersect(DAIMON, FIG1_P) is UNDEFINED
    g1, g2 = pd("{a(x) => daimon, b(y) => daimon}"), pd("{a(x) => daimon, b(y) => omega}")
    assert alpha_eq(intersect(g1, g2), g2)


def test_substitution_avoids_capture():
    d = pd("{b(y) => z|c<>}")
    out = substitute(d, {"z": pd("{c() => y|c<>}")})
    assert free_vars(out) == {"y"}


def test_sum_drops_omega_branches():
    assert pd("{a() => omega, c() => daimon}") == pd("{c() => daimon}")


def test_sum_rejects_duplicate_names():
    with pytest.raises(Exception):
        Sum([("a", (), DAIMON), ("a", (), DAIMON)])


@given(designs())
def test_alpha_eq_reflexive_and_canonical_idempotent(d):
    assert alpha_eq(d, d)
    c = canonicalize(d)
    assert canonicalize(c) == c
    assert alpha_eq(c, d)


@given(designs(), designs())
def test_alpha_eq_symmetric(d, e):
    assert alpha_eq(d, e) == alpha_eq(e, d)


@given(negative_designs(max_depth=2))
def test_text_round_trip(d):
    assert alpha_eq(pd(to_text(d)), d)


@settings(max_examples=50)
@given(positive_designs(max_depth=2), positive_designs(max_depth=2))
def test_intersection_is_below_both(t, u):
    r = intersect(t, u)
    if r is not UNDEFINED:
        assert stable_leq(r, t) and stable_leq(r, u)


@given(designs())
def test_stable_below_implies_observational(d):
    assert stable_leq(d, d) and obs_leq(d, d)
