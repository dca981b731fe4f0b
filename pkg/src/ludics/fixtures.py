"""Named reference designs, sequences and connectives used across tests, docs and the CLI."""

from __future__ import annotations

from .paths import neg, pos, DAIMON_ACTION
from .terms import DAIMON, App, Signature, Sum, Var

SIG_FIG1 = Signature({"a": 2, "b": 1, "c": 0})


def _sum(**branches):
    return Sum({k: v for k, v in branches.items()})


# x0 | a<{b(x1) => x1|c<>}, {b(x2) => x2|c<>}>
FIG1_P = App(
    Var("x0"),
    "a",
    (
        _sum(b=(("x1",), App(Var("x1"), "c"))),
        _sum(b=(("x2",), App(Var("x2"), "c"))),
    ),
)

_FIG1_INNER = App(
    Var("y2"),
    "b",
    (_sum(a=(("y5", "y6"), DAIMON), c=((), DAIMON)),),
)

# {a(y1, y2) => y1|b<{c() => y2|b<{a(y5, y6) => daimon, c() => daimon}>}>}
FIG1_N = _sum(a=(("y1", "y2"), App(Var("y1"), "b", (_sum(c=((), _FIG1_INNER)),))))

PATH_FIG1 = (
    pos("x0", "a", "y1", "y2"),
    neg("y1", "b", "x1"),
    pos("x1", "c"),
    neg("y2", "b", "x2"),
    pos("x2", "c"),
)

DUAL_PATH_FIG1 = (
    neg("x0", "a", "y1", "y2"),
    pos("y1", "b", "x1"),
    neg("x1", "c"),
    pos("y2", "b", "x2"),
    neg("x2", "c"),
    DAIMON_ACTION,
)

# the positive remainder of N and the two halves of P, as a split multi-design pair
FIG2_D_POSITIVE = App(Var("y1"), "b", (_sum(c=((), _FIG1_INNER)),))
FIG2_E_BINDINGS = (
    ("y1", _sum(b=(("x1",), App(Var("x1"), "c")))),
    ("y2", _sum(b=(("x2",), App(Var("x2"), "c")))),
)

SIG_SHUFFLE = Signature({"a": 1, "b": 2, "c": 0, "d": 0})

SHUFFLE_LEFT = (pos("x1", "b", "y1", "y2"), neg("y1", "a", "y3"), pos("y3", "c"))
SHUFFLE_RIGHT = (pos("x1", "b", "y1", "y2"), neg("y2", "a", "y4"), pos("y4", "d"))
SHUFFLE_EXPECTED = frozenset(
    {
        (pos("x1", "b", "y1", "y2"), neg("y1", "a", "y3"), pos("y3", "c"), neg("y2", "a", "y4"), pos("y4", "d")),
        (pos("x1", "b", "y1", "y2"), neg("y2", "a", "y4"), pos("y4", "d"), neg("y1", "a", "y3"), pos("y3", "c")),
    }
)

# partial computation against a sum: (a(x1).P + b(x2).Q) | b<N>  and  ... | c<N>
SIG_ALPHA0 = Signature({"a": 1, "b": 1, "c": 1, "d": 0, "e": 0})
ALPHA0_P = App(Var("x1"), "d")
ALPHA0_Q = App(Var("x2"), "e")
ALPHA0_N = _sum(d=((), DAIMON), e=((), DAIMON))
ALPHA0_SUM = _sum(a=(("x1",), ALPHA0_P), b=(("x2",), ALPHA0_Q))
ALPHA0_CUT_B = App(ALPHA0_SUM, "b", (ALPHA0_N,))
ALPHA0_CUT_C = App(ALPHA0_SUM, "c", (ALPHA0_N,))


# workbench around FIG1_P: P with its partial variants against testers visiting either side,
# both sides in either order, or nothing.
FIG1_P_LEFT_DONE = App(Var("x0"), "a", (_sum(b=(("x1",), DAIMON)), _sum(b=(("x2",), App(Var("x2"), "c")))))
FIG1_P_RIGHT_DONE = App(Var("x0"), "a", (_sum(b=(("x1",), App(Var("x1"), "c"))), _sum(b=(("x2",), DAIMON))))
FIG1_P_BOTH_DONE = App(Var("x0"), "a", (_sum(b=(("x1",), DAIMON)), _sum(b=(("x2",), DAIMON))))


def _visit(first, second=None):
    tail = DAIMON if second is None else App(Var(second), "b", (_sum(c=((), DAIMON)),))
    return _sum(a=(("y1", "y2"), App(Var(first), "b", (_sum(c=((), tail)),))))


FIG1_T_LEFT_RIGHT = _visit("y1", "y2")
FIG1_T_RIGHT_LEFT = _visit("y2", "y1")
FIG1_T_LEFT = _visit("y1")
FIG1_T_RIGHT = _visit("y2")
FIG1_T_STOP = _sum(a=(("y1", "y2"), DAIMON))

FIG1_WB_GENERATORS = (FIG1_P, FIG1_P_LEFT_DONE, FIG1_P_RIGHT_DONE, FIG1_P_BOTH_DONE, DAIMON)
FIG1_WB_TESTERS = (FIG1_T_LEFT_RIGHT, FIG1_T_RIGHT_LEFT, FIG1_T_LEFT, FIG1_T_RIGHT, FIG1_T_STOP)


def regular_workbench(action: str, answer: str, label: str):
    """Negative workbench ``{a(u).u|e<>, a(u).✠}`` tested by ``✠`` and ``x0|a<{e().✠}>``."""
    from .orthogonality import BehaviourWorkbench

    gens = [_sum(**{action: (("u",), App(Var("u"), answer))}), _sum(**{action: (("u",), DAIMON)})]
    testers = [DAIMON, App(Var("x0"), action, (_sum(**{answer: ((), DAIMON)}),))]
    return BehaviourWorkbench(gens, testers, label)
