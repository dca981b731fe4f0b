"""Cut reduction, head normal forms and the normal-form function, all fuel-bounded."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .terms import (
    DAIMON,
    OMEGA,
    App,
    Branch,
    Daimon,
    Design,
    Fresh,
    Omega,
    Sum,
    Var,
    _subst,
    canonicalize,
)

__all__ = [
    "DEFAULT_FUEL",
    "NotRedex",
    "NOT_REDEX",
    "Converged",
    "Diverged",
    "FuelExhausted",
    "EvalOutcome",
    "step",
    "head_normal_form",
    "normalize",
    "converges_to_daimon",
]

DEFAULT_FUEL = 10_000
# self-applying designs can double in size at every step; a reduct above this many
# nodes is treated like running out of fuel
MAX_TERM_SIZE = 20_000


class NotRedex:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NOT_REDEX"


NOT_REDEX = NotRedex()


@dataclass(frozen=True)
class Converged:
    design: Design


@dataclass(frozen=True)
class Diverged:
    """The Omega outcome: reduction reached Ω or a detected loop."""

    def __repr__(self):
        return "Omega"


@dataclass(frozen=True)
class FuelExhausted:
    steps: int

    def __bool__(self):
        # never silently read as "false"
        raise TypeError("FuelExhausted has no truth value; test for it explicitly")


EvalOutcome = Union[Converged, Diverged, FuelExhausted]


def _step(p: Design, fresh: Fresh):
    if isinstance(p, App) and isinstance(p.head, Sum):
        b = p.head.branch(p.name)
        if b is None:
            return OMEGA
        if len(b.params) != len(p.args):
            return OMEGA
        return _subst(b.body, dict(zip(b.params, p.args)), fresh)
    return NOT_REDEX


def step(p: Design):
    """One cut-reduction step, or ``NOT_REDEX``."""
    r = _step(p, Fresh("%"))
    return r if r is NOT_REDEX else canonicalize(r)


class _Budget:
    def __init__(self, fuel):
        if fuel <= 0:
            raise ValueError("fuel must be positive")
        self.left = fuel
        self.used = 0


def _too_big(t: Design, limit: int = MAX_TERM_SIZE) -> bool:
    stack, n = [t], 0
    while stack:
        d = stack.pop()
        n += 1
        if n > limit:
            return True
        if isinstance(d, App):
            stack.append(d.head)
            stack.extend(d.args)
        elif isinstance(d, Sum):
            stack.extend(b.body for b in d.branches)
    return False


class _OutOfFuel(Exception):
    pass


def _hnf(p: Design, budget: _Budget, fresh: Fresh) -> Design:
    seen = set()
    while isinstance(p, App) and isinstance(p.head, Sum):
        if not p._fv:
            key = canonicalize(p)
            if key in seen:
                return OMEGA
            seen.add(key)
        if budget.left <= 0:
            raise _OutOfFuel
        budget.left -= 1
        budget.used += 1
        p = _step(p, fresh)
        if _too_big(p):
            raise _OutOfFuel
    return p


def head_normal_form(t: Design, fuel: int = DEFAULT_FUEL):
    """Negative designs are returned as they are; positives reduce until head normal."""
    if t.negative:
        return t
    budget = _Budget(fuel)
    try:
        q = _hnf(t, budget, Fresh("%"))
    except _OutOfFuel:
        return FuelExhausted(budget.used)
    if isinstance(q, Omega):
        return Diverged()
    return Converged(canonicalize(q))


def _nf(t: Design, budget: _Budget, fresh: Fresh) -> Design:
    if isinstance(t, Var):
        return t
    if isinstance(t, Sum):
        return Sum([Branch(b.name, b.params, _nf(b.body, budget, fresh)) for b in t.branches])
    q = _hnf(t, budget, fresh)
    if isinstance(q, (Daimon, Omega)):
        return q
    return App(q.head, q.name, tuple(_nf(a, budget, fresh) for a in q.args))


def normalize(t: Design, fuel: int = DEFAULT_FUEL) -> EvalOutcome:
    """The normal form ⟦t⟧.  Fuel is shared by every cut step in the whole term."""
    budget = _Budget(fuel)
    try:
        r = _nf(t, budget, Fresh("%"))
    except _OutOfFuel:
        return FuelExhausted(budget.used)
    if isinstance(r, Omega):
        return Diverged()
    return Converged(canonicalize(r))


def converges_to_daimon(p: Design, fuel: int = DEFAULT_FUEL):
    """True iff ⟦p⟧ = ✠; a ``FuelExhausted`` value when the budget runs out."""
    if p.negative:
        return False
    # ⟦p⟧ = ✠ exactly when p ⇓ ✠, so the head normal form decides it
    out = head_normal_form(p, fuel)
    if isinstance(out, FuelExhausted):
        return out
    return isinstance(out, Converged) and out.design == DAIMON
