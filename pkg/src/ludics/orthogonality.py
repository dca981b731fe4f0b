"""Anti-designs, orthogonality, finite behaviour workbenches, incarnation and materiality."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Optional

from .reduction import DEFAULT_FUEL, FuelExhausted, converges_to_daimon
from .terms import (
    UNDEFINED,
    X0,
    Design,
    LudicsError,
    classify,
    intersect,
    stable_leq,
    substitute,
)

__all__ = [
    "NotClosed",
    "InvalidWorkbench",
    "AntiDesign",
    "orthogonal",
    "atomic_orthogonal",
    "orthogonal_pair",
    "BehaviourWorkbench",
    "WorkbenchReport",
    "validate_workbench",
    "incarnation",
    "is_material",
    "workbench_visitable_paths",
    "CAVEAT",
]

CAVEAT = "finite workbench: quantifiers range over the listed generators and testers only"


class NotClosed(LudicsError):
    pass


class InvalidWorkbench(LudicsError):
    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


def is_atomic(t: Design) -> bool:
    return t._fv <= {X0} if t.positive else not t._fv


@dataclass(frozen=True)
class AntiDesign:
    """``[P, N1/x1, ...]`` (against negatives) or ``[N1/x1, ...]`` (against positives)."""

    positive_part: Optional[Design] = None
    bindings: tuple = ()

    def __post_init__(self):
        raw = self.bindings.items() if isinstance(self.bindings, dict) else self.bindings
        b = tuple(sorted((tuple(p) for p in raw), key=lambda p: p[0]))
        object.__setattr__(self, "bindings", b)
        xs = [x for x, _ in b]
        if len(set(xs)) != len(xs):
            raise LudicsError("the base of an anti-design must consist of distinct variables")
        for x, n in b:
            if n.positive or n._fv:
                raise LudicsError(f"binding for {x} must be a closed negative design")
        p = self.positive_part
        if p is not None and (not p.positive or not p._fv <= {X0}):
            raise LudicsError("positive part of an anti-design must be atomic positive")

    @property
    def against_negatives(self) -> bool:
        return self.positive_part is not None

    @property
    def base(self) -> frozenset:
        return frozenset(x for x, _ in self.bindings)

    def members(self):
        return ([self.positive_part] if self.positive_part is not None else []) + [n for _, n in self.bindings]

    @classmethod
    def of(cls, t: Design) -> "AntiDesign":
        """An atomic design seen as a tester: ``[N/x0]`` or ``[P]``."""
        if t.positive:
            return cls(t, ())
        return cls(None, ((X0, t),))

    def __str__(self):
        parts = [] if self.positive_part is None else [str(self.positive_part)]
        parts += [f"{n} / {x}" for x, n in self.bindings]
        return "[" + " ; ".join(parts) + "]"


def orthogonal(t: Design, g: AntiDesign, fuel: int = DEFAULT_FUEL):
    """``T ⊥ [G]``; raises ``NotClosed`` when the substituted term is open."""
    subst = dict(g.bindings)
    if t.positive:
        if g.against_negatives:
            raise LudicsError("a positive design is tested by an anti-design against positives")
        closed = substitute(t, subst) if subst else t
    else:
        if not g.against_negatives:
            raise LudicsError("a negative design is tested by an anti-design against negatives")
        inner = substitute(t, subst) if subst else t
        closed = substitute(g.positive_part, {X0: inner})
    if closed._fv:
        raise NotClosed(f"free variables {sorted(closed._fv)} remain after substitution")
    return converges_to_daimon(closed, fuel)


def atomic_orthogonal(p: Design, n: Design, fuel: int = DEFAULT_FUEL):
    """``P ⊥ N`` for atomic P and N: ``P[N/x0]`` closed and converging to ✠."""
    if not p.positive or n.positive:
        p, n = n, p
    if not p.positive or n.positive:
        raise LudicsError("atomic orthogonality needs one positive and one negative design")
    closed = substitute(p, {X0: n})
    if closed._fv:
        raise NotClosed(f"free variables {sorted(closed._fv)} remain after substitution")
    return converges_to_daimon(closed, fuel)


def orthogonal_pair(a, b, fuel: int = DEFAULT_FUEL):
    """Orthogonality between any design / anti-design combination of opposite roles."""
    if isinstance(a, Design) and isinstance(b, Design):
        if is_atomic(a) and is_atomic(b):
            return atomic_orthogonal(a, b, fuel)
        a_anti = AntiDesign.of(b) if is_atomic(b) else None
        if a_anti is None:
            raise LudicsError("one side of a design pair must be atomic")
        return orthogonal(a, a_anti, fuel)
    if isinstance(a, Design):
        return orthogonal(a, b, fuel)
    if isinstance(b, Design):
        return orthogonal(b, a, fuel)
    raise LudicsError("cannot test two anti-designs against each other")


# ----------------------------------------------------------- workbenches


@dataclass
class WorkbenchReport:
    valid: bool
    nonstandard: list = field(default_factory=list)
    non_orthogonal: list = field(default_factory=list)
    exhausted: list = field(default_factory=list)
    non_atomic: list = field(default_factory=list)
    caveat: str = CAVEAT

    def __str__(self):
        if self.valid:
            return f"workbench valid ({self.caveat})"
        lines = ["workbench invalid"]
        for t in self.nonstandard:
            lines.append(f"  not standard: {t}")
        for g, t in self.non_orthogonal:
            lines.append(f"  not orthogonal: {g}  vs  {t}")
        for g, t in self.exhausted:
            lines.append(f"  fuel exhausted: {g}  vs  {t}")
        return "\n".join(lines)


def _members(x):
    return [x] if isinstance(x, Design) else x.members()


def _polarity(x) -> bool:
    """Polarity of the paths an element produces as a generator."""
    if isinstance(x, Design):
        return x.positive
    return x.positive_part is not None


class BehaviourWorkbench:
    """Finite generators and testers standing in for a behaviour and its orthogonal."""

    def __init__(self, generators=(), testers=(), label: str = "", polarity: Optional[str] = None,
                 check: bool = True, fuel: int = DEFAULT_FUEL):
        self.generators = tuple(generators)
        self.testers = tuple(testers)
        self.label = label
        pols = {_polarity(g) for g in self.generators}
        if len(pols) > 1:
            raise LudicsError("generators of a workbench must share a polarity")
        if polarity is None:
            polarity = ("+" if pols.pop() else "-") if pols else "+"
        if polarity not in ("+", "-"):
            raise ValueError("polarity is '+' or '-'")
        if pols and (polarity == "+") != next(iter(pols)):
            raise LudicsError("declared polarity does not match the generators")
        self.polarity = polarity
        self.fuel = fuel
        if check:
            rep = validate_workbench(self, fuel)
            if not rep.valid:
                raise InvalidWorkbench(rep)

    @property
    def positive(self) -> bool:
        return self.polarity == "+"

    @property
    def atomic(self) -> bool:
        return all(isinstance(g, Design) and is_atomic(g) for g in self.generators + self.testers)

    def tester_antidesigns(self):
        return self.testers

    def dual(self, label: Optional[str] = None) -> "BehaviourWorkbench":
        pol = "-" if self.positive else "+"
        return BehaviourWorkbench(self.testers, self.generators, label or f"{self.label}^", pol, check=False, fuel=self.fuel)

    def __repr__(self):
        return f"BehaviourWorkbench({self.label!r}, {self.polarity}, {len(self.generators)} gens, {len(self.testers)} testers)"


def validate_workbench(w: BehaviourWorkbench, fuel: int = DEFAULT_FUEL) -> WorkbenchReport:
    rep = WorkbenchReport(True)
    for x in w.generators + w.testers:
        for m in _members(x):
            if not classify(m).standard:
                rep.nonstandard.append(x)
                break
    for g in w.generators:
        for t in w.testers:
            try:
                ok = orthogonal_pair(g, t, fuel)
            except LudicsError:
                ok = False
            if isinstance(ok, FuelExhausted):
                rep.exhausted.append((g, t))
            elif not ok:
                rep.non_orthogonal.append((g, t))
    rep.valid = not (rep.nonstandard or rep.non_orthogonal or rep.exhausted)
    return rep


def incarnation(u: Design, w: BehaviourWorkbench):
    """``|U|`` relative to the listed generators; ``UNDEFINED`` when an intersection is."""
    below = [v for v in w.generators if isinstance(v, Design) and v.positive == u.positive and stable_leq(v, u)]
    if not below:
        return UNDEFINED
    return reduce(lambda a, b: UNDEFINED if a is UNDEFINED else intersect(a, b), below)


def is_material(u: Design, w: BehaviourWorkbench) -> bool:
    from .terms import alpha_eq

    inc = incarnation(u, w)
    return inc is not UNDEFINED and alpha_eq(u, inc)


def workbench_visitable_paths(w: BehaviourWorkbench, fuel: int = DEFAULT_FUEL) -> frozenset:
    from .interaction import visitable

    return visitable(w, fuel).paths
