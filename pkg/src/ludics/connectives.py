"""Connectives, harmony, the (β)/(η) checks, counter sets, α_⊥ and design-level dual decomposability."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .reduction import DEFAULT_FUEL, FuelExhausted, step
from .terms import (
    DAIMON,
    OMEGA,
    X0,
    App,
    Branch,
    Daimon,
    Design,
    Fresh,
    LudicsError,
    Omega,
    Signature,
    Sum,
    Var,
    alpha_eq,
    substitute,
)

__all__ = [
    "ArityMismatch",
    "NegativeAction",
    "Connective",
    "ConnectiveReport",
    "validate_connective",
    "HarmonyReport",
    "check_harmony",
    "beta_condition_check",
    "beta_check_exhaustive",
    "BODY_POOL",
    "ARG_POOL",
    "eta_expand",
    "eta_condition_check",
    "counter_set_intro",
    "counter_set_elim",
    "dual_connective",
    "DDReport",
    "check_dual_decomposability_connective",
    "enumerate_connectives",
    "WITH",
    "PLUS",
    "SHIFT_DOWN",
    "SHIFT_UP",
    "PAR",
    "WITH_PAR",
    "GAMMA",
    "DELTA",
    "ALPHA0",
    "LIBRARY",
]


class ArityMismatch(LudicsError):
    pass


@dataclass(frozen=True, order=True)
class NegativeAction:
    name: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def rename(self, m) -> "NegativeAction":
        return NegativeAction(self.name, tuple(m.get(a, a) for a in self.args))

    def __str__(self):
        return f"{self.name}({', '.join(self.args)})"


def _acts(xs) -> frozenset:
    return frozenset(x if isinstance(x, NegativeAction) else NegativeAction(x[0], tuple(x[1])) for x in xs)


@dataclass(frozen=True)
class Connective:
    """``(z̄, α^I, α^E)``; equality is up to uniform renaming of ``z̄``."""

    bound_vars: tuple
    intro: frozenset
    elim: frozenset
    label: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bound_vars", tuple(self.bound_vars))
        object.__setattr__(self, "intro", _acts(self.intro))
        object.__setattr__(self, "elim", _acts(self.elim))

    @property
    def arity(self) -> int:
        return len(self.bound_vars)

    @property
    def actions(self) -> frozenset:
        return self.intro | self.elim

    def action(self, name: str) -> Optional[NegativeAction]:
        for a in self.actions:
            if a.name == name:
                return a
        return None

    def signature(self) -> Signature:
        return Signature({a.name: len(a.args) for a in self.actions})

    def canonical(self) -> "Connective":
        m = {z: f"z{i + 1}" for i, z in enumerate(self.bound_vars)}
        return Connective(tuple(m[z] for z in self.bound_vars),
                          frozenset(a.rename(m) for a in self.intro),
                          frozenset(a.rename(m) for a in self.elim), self.label)

    def __eq__(self, other):
        if not isinstance(other, Connective):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return (a.bound_vars, a.intro, a.elim) == (b.bound_vars, b.intro, b.elim)

    def __hash__(self):
        c = self.canonical()
        return hash((c.bound_vars, c.intro, c.elim))

    def __str__(self):
        def side(s):
            return "{" + ", ".join(str(a) for a in sorted(s)) + "}"

        return f"({', '.join(self.bound_vars)} ; I={side(self.intro)} ; E={side(self.elim)})"


@dataclass
class ConnectiveReport:
    valid: bool
    violations: list
    flags: list

    def __str__(self):
        head = "valid" if self.valid else "invalid"
        return "\n".join([head] + [f"  violation: {v}" for v in self.violations] + [f"  note: {f}" for f in self.flags])


def validate_connective(c: Connective, sig: Optional[Signature] = None) -> ConnectiveReport:
    """The three defining conditions, plus arity agreement with ``sig`` when given."""
    bad, flags = [], []
    zs = c.bound_vars
    if len(set(zs)) != len(zs):
        bad.append("clause 1: bound variables are not pairwise distinct")
    if X0 in zs:
        bad.append("clause 1: x0 is among the bound variables")
    by_name = {}
    for a in c.actions:
        by_name.setdefault(a.name, set()).add(a)
    for name, acts in sorted(by_name.items()):
        if len(acts) > 1:
            bad.append(f"clause 2: name {name} used by distinct actions {sorted(map(str, acts))}")
    for a in sorted(c.actions):
        if len(set(a.args)) != len(a.args):
            bad.append(f"clause 2: repeated variable in {a}")
        if not set(a.args) <= set(zs):
            bad.append(f"clause 2: {a} uses variables outside z")
        if sig is not None:
            if a.name not in sig:
                bad.append(f"signature: unknown name {a.name}")
            elif sig.arity(a.name) != len(a.args):
                bad.append(f"signature: {a} does not match arity {sig.arity(a.name)}")
    used = set().union(*(set(a.args) for a in c.actions)) if c.actions else set()
    if used != set(zs):
        bad.append(f"clause 3: variables used by actions {sorted(used)} differ from z {list(zs)}")
    if not c.intro:
        flags.append("empty introduction side")
    if not c.elim:
        flags.append("empty elimination side")
    return ConnectiveReport(not bad, bad, flags)


@dataclass
class HarmonyReport:
    inversion: bool
    recovery: bool
    missing_from_intro: frozenset
    missing_from_elim: frozenset
    overlap: frozenset

    @property
    def harmony(self) -> bool:
        return self.inversion and self.recovery

    def __str__(self):
        lines = [
            f"inversion: {str(self.inversion).lower()}, recovery: {str(self.recovery).lower()}",
            f"harmony: {str(self.harmony).lower()}",
        ]
        if self.missing_from_intro:
            lines.append("elim actions missing from intro: " + ", ".join(sorted(map(str, self.missing_from_intro))))
        if self.missing_from_elim:
            lines.append("intro actions missing from elim: " + ", ".join(sorted(map(str, self.missing_from_elim))))
        if self.overlap and not self.harmony:
            lines.append("shared actions: " + ", ".join(sorted(map(str, self.overlap))))
        return "\n".join(lines)


def check_harmony(c: Connective) -> HarmonyReport:
    """Inversion ``α^E ⊆ α^I`` and recovery ``α^I ⊆ α^E``."""
    return HarmonyReport(
        inversion=c.elim <= c.intro,
        recovery=c.intro <= c.elim,
        missing_from_intro=c.elim - c.intro,
        missing_from_elim=c.intro - c.elim,
        overlap=c.intro & c.elim,
    )


# ----------------------------------------------------------- (β) and (η)


def _intro_sum(c: Connective, family) -> Sum:
    branches = []
    for a in sorted(c.intro):
        body = family[a.name]
        if isinstance(body, Omega):
            raise LudicsError(f"family member for {a.name} is not total")
        branches.append(Branch(a.name, a.args, body))
    return Sum(branches)


def beta_condition_check(c: Connective, family, elim_action: NegativeAction, args: Sequence[Design],
                         fuel: int = DEFAULT_FUEL) -> bool:
    """One instance of (β): the cut built from ``family`` reduces in one step to the expected premise."""
    if elim_action not in c.elim:
        raise LudicsError(f"{elim_action} is not an elimination action")
    if len(args) != len(elim_action.args):
        raise ArityMismatch(f"{elim_action} takes {len(elim_action.args)} arguments")
    cut = App(_intro_sum(c, family), elim_action.name, tuple(args))
    got = step(cut)
    if isinstance(got, Omega):
        return False
    body = family.get(elim_action.name)
    if body is None:
        return False
    expected = substitute(body, dict(zip(elim_action.args, args)))
    return alpha_eq(got, expected)


# depth <= 2 bodies and a two-design argument pool
BODY_POOL = (
    DAIMON,
    App(Var("w"), "k"),
    App(Var("w"), "h", (Sum({"k": ((), DAIMON)}),)),
)
ARG_POOL = (
    Sum({"k": ((), DAIMON)}),
    Sum({"h": (("u",), App(Var("u"), "k"))}),
)


def _bodies_for(a: NegativeAction):
    # bodies may also use the branch's own variables
    out = list(BODY_POOL)
    if a.args:
        out.append(App(Var(a.args[0]), "k"))
    return out


def beta_check_exhaustive(c: Connective, fuel: int = DEFAULT_FUEL, _memo=None, full_product: bool = False) -> bool:
    """(β) over intro-indexed families from the body pool, every elim action and every argument tuple.

    A cut against ``e`` only ever selects the branch named ``e``, so by default the
    family varies on that coordinate and the others stay at ✠.  ``full_product``
    walks the whole product of families instead.
    """
    memo = {} if _memo is None else _memo
    intro = sorted(c.intro)
    by_name = {a.name: a for a in intro}
    for e in sorted(c.elim):
        a = by_name.get(e.name)
        if full_product:
            families = [dict(zip((i.name for i in intro), bs))
                        for bs in itertools.product(*(_bodies_for(i) for i in intro))]
        else:
            base = {i.name: DAIMON for i in intro}
            families = [dict(base, **{e.name: b}) for b in _bodies_for(a)] if a is not None else [base]
        for args in itertools.product(ARG_POOL, repeat=len(e.args)):
            for family in families:
                key = (a, family.get(e.name), e, args)
                ok = memo.get(key) if not full_product else None
                if ok is None:
                    ok = beta_condition_check(c, family, e, args, fuel)
                    memo[key] = ok
                if not ok:
                    return False
    return True


def eta_expand(n: Design, c: Connective) -> Sum:
    """``Σ_{α^I} a(x̄).(N | ā⟨x̄⟩)`` with ``x̄`` renamed apart from ``fv(N)``."""
    if n.positive:
        raise LudicsError("η-expansion applies to negative designs")
    fresh = Fresh("x", n._fv | {X0}, start=1)
    branches = []
    for a in sorted(c.intro):
        xs = tuple(x if x not in n._fv else fresh() for x in a.args)
        branches.append(Branch(a.name, xs, App(n, a.name, tuple(Var(x) for x in xs))))
    return Sum(branches)


def eta_condition_check(c: Connective):
    """``(ok, f)``: names in a connective are distinct, so f can only be the identity on ``α^I``."""
    ok = c.intro <= c.elim
    return ok, ({a: a for a in sorted(c.intro)} if ok else None)


# ----------------------------------------------------------- counter sets and α_⊥


def _wb_for(c: Connective, wbs, var: str):
    return wbs[c.bound_vars.index(var)]


def counter_set_intro(c: Connective, workbenches) -> list:
    """``x0|ā⟨M̄⟩`` for ``a ∈ α^I`` with each ``M`` taken from the matching tester set."""
    if len(workbenches) != c.arity:
        raise ArityMismatch(f"{c.arity} workbenches expected, got {len(workbenches)}")
    out = []
    for a in sorted(c.intro):
        pools = [_wb_for(c, workbenches, x).testers for x in a.args]
        for ms in itertools.product(*pools):
            out.append(App(Var(X0), a.name, tuple(ms)))
    return out


def counter_set_elim(c: Connective, workbenches) -> list:
    """``a(x̄).Q[x_l/x0] + ✠_{α^E}`` for ``a ∈ α^E``, each slot ``l`` and each tester ``Q``."""
    if len(workbenches) != c.arity:
        raise ArityMismatch(f"{c.arity} workbenches expected, got {len(workbenches)}")
    out = []
    for a in sorted(c.elim):
        others = [b for b in sorted(c.elim) if b != a]
        for x in a.args:
            for q in _wb_for(c, workbenches, x).testers:
                body = substitute(q, {X0: Var(x)})
                branches = [Branch(a.name, a.args, body)] + [Branch(b.name, b.args, DAIMON) for b in others]
                out.append(Sum(branches))
    return out


def dual_connective(c: Connective) -> Connective:
    return Connective(c.bound_vars, c.elim, c.intro, c.label + "_dual" if c.label else "")


# ----------------------------------------------------------- design-level dual decomposability


@dataclass
class DDReport:
    verdict: str  # PASS | FAIL | INCONCLUSIVE
    instances: list
    witnesses: list
    notes: list = field(default_factory=list)

    def __str__(self):
        lines = [f"verdict: {self.verdict}"]
        checked = {}
        for r in self.instances:
            checked.setdefault(r["clause"], [0, 0])
            checked[r["clause"]][0] += 1
            checked[r["clause"]][1] += r["verdict"] == "FAIL"
        for k in sorted(checked):
            lines.append(f"  {k}: {checked[k][0]} instances, {checked[k][1]} failing")
        for w in self.witnesses[:5]:
            lines.append(f"  witness ({w['clause']}): {w['design']} -- {w['reason']}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _orth_all(d: Design, testers, fuel):
    from .orthogonality import orthogonal_pair

    exhausted = False
    for t in testers:
        r = orthogonal_pair(d, t, fuel)
        if isinstance(r, FuelExhausted):
            exhausted = True
        elif not r:
            return False
    return FuelExhausted(0) if exhausted else True


def _uniq(ds):
    seen, out = set(), []
    from .terms import canonicalize

    for d in ds:
        k = canonicalize(d)
        if k not in seen:
            seen.add(k)
            out.append(d)
    return out


def check_dual_decomposability_connective(c: Connective, workbenches, fuel: int = DEFAULT_FUEL,
                                          max_sums: int = 2000) -> DDReport:
    """Finite-instance check of both clauses on negative workbenches ``𝐍_i`` (``𝐏_i`` is their dual)."""
    from .interaction import synthesize_positive_testers

    wbs = list(workbenches)
    if len(wbs) != c.arity:
        raise ArityMismatch(f"{c.arity} workbenches expected, got {len(wbs)}")
    from .orthogonality import CAVEAT

    instances, witnesses, notes = [], [], [CAVEAT]
    exhausted = False

    # clause 1 -------------------------------------------------------
    testers_e = counter_set_elim(c, wbs)
    arg_pool = _uniq([g for w in wbs for g in w.generators] + [Sum({})])
    cands = [DAIMON]
    for a in sorted(c.actions):
        for ms in itertools.product(arg_pool, repeat=len(a.args)):
            cands.append(App(Var(X0), a.name, ms))
    for p in cands:
        lhs = _orth_all(p, testers_e, fuel)
        if isinstance(lhs, FuelExhausted):
            exhausted = True
            continue
        if isinstance(p, Daimon):
            rhs = True
        else:
            a = c.action(p.name)
            rhs = a in c.intro
            if rhs:
                for x, m in zip(a.args, p.args):
                    mem = _orth_all(m, _wb_for(c, wbs, x).testers, fuel)
                    if isinstance(mem, FuelExhausted):
                        exhausted = True
                    if mem is not True:
                        rhs = False
                        break
        verdict = "PASS" if lhs == rhs else "FAIL"
        rec = {"clause": "clause 1", "design": str(p), "lhs": lhs, "rhs": rhs, "verdict": verdict}
        instances.append(rec)
        if verdict == "FAIL":
            reason = ("orthogonal to every elimination counter-set tester but outside the introduction decomposition"
                      if lhs else "inside the introduction decomposition but rejected by an elimination counter-set tester")
            witnesses.append(dict(rec, reason=reason))

    # clause 2 -------------------------------------------------------
    duals = [w.dual() for w in wbs]
    testers_i = counter_set_intro(c, duals)
    per_action = {}
    for a in sorted(c.actions):
        places = [(x, _wb_for(c, wbs, x)) for x in a.args]
        good = synthesize_positive_testers(places, fuel)
        per_action[a] = [OMEGA, DAIMON] + [g for g in good if not isinstance(g, Daimon)]
    acts = sorted(c.actions)
    sums = itertools.islice(itertools.product(*(per_action[a] for a in acts)), max_sums)
    for bodies in sums:
        s = Sum([Branch(a.name, a.args, b) for a, b in zip(acts, bodies)])
        lhs = _orth_all(s, testers_i, fuel)
        if isinstance(lhs, FuelExhausted):
            exhausted = True
            continue
        rhs = True
        for a in sorted(c.elim):
            br = s.branch(a.name)
            body = br.body if br is not None else OMEGA
            args_pools = [_wb_for(c, wbs, x).generators for x in a.args]
            for ms in itertools.product(*args_pools):
                if isinstance(body, Omega):
                    rhs = False
                    break
                from .orthogonality import AntiDesign, orthogonal

                r = orthogonal(body, AntiDesign(None, tuple(zip(a.args, ms))), fuel)
                if isinstance(r, FuelExhausted):
                    exhausted = True
                if r is not True:
                    rhs = False
                    break
            if not rhs:
                break
        verdict = "PASS" if lhs == rhs else "FAIL"
        rec = {"clause": "clause 2", "design": str(s), "lhs": lhs, "rhs": rhs, "verdict": verdict}
        instances.append(rec)
        if verdict == "FAIL":
            reason = ("orthogonal to the introduction counter set but some elimination branch fails"
                      if lhs else "every elimination branch passes but the sum fails an introduction counter-set tester")
            witnesses.append(dict(rec, reason=reason))

    if witnesses:
        v = "FAIL"
    elif exhausted or not testers_e or not testers_i or not any(w.generators for w in wbs):
        v = "INCONCLUSIVE"
        notes.append("vacuous or fuel-limited instance set")
    else:
        v = "PASS"
    return DDReport(v, instances, witnesses, notes)


# ----------------------------------------------------------- enumeration


def enumerate_connectives(names=("a", "b", "c"), max_arity: int = 2) -> Iterable[Connective]:
    """Every valid connective up to α-equivalence over ``names`` with action arity ≤ ``max_arity``.

    Bound variables are ``z1..zn`` in order; each name is absent, intro-only, elim-only or on both sides.
    """
    max_vars = len(names) * max_arity
    for n in range(0, max_vars + 1):
        zs = tuple(f"z{i + 1}" for i in range(n))
        full = (1 << n) - 1
        arg_lists = [()]
        for k in range(1, max_arity + 1):
            arg_lists += list(itertools.permutations(range(n), k))
        per_name = []
        for name in names:
            opts = [(0, None, None)]
            for args in arg_lists:
                mask = sum(1 << i for i in args)
                act = NegativeAction(name, tuple(zs[i] for i in args))
                opts += [(mask, "I", act), (mask, "E", act), (mask, "IE", act)]
            per_name.append(opts)

        def go(i, mask, chosen):
            left = len(names) - i
            if bin(full & ~mask).count("1") > left * max_arity:
                return
            if i == len(names):
                if mask == full:
                    intro = [a for side, a in chosen if "I" in side]
                    elim = [a for side, a in chosen if "E" in side]
                    yield Connective(zs, intro, elim)
                return
            for m, side, act in per_name[i]:
                yield from go(i + 1, mask | m, chosen + ([(side, act)] if side else []))

        yield from go(0, 0, [])


def _c(zs, intro, elim, label):
    return Connective(zs, [NegativeAction(n, a) for n, a in intro], [NegativeAction(n, a) for n, a in elim], label)


WITH = _c(("x1", "x2"), [("pi1", ("x1",)), ("pi2", ("x2",))], [("pi1", ("x1",)), ("pi2", ("x2",))], "With")
PLUS = _c(("x1", "x2"), [("inl", ("x1",)), ("inr", ("x2",))], [("inl", ("x1",)), ("inr", ("x2",))], "Plus")
SHIFT_DOWN = _c(("x1",), [("down", ("x1",))], [("down", ("x1",))], "Down")
SHIFT_UP = _c(("x1",), [("up", ("x1",))], [("up", ("x1",))], "Up")
PAR = _c(("x1", "x2"), [("par", ("x1", "x2"))], [("par", ("x1", "x2"))], "Par")
WITH_PAR = _c(("x1", "x2", "x3"), [("a", ("x1", "x2")), ("b", ("x3",))], [("a", ("x1", "x2")), ("b", ("x3",))], "WithPar")
GAMMA = _c(("x1", "x2", "x3"), [("a", ("x1", "x2")), ("b", ("x3",))], [("c", ("x1",)), ("d", ("x2", "x3"))], "Gamma")
DELTA = _c(("x1", "x2"), [("a", ("x1",)), ("b", ("x2",))], [("c", ("x2", "x1"))], "Delta")
ALPHA0 = _c(("x1", "x2"), [("a", ("x1",)), ("b", ("x2",))], [("c", ("x1",)), ("b", ("x2",))], "Alpha0")

LIBRARY = {c.label: c for c in (WITH, PLUS, SHIFT_DOWN, SHIFT_UP, PAR, WITH_PAR, GAMMA, DELTA, ALPHA0)}
