"""Multi-designs, their cut and orthogonality, interaction sequences, visitable paths and regularity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .paths import (
    Action,
    DAIMON_ACTION,
    canonical_seq,
    _barendregt,
    is_path_of,
    paths_of,
    relabel_first,
    seq_text,
    shuffle,
)
from .reduction import DEFAULT_FUEL, Converged, FuelExhausted, normalize
from .terms import (
    DAIMON,
    X0,
    App,
    Daimon,
    Design,
    Fresh,
    LudicsError,
    Omega,
    Sum,
    Var,
    bound_vars,
    substitute,
)

__all__ = [
    "MalformedMultiDesign",
    "NotCompatible",
    "NotStandard",
    "MultiDesign",
    "as_multidesign",
    "compatible",
    "quasi_closed_compatible",
    "cut_multidesigns",
    "msd_orthogonal",
    "Interaction",
    "iseq",
    "VisitableReport",
    "visitable",
    "relabel_paths",
    "shuffle_all",
    "RegularityReport",
    "check_regularity",
    "synthesize_positive_testers",
    "anti_workbench",
    "LemmaReport",
    "check_shuffle_decomposition",
    "PathDDReport",
    "check_dual_decomposability_paths",
]


class MalformedMultiDesign(LudicsError):
    pass


class NotCompatible(LudicsError):
    pass


class NotStandard(LudicsError):
    pass


@dataclass(frozen=True)
class MultiDesign:
    """``{P, [N1/x1], ...}`` with at most one positive part."""

    positive_part: Optional[Design] = None
    bindings: tuple = ()
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        b = tuple(sorted((tuple(p) for p in (self.bindings.items() if isinstance(self.bindings, dict) else self.bindings)), key=lambda p: p[0]))
        object.__setattr__(self, "bindings", b)
        if self.positive_part is not None and not self.positive_part.positive:
            raise MalformedMultiDesign("the positive part must be a positive design")
        for x, n in b:
            if n.positive:
                raise MalformedMultiDesign(f"binding for {x} is not negative")
        xs = [x for x, _ in b]
        if len(set(xs)) != len(xs):
            raise MalformedMultiDesign("negative places must be distinct")
        if self.check:
            seen = set()
            places = set(xs)
            for d in self.members():
                if d._fv & seen:
                    raise MalformedMultiDesign(f"free variables {sorted(d._fv & seen)} shared between members")
                if d._fv & places:
                    raise MalformedMultiDesign(f"free variables {sorted(d._fv & places)} are negative places")
                seen |= d._fv

    @property
    def positive(self) -> bool:
        return self.positive_part is not None

    def members(self):
        out = [] if self.positive_part is None else [self.positive_part]
        return out + [n for _, n in self.bindings]

    @property
    def fv(self) -> frozenset:
        out = frozenset()
        for d in self.members():
            out |= d._fv
        return out

    @property
    def np(self) -> frozenset:
        return frozenset(x for x, _ in self.bindings)

    def binding(self, x):
        for y, n in self.bindings:
            if y == x:
                return n
        return None

    def union(self, other: "MultiDesign") -> "MultiDesign":
        if self.positive and other.positive:
            raise MalformedMultiDesign("two positive parts")
        return MultiDesign(self.positive_part or other.positive_part, self.bindings + other.bindings)

    def __str__(self):
        parts = [] if self.positive_part is None else [str(self.positive_part)]
        parts += [f"{n} / {x}" for x, n in self.bindings]
        return "[" + " ; ".join(parts) + "]"


def as_multidesign(t) -> MultiDesign:
    """Designs become ``{P}`` or ``{[N/x0]}``; anti-designs keep their shape."""
    if isinstance(t, MultiDesign):
        return t
    if isinstance(t, Design):
        return MultiDesign(t) if t.positive else MultiDesign(None, ((X0, t),))
    return MultiDesign(t.positive_part, tuple(t.bindings))


def compatible(d, e) -> bool:
    d, e = as_multidesign(d), as_multidesign(e)
    if d.fv & e.fv or d.np & e.np:
        return False
    if d.positive != e.positive:
        return True
    if d.positive:
        return False
    frees = d.fv | e.fv
    return any(x not in frees for x in d.np | e.np)


def quasi_closed_compatible(d, e) -> bool:
    d, e = as_multidesign(d), as_multidesign(e)
    return d.positive != e.positive and compatible(d, e) and d.fv <= e.np and e.fv <= d.np


def cut_multidesigns(d, e) -> MultiDesign:
    """``Cut(𝔇, 𝔈)``, consuming the elements of 𝔈 one at a time."""
    d, e = as_multidesign(d), as_multidesign(e)
    if not compatible(d, e):
        raise NotCompatible("multi-designs are not compatible")
    pos = d.positive_part
    negs = dict(d.bindings)
    todo = ([] if e.positive_part is None else [(None, e.positive_part)]) + list(e.bindings)
    for x, t in todo:
        s = {y: m for y, m in negs.items() if y in t._fv}
        for y in s:
            del negs[y]
        t2 = substitute(t, s) if s else t
        if x is None:
            pos = t2
            continue
        if not any(x in m._fv for m in ([pos] if pos is not None else []) + list(negs.values())):
            negs[x] = t2
        else:
            pos = substitute(pos, {x: t2}) if pos is not None and x in pos._fv else pos
            negs = {y: (substitute(m, {x: t2}) if x in m._fv else m) for y, m in negs.items()}
    return MultiDesign(pos, tuple(negs.items()), check=False)


def msd_orthogonal(d, e, fuel: int = DEFAULT_FUEL):
    """``𝔇 ⊥ 𝔈`` iff ✠ is among the normal forms of the members of their cut."""
    d, e = as_multidesign(d), as_multidesign(e)
    if not quasi_closed_compatible(d, e):
        raise NotCompatible("multi-designs are not quasi closed compatible")
    c = cut_multidesigns(d, e)
    exhausted = None
    for m in c.members():
        r = normalize(m, fuel)
        if isinstance(r, Converged) and r.design == DAIMON:
            return True
        if isinstance(r, FuelExhausted):
            exhausted = r
    return exhausted if exhausted is not None else False


# ----------------------------------------------------------- interaction sequences


@dataclass(frozen=True)
class Interaction:
    """``⟨𝔇←𝔈⟩`` with how the interaction ended."""

    actions: tuple
    status: str  # "converged" | "omega" | "fuel_exhausted"
    steps: int

    @property
    def exact(self) -> bool:
        return self.status != "fuel_exhausted"

    def __str__(self):
        return seq_text(self.actions)



def iseq(d, e, fuel: int = DEFAULT_FUEL) -> Interaction:
    """Interaction sequence of 𝔇 with 𝔈; ``fuel`` bounds the number of emitted actions."""
    d, e = as_multidesign(d), as_multidesign(e)
    if not quasi_closed_compatible(d, e):
        raise NotCompatible("interaction needs quasi closed compatible multi-designs")
    members = [(None, d.positive_part)] if d.positive else []
    members += list(d.bindings)
    nd = len(members)
    members += [(None, e.positive_part)] if e.positive else []
    members += list(e.bindings)
    members = _barendregt(members)
    dm, em = members[:nd], members[nd:]
    side = {"D": {"pos": None, "neg": {}}, "E": {"pos": None, "neg": {}}}
    for key, ms in (("D", dm), ("E", em)):
        for x, t in ms:
            if x is None:
                side[key]["pos"] = t
            else:
                side[key]["neg"][x] = t
    avoid = set()
    for _, t in members:
        avoid |= set(bound_vars(t)) | t._fv
    avoid |= d.np | e.np
    fresh = Fresh("y", avoid, start=1)

    out = []
    while True:
        here = "D" if side["D"]["pos"] is not None else "E"
        there = "E" if here == "D" else "D"
        p = side[here]["pos"]
        if isinstance(p, Daimon):
            if here == "D":
                out.append(DAIMON_ACTION)
            return Interaction(tuple(out), "converged", len(out))
        if isinstance(p, Omega):
            return Interaction(tuple(out), "omega", len(out))
        if not isinstance(p, App) or not isinstance(p.head, Var):
            raise NotStandard(f"interaction needs cut-free designs, got {p}")
        if len(out) >= fuel:
            return Interaction(tuple(out), "fuel_exhausted", len(out))
        x = p.head.name
        n = side[there]["neg"].pop(x, None)
        if n is None:
            raise NotCompatible(f"no negative design at place {x}")
        if not isinstance(n, Sum):
            raise NotStandard(f"identity at place {x}")
        br = n.branch(p.name)
        if br is not None and len(br.params) == len(p.args):
            ys, body = br.params, br.body
        else:
            ys, body = tuple(fresh() for _ in p.args), Omega()
        out.append(Action("pos" if here == "D" else "neg", x, p.name, ys))
        side[here]["pos"] = None
        for y, m in zip(ys, p.args):
            side[here]["neg"][y] = m
        side[there]["pos"] = body


# ----------------------------------------------------------- visitable paths


@dataclass
class VisitableReport:
    paths: frozenset
    exhausted: list
    pairs: int

    def __iter__(self):
        return iter(self.paths)

    def __len__(self):
        return len(self.paths)


def _dedup(seqs) -> frozenset:
    return frozenset(canonical_seq(s) for s in seqs)


def visitable(w, fuel: int = DEFAULT_FUEL) -> VisitableReport:
    """Visitable paths of a workbench: interactions of each generator against each orthogonal tester."""
    from .orthogonality import orthogonal_pair

    found = []
    exhausted = []
    pairs = 0
    for t in w.generators:
        for g in w.tester_antidesigns():
            ok = orthogonal_pair(t, g, fuel)
            if isinstance(ok, FuelExhausted):
                exhausted.append((t, g))
                continue
            if not ok:
                continue
            pairs += 1
            r = iseq(t, g, fuel)
            if r.status == "fuel_exhausted":
                exhausted.append((t, g))
                continue
            found.append(r.actions)
    return VisitableReport(_dedup(found), exhausted, pairs)


def relabel_paths(paths: Iterable, x: str) -> frozenset:
    """``V(x, 𝐍)``: replace the address of the first action by ``x``."""
    return frozenset(relabel_first(p, x) for p in paths)


def shuffle_all(*sets) -> frozenset:
    """n-ary shuffle of path sets (canonicalized)."""
    from .paths import shuffle_sets

    acc = None
    for s in sets:
        acc = frozenset(s) if acc is None else shuffle_sets(acc, s)
    return _dedup(acc or ())


# ----------------------------------------------------------- regularity


@dataclass
class RegularityReport:
    verdict: str  # PASS | FAIL | INCONCLUSIVE
    clauses: dict
    witnesses: dict
    max_len: int
    scoped: bool = True

    def __str__(self):
        lines = [f"regularity: {self.verdict} (max_len={self.max_len}, listed designs only)"]
        for k, v in self.clauses.items():
            lines.append(f"  clause {k}: {v}")
            for wit in self.witnesses.get(k, [])[:3]:
                lines.append(f"    witness: {wit}")
        return "\n".join(lines)


def _positive_ended(p) -> bool:
    return bool(p) and p[-1].positive


def check_regularity(w, dual_w=None, fuel: int = DEFAULT_FUEL, max_len: int = 8) -> RegularityReport:
    """Finite check of the three regularity clauses on listed material designs, up to ``max_len``.

    A PASS only covers the listed generators and testers and is reported as INCONCLUSIVE
    about the underlying behaviour; a FAIL carries an explicit witness.
    """
    from .orthogonality import is_material

    if dual_w is None:
        dual_w = w.dual()
    clauses, wits = {}, {}
    vsets = {}
    for key, wb in (("1", w), ("2", dual_w)):
        v = visitable(wb, fuel)
        vsets[key] = v.paths
        missing = []
        for t in wb.generators:
            if not isinstance(t, Design) or not is_material(t, wb):
                continue
            for p in paths_of(t, max_len):
                if _positive_ended(p) and canonical_seq(p) not in v.paths:
                    missing.append(seq_text(p))
        clauses[key] = "FAIL" if missing else "PASS"
        wits[key] = sorted(set(missing))
    missing = []
    for key in ("1", "2"):
        V = [p for p in vsets[key] if len(p) <= max_len]
        for p, q in itertools.product(V, V):
            r = shuffle(p, q)
            if not r:
                continue
            for s in r:
                cs = canonical_seq(s)
                if len(s) <= max_len and cs not in vsets[key]:
                    missing.append(seq_text(cs))
    clauses["3"] = "FAIL" if missing else "PASS"
    wits["3"] = sorted(set(missing))
    empty = not w.generators or not dual_w.generators
    if any(v == "FAIL" for v in clauses.values()):
        verdict = "FAIL"
    elif empty:
        verdict = "INCONCLUSIVE"
    else:
        verdict = "PASS"
    return RegularityReport(verdict, clauses, wits, max_len)


# ----------------------------------------------------------- tester synthesis


def _graft(p: Design, r: Design) -> Design:
    """Replace every ✠ leaf of ``p`` by ``r``."""
    if isinstance(p, Daimon):
        return r
    if isinstance(p, App):
        return App(p.head, p.name, tuple(_graft(a, r) for a in p.args))
    if isinstance(p, Sum):
        from .terms import Branch

        return Sum([Branch(b.name, b.params, _graft(b.body, r)) for b in p.branches])
    return p


def _relabel_tester(q: Design, x: str, avoid) -> Design:
    from .paths import _rename_bound
    from .terms import canonicalize

    q = canonicalize(substitute(q, {X0: Var(x)}) if X0 in q._fv else q)
    fresh = Fresh("t", set(avoid) | set(bound_vars(q)) | q._fv)
    return _rename_bound(q, {b: fresh() for b in bound_vars(q)})


def synthesize_positive_testers(places, fuel: int = DEFAULT_FUEL, limit: int = 2000) -> list:
    """Positive designs over the places ``x_i`` that chain relabelled testers of each ``𝐍_i``.

    Every ordering of every subset of places is tried, one tester per chosen place, and the
    result is kept when it is orthogonal to every ``[N̄/x̄]`` built from the listed generators.
    """
    from .orthogonality import AntiDesign, orthogonal

    places = list(places)
    xs = [x for x, _ in places]
    pools = {}
    for x, wb in places:
        pools[x] = [_relabel_tester(q, x, xs) for q in wb.testers
                    if isinstance(q, Design) and q.positive and not isinstance(q, Daimon)]
    cands = [DAIMON]
    for k in range(1, len(places) + 1):
        for order in itertools.permutations(xs, k):
            for qs in itertools.product(*(pools[x] for x in order)):
                acc = DAIMON
                for q in reversed(qs):
                    acc = _graft(q, acc)
                cands.append(acc)
                if len(cands) >= limit:
                    break
    gens = [wb.generators for _, wb in places]
    out, seen = [], set()
    from .terms import canonicalize

    for p in cands:
        key = canonicalize(p)
        if key in seen:
            continue
        seen.add(key)
        ok = True
        for ms in itertools.product(*gens):
            r = orthogonal(p, AntiDesign(None, tuple(zip(xs, ms))), fuel)
            if r is not True:
                ok = False
                break
        if ok:
            out.append(p)
    return out


def anti_workbench(places, fuel: int = DEFAULT_FUEL, label: str = ""):
    """Workbench for ``[𝐍1/x1, ..., 𝐍n/xn]``: anti-design generators, synthesized positive testers."""
    from .orthogonality import AntiDesign, BehaviourWorkbench

    places = list(places)
    gens = [AntiDesign(None, tuple(zip([x for x, _ in places], ms)))
            for ms in itertools.product(*(wb.generators for _, wb in places))]
    testers = synthesize_positive_testers(places, fuel)
    return BehaviourWorkbench(gens, testers, label or "anti", polarity="-", check=False, fuel=fuel)


def _bounded(paths, max_len):
    return frozenset(canonical_seq(p) for p in paths if len(p) <= max_len)


@dataclass
class LemmaReport:
    holds: bool
    visitable: frozenset
    shuffled: frozenset
    only_visitable: frozenset
    only_shuffled: frozenset
    max_len: int


def check_shuffle_decomposition(places, fuel: int = DEFAULT_FUEL, max_len: int = 8) -> LemmaReport:
    """``V([𝐍1/x1,...]) = V(x1,𝐍1) ⧢ ... ⧢ V(xn,𝐍n)`` on listed designs, up to ``max_len``."""
    places = list(places)
    lhs = _bounded(visitable(anti_workbench(places, fuel), fuel).paths, max_len)
    parts = [relabel_paths(visitable(wb, fuel).paths, x) for x, wb in places]
    rhs = _bounded(shuffle_all(*parts) if parts else {()}, max_len)
    return LemmaReport(lhs == rhs, lhs, rhs, lhs - rhs, rhs - lhs, max_len)


# ----------------------------------------------------------- path-level dual decomposability


@dataclass
class PathDDReport:
    verdict: str
    elim_equal: bool
    intro_equal: bool
    witnesses: list
    regularity: dict
    lemma: dict
    sizes: dict
    max_len: int
    notes: list = field(default_factory=list)

    def __str__(self):
        lines = [f"verdict: {self.verdict} (max_len={self.max_len})",
                 f"  elimination side equal: {str(self.elim_equal).lower()}",
                 f"  introduction side equal: {str(self.intro_equal).lower()}"]
        for k, v in self.regularity.items():
            lines.append(f"  regularity of {k}: {v}")
        for k, v in self.lemma.items():
            lines.append(f"  shuffle decomposition at {k}: {str(v).lower()}")
        for w in self.witnesses[:6]:
            lines.append(f"  witness ({w['side']}, only in {w['only_in']}): {w['path']}")
        lines += [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _prefix_all(k: Action, paths) -> frozenset:
    return frozenset((k,) + tuple(p) for p in paths)


def check_dual_decomposability_paths(c, workbenches, fuel: int = DEFAULT_FUEL, max_len: int = 8,
                                     max_generators: int = 500) -> PathDDReport:
    """Both displayed equalities on finite workbenches, compared up to ``max_len``.

    ``workbenches`` are negative ones, one per bound variable; the positive a-behaviours
    are their duals.
    """
    from .connectives import ArityMismatch, counter_set_intro
    from .orthogonality import CAVEAT, AntiDesign, BehaviourWorkbench, orthogonal_pair
    from .terms import Branch

    wbs = list(workbenches)
    if len(wbs) != c.arity:
        raise ArityMismatch(f"{c.arity} workbenches expected, got {len(wbs)}")
    by_var = dict(zip(c.bound_vars, wbs))
    notes = [CAVEAT]
    regularity = {}
    for z, wb in by_var.items():
        regularity[wb.label or z] = check_regularity(wb, fuel=fuel, max_len=max_len).verdict

    def places(a):
        return [(x, by_var[x]) for x in a.args]

    synth = {a: synthesize_positive_testers(places(a), fuel) for a in sorted(c.actions)}

    def keep_orthogonal(gens, testers):
        return [t for t in testers if all(orthogonal_pair(g, t, fuel) is True for g in gens)]

    # elimination side
    e_gens = [DAIMON]
    for a in sorted(c.elim):
        for ms in itertools.product(*(by_var[x].generators for x in a.args)):
            e_gens.append(App(Var(X0), a.name, ms))
    e_testers = []
    for a in sorted(c.elim):
        others = [b for b in sorted(c.elim) if b != a]
        for r in synth[a]:
            e_testers.append(Sum([Branch(a.name, a.args, r)] + [Branch(b.name, b.args, DAIMON) for b in others]))
    e_testers = keep_orthogonal(e_gens, e_testers)
    e_wb = BehaviourWorkbench(e_gens, e_testers, "elim", "+", check=False, fuel=fuel)
    lhs_e = _bounded(visitable(e_wb, fuel).paths, max_len)
    v_n = {x: relabel_paths(visitable(wb, fuel).paths, x) for x, wb in by_var.items()}
    rhs_e = {(DAIMON_ACTION,)}
    for a in sorted(c.intro):
        inner = shuffle_all(*(v_n[x] for x in a.args)) if a.args else {()}
        rhs_e |= _prefix_all(Action("pos", X0, a.name, a.args), inner)
    rhs_e = _bounded(rhs_e, max_len)

    # introduction side
    intro = sorted(c.intro)
    i_gens = []
    for bodies in itertools.islice(itertools.product(*(synth[a] for a in intro)), max_generators):
        i_gens.append(Sum([Branch(a.name, a.args, b) for a, b in zip(intro, bodies)]))
    duals = [wb.dual() for wb in wbs]
    i_testers = keep_orthogonal(i_gens, [DAIMON] + counter_set_intro(c, duals))
    i_wb = BehaviourWorkbench(i_gens, i_testers, "intro", "-", check=False, fuel=fuel)
    lhs_i = _bounded(visitable(i_wb, fuel).paths, max_len)
    rhs_i = {()}
    for a in sorted(c.elim):
        testers = [AntiDesign(None, tuple(zip(a.args, ms)))
                   for ms in itertools.product(*(by_var[x].generators for x in a.args))]
        s_wb = BehaviourWorkbench(synth[a], testers, f"S_{a.name}", "+", check=False, fuel=fuel)
        rhs_i |= _prefix_all(Action("neg", X0, a.name, a.args), visitable(s_wb, fuel).paths)
    rhs_i = _bounded(rhs_i, max_len)

    lemma = {}
    for a in sorted(c.actions):
        if len(a.args) >= 2:
            lemma[str(a)] = check_shuffle_decomposition(places(a), fuel, max_len).holds

    witnesses = []
    for side, lhs, rhs in (("elimination", lhs_e, rhs_e), ("introduction", lhs_i, rhs_i)):
        for p in sorted(lhs - rhs, key=lambda s: (len(s), seq_text(s))):
            witnesses.append({"side": side, "only_in": "visitable", "path": seq_text(p)})
        for p in sorted(rhs - lhs, key=lambda s: (len(s), seq_text(s))):
            witnesses.append({"side": side, "only_in": "decomposition", "path": seq_text(p)})
    sizes = {"elim_visitable": len(lhs_e), "elim_decomposition": len(rhs_e),
             "intro_visitable": len(lhs_i), "intro_decomposition": len(rhs_i)}
    if witnesses:
        verdict = "FAIL"
    elif not all(wb.generators for wb in wbs) or any(v == "FAIL" for v in regularity.values()):
        verdict = "INCONCLUSIVE"
        notes.append("empty generators or a workbench failed the regularity precondition")
    else:
        verdict = "PASS"
    if any(v is False for v in lemma.values()):
        notes.append("shuffle decomposition failed on some action")
    return PathDDReport(verdict, lhs_e == rhs_e, lhs_i == rhs_i, witnesses, regularity, lemma, sizes, max_len, notes)
