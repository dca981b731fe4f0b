"""Located actions, aj-sequences, views, paths, shuffles and views of designs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .terms import (
    DAIMON,
    OMEGA,
    UNDEFINED,
    X0,
    App,
    Branch,
    Daimon,
    Design,
    Fresh,
    LudicsError,
    Omega,
    Sum,
    Var,
    bound_vars,
    canonicalize,
)

__all__ = [
    "Action",
    "pos",
    "neg",
    "DAIMON_ACTION",
    "AjSequence",
    "AjViolation",
    "NotAnAjSequence",
    "NotAPath",
    "check_aj",
    "aj",
    "justifiers",
    "justifier_indices",
    "bar",
    "dual_seq",
    "view",
    "anti_view",
    "biview",
    "is_path",
    "path_violation",
    "canonical_seq",
    "seq_eq",
    "seq_text",
    "views_of_design",
    "is_path_of",
    "paths_of",
    "shuffle",
    "shuffle_sets",
    "restrict",
    "path_completion",
    "relabel_first",
    "is_positive_seq",
]


class NotAnAjSequence(LudicsError):
    pass


class NotAPath(LudicsError):
    pass


@dataclass(frozen=True)
class Action:
    """A located action: daimon, ``x|a<ys>`` (positive) or ``a^x(ys)`` (negative)."""

    kind: str  # "daimon" | "pos" | "neg"
    address: Optional[str] = None
    name: Optional[str] = None
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if self.kind == "daimon":
            return
        if self.kind not in ("pos", "neg"):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.address in self.args:
            raise ValueError(f"address {self.address} among the arguments of {self}")
        if len(set(self.args)) != len(self.args):
            raise ValueError(f"repeated argument in {self}")

    @property
    def positive(self) -> bool:
        return self.kind != "neg"

    @property
    def proper(self) -> bool:
        return self.kind != "daimon"

    def bar(self) -> "Action":
        if self.kind == "daimon":
            raise ValueError("daimon has no opposite action")
        return Action("neg" if self.kind == "pos" else "pos", self.address, self.name, self.args)

    def rename(self, m) -> "Action":
        if self.kind == "daimon":
            return self
        return Action(self.kind, m.get(self.address, self.address), self.name, tuple(m.get(a, a) for a in self.args))

    def __str__(self):
        if self.kind == "daimon":
            return "daimon"
        if self.kind == "pos":
            return f"{self.address}|{self.name}<{','.join(self.args)}>"
        return f"{self.name}^{self.address}({','.join(self.args)})"


def pos(address, name, *args) -> Action:
    return Action("pos", address, name, args)


def neg(address, name, *args) -> Action:
    return Action("neg", address, name, args)


DAIMON_ACTION = Action("daimon")


@dataclass(frozen=True)
class AjViolation:
    clause: str
    index: int
    detail: str = ""

    def __bool__(self):
        return False


@dataclass(frozen=True)
class AjSequence:
    actions: tuple
    just: tuple = field(compare=False)

    def __len__(self):
        return len(self.actions)

    def __iter__(self):
        return iter(self.actions)

    def __getitem__(self, i):
        return self.actions[i]

    def __str__(self):
        return seq_text(self.actions)


def _acts(s) -> tuple:
    return s.actions if isinstance(s, AjSequence) else tuple(s)


def justifiers(s) -> list:
    """Justifier index per action (None when initial); raises on a bad pointer."""
    r = check_aj(s)
    if isinstance(r, AjViolation):
        raise NotAnAjSequence(f"{r.clause} violated at {r.index}: {r.detail}")
    return list(r.just)


def _just_unchecked(acts: tuple) -> list:
    out = []
    for i, k in enumerate(acts):
        j_found = None
        if k.proper:
            for j in range(i):
                q = acts[j]
                if q.proper and q.positive != k.positive and k.address in q.args:
                    j_found = j
                    break
        out.append(j_found)
    return out


def justifier_indices(s) -> list:
    """Like ``justifiers`` but never raises: unmatched addresses give ``None``."""
    return _just_unchecked(_acts(s))


def check_aj(seq):
    """Validate the four aj-sequence conditions; returns ``AjSequence`` or ``AjViolation``."""
    acts = _acts(seq)
    n = len(acts)
    for i in range(n - 1):
        if acts[i].positive == acts[i + 1].positive:
            return AjViolation("alternation", i + 1, f"{acts[i]} then {acts[i + 1]}")
    addrs = {}
    for i, k in enumerate(acts):
        if k.proper:
            if k.address in addrs:
                return AjViolation("linearity", i, f"{k.address} is already the address of action {addrs[k.address]}")
            addrs[k.address] = i
    for i, k in enumerate(acts):
        if not k.proper and i != n - 1:
            return AjViolation("daimon", i, "daimon before the end")
    just = []
    for i, k in enumerate(acts):
        if not k.proper:
            just.append(None)
            continue
        holders = [j for j, q in enumerate(acts) if q.proper and k.address in q.args]
        earlier = [j for j in holders if j < i and acts[j].positive != k.positive]
        if len(earlier) == 1:
            just.append(earlier[0])
        elif not holders:
            just.append(None)
        else:
            return AjViolation("justification", i, f"no unique justifier for address {k.address}")
    return AjSequence(acts, tuple(just))


def aj(seq) -> AjSequence:
    r = check_aj(seq)
    if isinstance(r, AjViolation):
        raise NotAnAjSequence(f"{r.clause} violated at {r.index}: {r.detail}")
    return r


def bar(s) -> tuple:
    return tuple(k.bar() for k in _acts(s))


def dual_seq(s) -> tuple:
    """``~s``: drop a final daimon, or else append one, after swapping polarities."""
    acts = _acts(s)
    if acts and not acts[-1].proper:
        return bar(acts[:-1])
    if any(not k.proper for k in acts):
        raise NotAnAjSequence("daimon may only occur last")
    return bar(acts) + (DAIMON_ACTION,)


def _view_idx(acts, just, n, flip=False):
    # indices of the view of acts[:n]; flip swaps polarities (used by anti-views)
    out = []
    while n > 0:
        k = acts[n - 1]
        positive = k.positive if not k.proper or not flip else not k.positive
        if positive:
            out.append(n - 1)
            n -= 1
        else:
            out.append(n - 1)
            j = just[n - 1]
            if j is None:
                break
            n = j + 1
    out.reverse()
    return out


def view(s) -> tuple:
    a = aj(s)
    return tuple(a.actions[i] for i in _view_idx(a.actions, a.just, len(a.actions)))


def anti_view(s) -> tuple:
    """``⌞s⌟ := ~⌜~s⌝``, following the defining formula literally."""
    return dual_seq(view(dual_seq(_acts(s))))


def biview(s) -> tuple:
    a = aj(s)
    acts, just = a.actions, a.just

    def go(n):
        if n == 0:
            return ()
        k = acts[n - 1]
        if not k.proper:
            return go(n - 1) + (k,)
        j = just[n - 1]
        if j is None:
            return (k,)
        return go(j + 1) + (k,)

    return go(len(acts))


def path_violation(s):
    """First prefix index breaking visibility, or None.  Non-aj input is reported too."""
    a = check_aj(s)
    if isinstance(a, AjViolation):
        return a
    acts, just = a.actions, a.just
    for i, k in enumerate(acts):
        j = just[i]
        if not k.proper or j is None:
            continue
        if k.positive:
            if j not in _view_idx(acts, just, i):
                return AjViolation("P-visibility", i, f"justifier of {k} outside the view")
        else:
            if j not in _view_idx(acts, just, i, flip=True):
                return AjViolation("O-visibility", i, f"justifier of {k} outside the anti-view")
    return None


def is_path(s) -> bool:
    return path_violation(s) is None


def is_positive_seq(s) -> bool:
    acts = _acts(s)
    return bool(acts) and acts[0].positive


# ----------------------------------------------------------- renaming


def canonical_seq(s, prefix: str = "v") -> tuple:
    """Rename bound variables (those occurring as arguments) in order of binding."""
    acts = _acts(s)
    bound = {a for k in acts for a in k.args}
    free = {k.address for k in acts if k.proper and k.address not in bound}
    fresh = Fresh(prefix, free)
    m = {}
    for k in acts:
        for a in k.args:
            if a not in m:
                m[a] = fresh()
    return tuple(k.rename(m) for k in acts)


def seq_eq(s, t) -> bool:
    return canonical_seq(s) == canonical_seq(t)


def seq_text(s) -> str:
    acts = _acts(s)
    return " ".join(str(k) for k in acts) if acts else "eps"


def relabel_first(s, x: str) -> tuple:
    """Replace the address of the first action (normally ``x0``) by ``x``."""
    acts = _acts(s)
    if not acts or not acts[0].proper:
        return acts
    old = acts[0].address
    return tuple(k.rename({old: x}) if k.proper and k.address == old else k for k in acts)


# ----------------------------------------------------------- views of designs


class _Node:
    __slots__ = ("action", "children", "pos", "parent")

    def __init__(self, action, pos, parent):
        self.action = action
        self.children = []
        self.pos = pos
        self.parent = parent

    def seq(self):
        out = []
        n = self
        while n is not None:
            out.append(n.action)
            n = n.parent
        return tuple(reversed(out))


def _members(t):
    """Normalize a design / anti-design / multi-design to (positive?, [(address, design)])."""
    if isinstance(t, Design):
        if t.positive:
            return True, [(None, t)]
        return False, [(X0, t)]
    members = []
    p = getattr(t, "positive_part", None)
    if p is not None:
        members.append((None, p))
    for x, n in t.bindings:
        members.append((x, n))
    return p is not None, members


def _barendregt(members):
    names = []
    frees = set()
    for x, d in members:
        names.extend(bound_vars(d))
        frees |= d._fv
        if x is not None:
            frees.add(x)
    if len(set(names)) == len(names) and not (set(names) & frees):
        return members
    # rename binders apart, member by member
    used = set(frees)
    out = []
    for x, d in members:
        c = canonicalize(d)
        ren = {}
        fresh = Fresh("w", used | set(bound_vars(c)))
        for b in bound_vars(c):
            ren[b] = fresh()
        out.append((x, _rename_bound(c, ren)))
        used |= set(ren.values())
    return out


def _rename_bound(d, ren):
    if isinstance(d, Var):
        return Var(ren.get(d.name, d.name))
    if isinstance(d, App):
        return App(_rename_bound(d.head, ren), d.name, tuple(_rename_bound(a, ren) for a in d.args))
    if isinstance(d, Sum):
        return Sum([Branch(b.name, tuple(ren.get(p, p) for p in b.params), _rename_bound(b.body, ren)) for b in d.branches])
    return d


def _trie(t):
    positive, members = _members(t)
    members = _barendregt(members)
    avoid = set()
    for x, d in members:
        avoid |= set(bound_vars(d)) | d._fv
        if x is not None:
            avoid.add(x)
    fresh = Fresh("y", avoid, start=1)
    roots = []

    def posv(p, where, parent, out):
        if isinstance(p, Omega):
            return
        if isinstance(p, Daimon):
            out.append(_Node(DAIMON_ACTION, where, parent))
            return
        if not isinstance(p, App) or not isinstance(p.head, Var):
            raise NotAPath("views are defined for cut-free designs only")
        ys = tuple(fresh() for _ in p.args)
        node = _Node(Action("pos", p.head.name, p.name, ys), where, parent)
        for i, (y, n) in enumerate(zip(ys, p.args)):
            negv(n, y, where + (i,), node, node.children)
        out.append(node)

    def negv(n, x, where, parent, out):
        if isinstance(n, Var):
            raise NotAPath("views are defined for identity-free designs only")
        for b in n.branches:
            node = _Node(Action("neg", x, b.name, b.params), where + (b.name,), parent)
            posv(b.body, where + (b.name,), node, node.children)
            out.append(node)

    for i, (x, d) in enumerate(members):
        base = (i,) if len(members) > 1 else ()
        if x is None:
            posv(d, base, None, roots)
        else:
            negv(d, x, base, None, roots)
    return positive, roots, members


def _all_nodes(roots):
    stack = list(roots)
    while stack:
        n = stack.pop()
        yield n
        stack.extend(n.children)


def views_of_design(t) -> frozenset:
    """All views of a cut- and identity-free design (or anti-/multi-design)."""
    positive, roots, members = _trie(t)
    out = {n.seq() for n in _all_nodes(roots)}
    if any(x is not None for x, _ in members):
        out.add(())
    return frozenset(out)


def _canonical_views(t):
    return frozenset(canonical_seq(v) for v in views_of_design(t))


def is_path_of(p, t, _views=None) -> bool:
    """``p`` is a path of ``t``: every (non-empty, for positive ``t``) prefix has its view among t's views."""
    acts = _acts(p)
    positive, _ = _members(t)
    if not is_path(acts):
        return False
    if acts and acts[0].positive != positive:
        return False
    if positive and not acts:
        return False
    views = _views if _views is not None else _canonical_views(t)
    a = aj(acts)
    for n in range(0 if not positive else 1, len(acts) + 1):
        v = tuple(acts[i] for i in _view_idx(acts, a.just, n))
        if canonical_seq(v) not in views:
            return False
    return True


def paths_of(t, max_len: int) -> frozenset:
    """Every path of ``t`` of length at most ``max_len``, by prefix extension over the view tree."""
    positive, roots, members = _trie(t)
    out = set()
    if not positive:
        out.add(())

    def extend(seq, nodes):
        if len(seq) >= max_len:
            return
        cands = []
        if not seq:
            cands = [(r, None) for r in roots if r.action.positive == positive]
        else:
            last = seq[-1]
            if not last.proper:
                return
            if last.positive:
                used = {k.address for k in seq if k.proper}
                for j, k in enumerate(seq):
                    if k.positive and k.proper:
                        for c in nodes[j].children:
                            if c.action.address not in used:
                                cands.append((c, j))
                bound = {a for k in seq for a in k.args}
                for r in roots:
                    if not r.action.positive and r.action.address not in used and r.action.address not in bound:
                        cands.append((r, None))
            else:
                cands = [(c, None) for c in nodes[-1].children]
        for node, _ in cands:
            s2 = seq + (node.action,)
            if path_violation(s2) is None:
                out.add(s2)
                extend(s2, nodes + [node])

    extend((), [])
    return frozenset(out)


def path_completion(p, t: Design) -> Design:
    """``p^c``: Ω and every positive subdesign whose first action is not visited become ✠."""
    acts = _acts(p)
    if not is_path_of(acts, t):
        raise NotAPath(f"{seq_text(acts)} is not a path of {t}")
    positive, roots, members = _trie(t)
    by_view = {canonical_seq(n.seq()): n for n in _all_nodes(roots)}
    a = aj(acts)
    visited = set()
    for n in range(1, len(acts) + 1):
        v = tuple(acts[i] for i in _view_idx(acts, a.just, n))
        node = by_view.get(canonical_seq(v))
        if node is not None and node.action.positive:
            visited.add(node.pos)
    (_, d), = members

    def posc(q, where):
        if isinstance(q, Omega):
            return DAIMON
        if isinstance(q, Daimon):
            return q
        if where not in visited:
            return DAIMON
        return App(q.head, q.name, tuple(negc(n, where + (i,)) for i, n in enumerate(q.args)))

    def negc(n, where):
        if isinstance(n, Var):
            return n
        return Sum([Branch(b.name, b.params, posc(b.body, where + (b.name,))) for b in n.branches])

    return posc(d, ()) if d.positive else negc(d, ())


# ----------------------------------------------------------- shuffles


def _merges(p, q):
    """Order-preserving merges of two action sequences; shared actions are merged once."""
    pset, qset = set(p), set(q)
    out = []

    def go(i, j, acc):
        if i == len(p) and j == len(q):
            out.append(tuple(acc))
            return
        if i < len(p) and j < len(q) and p[i] == q[j]:
            go(i + 1, j + 1, acc + [p[i]])
            return
        if i < len(p) and p[i] not in qset:
            go(i + 1, j, acc + [p[i]])
        if j < len(q) and q[j] not in pset:
            go(i, j + 1, acc + [q[j]])

    go(0, 0, [])
    return out


def _align(p, q):
    """Rename q so that its common prefix with p (up to bound renaming) uses p's names
    and every other bound variable of q is apart from the variables of p."""
    m = {}
    i = 0
    while i < min(len(p), len(q)):
        k = q[i].rename(m)
        if k.kind != p[i].kind or k.address != p[i].address or k.name != p[i].name or len(k.args) != len(p[i].args):
            break
        for a, b in zip(q[i].args, p[i].args):
            m[a] = b
        i += 1
    used = {v for k in p for v in ((k.address,) + k.args) if k.proper}
    used |= {v for k in q for v in ((k.address,) + k.args) if k.proper}
    fresh = Fresh("u", used)
    pvars = {v for k in p for v in ((k.address,) + k.args) if k.proper}
    for k in q[i:]:
        for a in k.args:
            if a not in m and a in pvars:
                m[a] = fresh()
    return tuple(k.rename(m) for k in q)


def shuffle(p, q):
    """``p ⧢ q`` as a frozenset of paths, or ``UNDEFINED``."""
    p, q = _acts(p), _acts(q)
    q = _align(p, q)
    return _shuffle(p, q)


def _shuffle(p, q):
    pn = not is_positive_seq(p)
    qn = not is_positive_seq(q)
    if pn and qn:
        return frozenset(r for r in _merges(p, q) if is_path(r))
    if not pn and not qn and p[0] == q[0]:
        k = p[0]
        inner = _shuffle(p[1:], q[1:])
        if inner is UNDEFINED:
            return UNDEFINED
        return frozenset((k,) + u for u in inner if is_path((k,) + u))
    return UNDEFINED


def shuffle_sets(D: Iterable, E: Iterable) -> frozenset:
    out = set()
    for p in D:
        for q in E:
            r = shuffle(p, q)
            if r is not UNDEFINED:
                out |= r
    return frozenset(out)


def restrict(s, selector) -> tuple:
    """``s↾s'``: keep actions occurring in a selector sequence, with an address in a selector set,
    or accepted by a selector predicate.  For a design or multi-design, the longest subsequence
    that is a path of it.
    """
    acts = _acts(s)
    if isinstance(selector, (set, frozenset)):
        return tuple(k for k in acts if k.proper and k.address in selector)
    if callable(selector) and not isinstance(selector, Design):
        return tuple(k for k in acts if selector(k))
    if isinstance(selector, (tuple, list, AjSequence)):
        keep = set(_acts(selector))
        return tuple(k for k in acts if k in keep)
    views = _canonical_views(selector)
    if len(acts) > 18:
        raise ValueError("restriction to a multi-design is exhaustive; sequence too long")
    for r in range(len(acts), -1, -1):
        for idx in itertools.combinations(range(len(acts)), r):
            cand = tuple(acts[i] for i in idx)
            if is_path_of(cand, selector, _views=views):
                return cand
    return ()
