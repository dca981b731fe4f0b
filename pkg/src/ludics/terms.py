"""Computational designs: terms, renaming, substitution, classification and orderings.

Designs are immutable trees.  Positive forms are ``Daimon``, ``Omega`` and
``App``; negative forms are ``Var`` and ``Sum``.  A ``Sum`` stores only its
non-Omega branches, so an absent name denotes an Omega branch.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Union

__all__ = [
    "X0",
    "Signature",
    "Design",
    "Daimon",
    "Omega",
    "App",
    "Var",
    "Sum",
    "Branch",
    "DAIMON",
    "OMEGA",
    "UNDEFINED",
    "Undefined",
    "LudicsError",
    "MalformedDesign",
    "PolarityMismatch",
    "ClassificationReport",
    "check_design",
    "canonicalize",
    "alpha_eq",
    "substitute",
    "free_vars",
    "classify",
    "stable_leq",
    "obs_leq",
    "intersect",
    "size",
    "depth",
    "to_text",
    "Fresh",
]

# reserved address of atomic designs
X0 = "x0"


class LudicsError(Exception):
    """Base class of all errors raised by the engine."""


class MalformedDesign(LudicsError):
    pass


class PolarityMismatch(LudicsError):
    pass


@dataclass(frozen=True)
class Signature:
    """Finite map from names to arities."""

    names: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        items = tuple(sorted(dict(self.names).items()))
        for name, ar in items:
            if not isinstance(ar, int) or ar < 0:
                raise MalformedDesign(f"bad arity for {name!r}: {ar!r}")
        object.__setattr__(self, "names", dict(items))

    def __hash__(self):
        return hash(tuple(self.names.items()))

    def arity(self, name: str) -> int:
        try:
            return self.names[name]
        except KeyError:
            raise MalformedDesign(f"unknown name {name!r}") from None

    def __contains__(self, name):
        return name in self.names

    def __iter__(self):
        return iter(self.names)

    def extend(self, other: Mapping[str, int]) -> "Signature":
        merged = dict(self.names)
        for k, v in dict(other).items():
            if k in merged and merged[k] != v:
                raise MalformedDesign(f"conflicting arity for {k!r}")
            merged[k] = v
        return Signature(merged)


class Design:
    """Common base of the five design forms."""

    __slots__ = ()
    positive: bool = True

    @property
    def negative(self) -> bool:
        return not self.positive

    @property
    def fv(self) -> frozenset:
        return self._fv

    def __str__(self):
        return to_text(self)


def _cache(obj, key):
    object.__setattr__(obj, "_hash", hash(key))


@dataclass(frozen=True, eq=True, repr=False)
class Daimon(Design):
    _fv: frozenset = field(default=frozenset(), init=False, compare=False)
    positive = True

    def __hash__(self):
        return 101

    def __repr__(self):
        return "Daimon()"


@dataclass(frozen=True, eq=True, repr=False)
class Omega(Design):
    _fv: frozenset = field(default=frozenset(), init=False, compare=False)
    positive = True

    def __hash__(self):
        return 202

    def __repr__(self):
        return "Omega()"


@dataclass(frozen=True, eq=True, repr=False)
class Var(Design):
    name: str
    _fv: frozenset = field(default=frozenset(), init=False, compare=False)
    _hash: int = field(default=0, init=False, compare=False)
    positive = False

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise MalformedDesign(f"bad variable {self.name!r}")
        object.__setattr__(self, "_fv", frozenset((self.name,)))
        _cache(self, ("var", self.name))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Var({self.name!r})"


@dataclass(frozen=True, eq=True, repr=False)
class App(Design):
    """``head | name<args>``; a cut when the head is a ``Sum``."""

    head: Design
    name: str
    args: tuple = ()
    _fv: frozenset = field(default=frozenset(), init=False, compare=False)
    _hash: int = field(default=0, init=False, compare=False)
    positive = True

    def __post_init__(self):
        args = tuple(self.args)
        object.__setattr__(self, "args", args)
        if not isinstance(self.head, (Var, Sum)):
            raise MalformedDesign("head of an application must be negative")
        for a in args:
            if not isinstance(a, (Var, Sum)):
                raise MalformedDesign("arguments of an application must be negative")
        fv = self.head._fv.union(*(a._fv for a in args)) if args else self.head._fv
        object.__setattr__(self, "_fv", fv)
        _cache(self, ("app", self.head._hash, self.name, tuple(a._hash for a in args)))

    def __hash__(self):
        return self._hash

    @property
    def is_cut(self) -> bool:
        return isinstance(self.head, Sum)

    def __repr__(self):
        return f"App({self.head!r}, {self.name!r}, {self.args!r})"


@dataclass(frozen=True)
class Branch:
    name: str
    params: tuple
    body: Design


BranchSpec = Union[Mapping[str, tuple], Iterable]


@dataclass(frozen=True, eq=True, repr=False)
class Sum(Design):
    """Named sum ``Σ a(x̄).P_a``.  Accepts a mapping ``name -> (params, body)``."""

    branches: tuple = ()
    _fv: frozenset = field(default=frozenset(), init=False, compare=False)
    _hash: int = field(default=0, init=False, compare=False)
    _index: dict = field(default=None, init=False, compare=False)
    positive = False

    def __post_init__(self):
        raw = self.branches
        if isinstance(raw, Mapping):
            items = [Branch(k, tuple(v[0]), v[1]) for k, v in raw.items()]
        else:
            items = [b if isinstance(b, Branch) else Branch(b[0], tuple(b[1]), b[2]) for b in raw]
        index = {}
        for b in items:
            if b.name in index:
                raise MalformedDesign(f"duplicate branch {b.name!r}")
            if not isinstance(b.body, (Daimon, Omega, App)):
                raise MalformedDesign("branch bodies must be positive")
            if len(set(b.params)) != len(b.params):
                raise MalformedDesign(f"repeated bound variable in branch {b.name!r}")
            index[b.name] = b
        kept = tuple(sorted((b for b in items if not isinstance(b.body, Omega)), key=lambda b: b.name))
        object.__setattr__(self, "branches", kept)
        object.__setattr__(self, "_index", {b.name: b for b in kept})
        fv = frozenset()
        for b in kept:
            fv |= b.body._fv - set(b.params)
        object.__setattr__(self, "_fv", fv)
        _cache(self, ("sum",) + tuple((b.name, b.params, hash(b.body)) for b in kept))

    def __hash__(self):
        return self._hash

    def branch(self, name: str) -> Optional[Branch]:
        return self._index.get(name)

    def names(self):
        return tuple(b.name for b in self.branches)

    def __repr__(self):
        inner = ", ".join(f"{b.name!r}: ({b.params!r}, {b.body!r})" for b in self.branches)
        return "Sum({" + inner + "})"


DAIMON = Daimon()
OMEGA = Omega()


class Undefined:
    """Result of an undefined intersection or shuffle."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "UNDEFINED"

    def __bool__(self):
        return False


UNDEFINED = Undefined()


# ---------------------------------------------------------------- utilities


class Fresh:
    """Per-operation supply of fresh variable names.

    Names are ``prefix + counter`` skipping anything in ``avoid``.
    """

    def __init__(self, prefix: str = "v", avoid: Iterable[str] = (), start: int = 0):
        self.prefix = prefix
        self.avoid = set(avoid)
        self._n = itertools.count(start)

    def __call__(self) -> str:
        while True:
            name = f"{self.prefix}{next(self._n)}"
            if name not in self.avoid:
                self.avoid.add(name)
                return name


def free_vars(t: Design) -> frozenset:
    return t._fv


def size(t: Design) -> int:
    if isinstance(t, App):
        return 1 + size(t.head) + sum(size(a) for a in t.args)
    if isinstance(t, Sum):
        return 1 + sum(size(b.body) for b in t.branches)
    return 1


def depth(t: Design) -> int:
    if isinstance(t, App):
        return 1 + max([depth(t.head)] + [depth(a) for a in t.args])
    if isinstance(t, Sum):
        return 1 + max([0] + [depth(b.body) for b in t.branches])
    return 0


def bound_vars(t: Design) -> list:
    out = []

    def go(d):
        if isinstance(d, App):
            go(d.head)
            for a in d.args:
                go(a)
        elif isinstance(d, Sum):
            for b in d.branches:
                out.extend(b.params)
                go(b.body)

    go(t)
    return out


def check_design(t: Design, sig: Optional[Signature] = None) -> None:
    """Raise ``MalformedDesign`` on arity errors or clashing binders."""

    def go(d):
        if isinstance(d, App):
            if sig is not None and sig.arity(d.name) != len(d.args):
                raise MalformedDesign(f"{d.name} expects {sig.arity(d.name)} arguments, got {len(d.args)}")
            go(d.head)
            for a in d.args:
                go(a)
        elif isinstance(d, Sum):
            for b in d.branches:
                if sig is not None and sig.arity(b.name) != len(b.params):
                    raise MalformedDesign(f"branch {b.name} binds {len(b.params)} variables, arity is {sig.arity(b.name)}")
                go(b.body)

    if not isinstance(t, Design):
        raise MalformedDesign(f"not a design: {t!r}")
    go(t)


# ------------------------------------------------------------ alpha / subst


def canonicalize(t: Design, sig: Optional[Signature] = None) -> Design:
    """Rename bound variables to v0, v1, ... in pre-order, left to right.

    Names already free in ``t`` are skipped, so the result is alpha-equivalent
    and satisfies the Barendregt convention.
    """
    check_design(t, sig)
    fresh = Fresh("v", t._fv)

    def go(d, env):
        if isinstance(d, Var):
            n = env.get(d.name)
            return d if n is None or n == d.name else Var(n)
        if isinstance(d, App):
            return App(go(d.head, env), d.name, tuple(go(a, env) for a in d.args))
        if isinstance(d, Sum):
            out = []
            for b in d.branches:
                new = tuple(fresh() for _ in b.params)
                inner = dict(env)
                inner.update(zip(b.params, new))
                out.append(Branch(b.name, new, go(b.body, inner)))
            return Sum(out)
        return d

    return go(t, {})


def alpha_eq(t: Design, u: Design) -> bool:
    return canonicalize(t) == canonicalize(u)


def _subst(t: Design, m: Mapping[str, Design], fresh: Fresh) -> Design:
    """Capture-avoiding simultaneous substitution without canonicalization."""
    if not m or not (t._fv & m.keys()):
        return t
    if isinstance(t, Var):
        return m.get(t.name, t)
    if isinstance(t, App):
        return App(_subst(t.head, m, fresh), t.name, tuple(_subst(a, m, fresh) for a in t.args))
    if isinstance(t, Sum):
        out = []
        for b in t.branches:
            inner = {k: v for k, v in m.items() if k not in b.params and k in b.body._fv}
            if not inner:
                out.append(b)
                continue
            danger = frozenset().union(*(v._fv for v in inner.values()))
            params = b.params
            if danger & set(params):
                ren = {}
                new = []
                for p in params:
                    if p in danger:
                        q = fresh()
                        ren[p] = Var(q)
                        new.append(q)
                    else:
                        new.append(p)
                body = _subst(b.body, ren, fresh)
                params = tuple(new)
            else:
                body = b.body
            out.append(Branch(b.name, params, _subst(body, inner, fresh)))
        return Sum(out)
    return t


def substitute(t: Design, bindings: Mapping[str, Design]) -> Design:
    """Simultaneous capture-avoiding substitution; the result is canonical."""
    for k, v in bindings.items():
        if not isinstance(v, Design) or v.positive:
            raise PolarityMismatch(f"replacement for {k!r} must be a negative design")
    # '%' never appears in parsed identifiers, and canonicalize renames it away
    res = _subst(t, dict(bindings), Fresh("%"))
    return canonicalize(res)


# ------------------------------------------------------------ classification


@dataclass(frozen=True)
class ClassificationReport:
    cut_free: bool
    identity_free: bool
    total: bool
    linear: bool
    atomic: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def standard(self) -> bool:
        return self.cut_free and self.identity_free and self.total and self.linear


def classify(t: Design) -> ClassificationReport:
    """Witnesses are positions: tuples of steps ``"head"``, ``i`` (argument), or a branch name."""
    wit: dict = {}

    def note(key, pos):
        wit.setdefault(key, pos)

    def go(d, pos):
        if isinstance(d, App):
            if isinstance(d.head, Sum):
                note("cut_free", pos)
            seen = set(d.head._fv)
            for i, a in enumerate(d.args):
                if isinstance(a, Var):
                    note("identity_free", pos + (i,))
                if seen & a._fv:
                    note("linear", pos + (i,))
                seen |= a._fv
            go(d.head, pos + ("head",))
            for i, a in enumerate(d.args):
                go(a, pos + (i,))
        elif isinstance(d, Sum):
            for b in d.branches:
                go(b.body, pos + (b.name,))

    if isinstance(t, Var):
        note("identity_free", ())
    if isinstance(t, Omega):
        note("total", ())
    go(t, ())
    atomic = t._fv <= {X0} if t.positive else not t._fv
    if not atomic:
        wit["atomic"] = ()
    return ClassificationReport(
        cut_free="cut_free" not in wit,
        identity_free="identity_free" not in wit,
        total="total" not in wit,
        linear="linear" not in wit,
        atomic=atomic,
        witnesses=wit,
    )


# ------------------------------------------------------------ orderings


def _leq(t, u, env, observational):
    # env: pairs of corresponding bound variables (t-name -> u-name and back)
    fw, bw = env
    if t.positive != u.positive:
        raise PolarityMismatch("ordering compares designs of the same polarity")
    if isinstance(t, Omega):
        return True
    if isinstance(t, Daimon):
        return isinstance(u, Daimon)
    if isinstance(t, App):
        if observational and isinstance(u, Daimon):
            return True
        if not isinstance(u, App) or u.name != t.name or len(u.args) != len(t.args):
            return False
        return _leq(t.head, u.head, env, observational) and all(
            _leq(a, b, env, observational) for a, b in zip(t.args, u.args)
        )
    if isinstance(t, Var):
        if not isinstance(u, Var):
            return False
        if t.name in fw or u.name in bw:
            return fw.get(t.name) == u.name and bw.get(u.name) == t.name
        return t.name == u.name
    if isinstance(t, Sum):
        if not isinstance(u, Sum):
            return False
        for b in t.branches:
            c = u.branch(b.name)
            if c is None or len(c.params) != len(b.params):
                return False
            nfw = dict(fw)
            nbw = dict(bw)
            nfw.update(zip(b.params, c.params))
            nbw.update(zip(c.params, b.params))
            if not _leq(b.body, c.body, (nfw, nbw), observational):
                return False
        return True
    raise MalformedDesign(repr(t))


def stable_leq(t: Design, u: Design) -> bool:
    """``t ⊑ u``."""
    return _leq(t, u, ({}, {}), False)


def obs_leq(t: Design, u: Design) -> bool:
    """``t ⪯ u``: like the stable ordering but every application is below daimon."""
    return _leq(t, u, ({}, {}), True)


def intersect(t: Design, u: Design):
    """``t ∩ u`` or ``UNDEFINED``.  Bound variables of ``t`` are kept."""
    fresh = Fresh("%")

    def go(t, u):
        if isinstance(t, Omega) and u.positive:
            return OMEGA
        if isinstance(u, Omega) and t.positive:
            return OMEGA
        if isinstance(t, Daimon) and isinstance(u, Daimon):
            return DAIMON
        if isinstance(t, App) and isinstance(u, App):
            if not (isinstance(t.head, Var) and t.head == u.head and t.name == u.name):
                return UNDEFINED
            if len(t.args) != len(u.args):
                return UNDEFINED
            args = []
            for a, b in zip(t.args, u.args):
                r = go(a, b)
                if r is UNDEFINED:
                    return UNDEFINED
                args.append(r)
            return App(t.head, t.name, tuple(args))
        if isinstance(t, Var) and isinstance(u, Var):
            # not among the defining clauses; x ∩ x = x keeps ∩ a ⊑-meet
            return t if t == u else UNDEFINED
        if isinstance(t, Sum) and isinstance(u, Sum):
            out = []
            for b in t.branches:
                c = u.branch(b.name)
                if c is None:
                    continue
                if len(c.params) != len(b.params):
                    return UNDEFINED
                other = _subst(c.body, {q: Var(p) for p, q in zip(b.params, c.params) if p != q}, fresh)
                r = go(b.body, other)
                if r is UNDEFINED:
                    return UNDEFINED
                out.append(Branch(b.name, b.params, r))
            return Sum(out)
        return UNDEFINED

    return go(t, u)


# ------------------------------------------------------------ text form

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def to_text(t: Design) -> str:
    """Concrete syntax accepted by the session-file parser."""
    if isinstance(t, Daimon):
        return "daimon"
    if isinstance(t, Omega):
        return "omega"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, App):
        return f"{to_text(t.head)}|{t.name}<{', '.join(to_text(a) for a in t.args)}>"
    if isinstance(t, Sum):
        inner = ", ".join(f"{b.name}({', '.join(b.params)}) => {to_text(b.body)}" for b in t.branches)
        return "{" + inner + "}"
    raise MalformedDesign(repr(t))
