"""Recursive-descent parser for session files."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from ..connectives import Connective, NegativeAction, validate_connective
from ..interaction import MultiDesign
from ..orthogonality import AntiDesign, BehaviourWorkbench
from ..paths import DAIMON_ACTION, Action
from ..terms import DAIMON, OMEGA, App, Branch, LudicsError, MalformedDesign, Signature, Sum, Var, check_design

__all__ = ["SessionSyntaxError", "UnknownName", "ArityError", "SessionFile", "parse",
           "parse_design", "parse_sequence"]


class FrontendError(LudicsError):
    """Base of input errors; ``line``/``col`` are 1-based, or None when no token applies."""

    def __init__(self, msg, line=None, col=None, expected=()):
        self.line, self.col = line, col
        self.expected = tuple(sorted(set(expected)))
        exp = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{where}{msg}{exp}")


class SessionSyntaxError(FrontendError):
    def __init__(self, msg, line, col, expected=()):
        super().__init__(msg, line, col, expected)


class UnknownName(FrontendError):
    pass


class ArityError(FrontendError):
    pass


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<arrow>=>)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<ref>@[A-Za-z][A-Za-z0-9_]*)
  | (?P<pol>\((?:\+|-)\))
  | (?P<sym>[{}()<>\[\],;|/=^])
    """,
    re.VERBOSE,
)

KEYWORDS = {"sig", "design", "conn", "anti", "multi", "workbench", "seq", "gen", "test"}


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out, pos, line, lstart = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise SessionSyntaxError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Tok(kind, m.group(), line, pos - lstart + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line, lstart = line + 1, pos + i + 1
        pos = m.end()
    out.append(Tok("eof", "", line, pos - lstart + 1))
    return out


@dataclass(frozen=True)
class WorkbenchDecl:
    polarity: Optional[str]
    generators: tuple
    testers: tuple


@dataclass
class SessionFile:
    """Everything declared in one session file, in declaration order."""

    signature: Signature = field(default_factory=Signature)
    designs: dict = field(default_factory=dict)
    connectives: dict = field(default_factory=dict)
    antis: dict = field(default_factory=dict)
    multis: dict = field(default_factory=dict)
    workbenches: dict = field(default_factory=dict)
    workbench_decls: dict = field(default_factory=dict)
    sequences: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def lookup(self, name):
        for table in (self.designs, self.antis, self.multis, self.connectives, self.workbenches, self.sequences):
            if name in table:
                return table[name]
        raise UnknownName(f"{name} is not defined")

    def workbench(self, name, check: bool = True):
        if name not in self.workbench_decls:
            raise UnknownName(f"workbench {name} is not defined")
        if check:
            return self.workbenches[name]
        d = self.workbench_decls[name]
        return BehaviourWorkbench(d.generators, d.testers, name, d.polarity, check=False)


class _Parser:
    def __init__(self, text, session=None, check_workbenches=True):
        self.toks = tokenize(text)
        self.i = 0
        self.s = session if session is not None else SessionFile()
        self.check_workbenches = check_workbenches

    # -- token helpers
    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k=1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, msg, expected=(), tok=None):
        t = tok or self.tok
        raise SessionSyntaxError(msg, t.line, t.col, expected)

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind in ("sym", "arrow", "ident", "pol")

    def eat(self, text) -> Tok:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            self.fail(f"unexpected {shown!r}", [repr(text)])
        t = self.tok
        self.i += 1
        return t

    def ident(self, what="identifier", keyword_ok=False) -> str:
        t = self.tok
        if t.kind != "ident" or (not keyword_ok and t.text in KEYWORDS):
            self.fail(f"unexpected {t.text or 'end of input'!r}", [what])
        self.i += 1
        return t.text

    def sep_list(self, item, close, seps=(",",)):
        out = []
        if self.at(close):
            return out
        out.append(item())
        while self.tok.text in seps and self.tok.kind == "sym":
            self.i += 1
            out.append(item())
        return out

    # -- session
    def session(self) -> SessionFile:
        while self.tok.kind != "eof":
            kw = self.tok
            if kw.kind != "ident" or kw.text not in KEYWORDS - {"gen", "test"}:
                self.fail(f"unexpected {kw.text!r}", ["sig", "design", "conn", "anti", "multi", "workbench", "seq"])
            self.i += 1
            getattr(self, f"decl_{kw.text}")(kw)
        return self.s

    def _define(self, name, table, value, tok):
        if any(name in t for t in (self.s.designs, self.s.connectives, self.s.antis, self.s.multis,
                                   self.s.workbench_decls, self.s.sequences)):
            raise SessionSyntaxError(f"{name} is defined twice", tok.line, tok.col)
        table[name] = value
        self.s.order.append(name)

    def decl_sig(self, _):
        self.eat("{")
        entries = {}
        while not self.at("}"):
            t = self.tok
            name = self.ident("name")
            self.eat("/")
            if self.tok.kind != "int":
                self.fail("arity expected", ["integer"])
            ar = int(self.tok.text)
            self.i += 1
            if name in entries:
                raise SessionSyntaxError(f"{name} declared twice", t.line, t.col)
            entries[name] = ar
        self.eat("}")
        try:
            self.s.signature = self.s.signature.extend(entries)
        except MalformedDesign as e:
            raise ArityError(str(e), t.line, t.col) from None

    def decl_design(self, kw):
        t = self.tok
        name = self.ident("design name")
        self.eat("=")
        at = self.tok
        d = self.design()
        self._check_arity(d, at)
        self._define(name, self.s.designs, d, t)

    def decl_conn(self, kw):
        t = self.tok
        name = self.ident("connective name")
        self.eat("=")
        self.eat("(")
        zs = self.sep_list(lambda: self.ident("variable"), ";")
        self.eat(";")
        sides = {}
        for _ in range(2):
            st = self.tok
            side = self.ident("I or E", keyword_ok=True)
            if side not in ("I", "E") or side in sides:
                self.fail(f"unexpected {side!r}", ["I", "E"], st)
            self.eat("=")
            self.eat("{")
            sides[side] = self.sep_list(self.neg_action, "}")
            self.eat("}")
            if side == next(iter(sides)) and len(sides) == 1:
                self.eat(";")
        self.eat(")")
        c = Connective(tuple(zs), sides["I"], sides["E"], name)
        rep = validate_connective(c, self.s.signature if self.s.signature.names else None)
        if not rep.valid:
            if any(r.startswith("signature") for r in rep.violations):
                raise ArityError("; ".join(rep.violations), t.line, t.col)
            raise SessionSyntaxError("invalid connective: " + "; ".join(rep.violations), t.line, t.col)
        self._define(name, self.s.connectives, c, t)

    def neg_action(self):
        name = self.ident("action name")
        self.eat("(")
        xs = self.sep_list(lambda: self.ident("variable"), ")")
        self.eat(")")
        return NegativeAction(name, tuple(xs))

    def _bracket(self):
        """``[ item (,|;) item ... ]`` where an item is ``design`` or ``design / var``."""
        self.eat("[")
        pos, binds = None, []

        def item():
            nonlocal pos
            t = self.tok
            d = self.design()
            self._check_arity(d, t)
            if self.at("/"):
                self.i += 1
                binds.append((self.ident("variable"), d))
            elif pos is None and d.positive:
                pos = d
            else:
                self.fail("only one positive part is allowed and it must come unbound", ["/"], t)

        self.sep_list(item, "]", seps=(",", ";"))
        self.eat("]")
        return pos, tuple(binds)

    def decl_anti(self, kw):
        t = self.tok
        name = self.ident("anti-design name")
        self.eat("=")
        at = self.tok
        pos, binds = self._bracket()
        try:
            g = AntiDesign(pos, binds)
        except LudicsError as e:
            raise SessionSyntaxError(str(e), at.line, at.col) from None
        self._define(name, self.s.antis, g, t)

    def decl_multi(self, kw):
        t = self.tok
        name = self.ident("multi-design name")
        self.eat("=")
        at = self.tok
        pos, binds = self._bracket()
        try:
            m = MultiDesign(pos, binds)
        except LudicsError as e:
            raise SessionSyntaxError(str(e), at.line, at.col) from None
        self._define(name, self.s.multis, m, t)

    def _wb_item(self):
        t = self.tok
        if t.kind == "ident" and t.text not in KEYWORDS | {"daimon", "omega"} and self.peek().text in (",", ";", "}"):
            if t.text in self.s.designs or t.text in self.s.antis:
                self.i += 1
                return self.s.designs.get(t.text) or self.s.antis[t.text]
            raise UnknownName(f"{t.text} is not defined", t.line, t.col)
        if self.at("["):
            pos, binds = self._bracket()
            try:
                return AntiDesign(pos, binds)
            except LudicsError as e:
                raise SessionSyntaxError(str(e), t.line, t.col) from None
        d = self.design()
        self._check_arity(d, t)
        return d

    def decl_workbench(self, kw):
        t = self.tok
        name = self.ident("workbench name")
        pol = None
        if self.tok.kind == "pol":
            pol = self.tok.text[1]
            self.i += 1
        self.eat("{")
        self.eat("gen")
        gens = self.sep_list(self._wb_item, ";")
        self.eat(";")
        self.eat("test")
        tests = self.sep_list(self._wb_item, "}")
        self.eat("}")
        decl = WorkbenchDecl(pol, tuple(gens), tuple(tests))
        self._define(name, self.s.workbench_decls, decl, t)
        try:
            self.s.workbenches[name] = BehaviourWorkbench(gens, tests, name, pol, check=self.check_workbenches)
        except LudicsError as e:
            raise SessionSyntaxError(f"workbench {name}: {e}", t.line, t.col) from None

    def decl_seq(self, kw):
        t = self.tok
        name = self.ident("sequence name")
        self.eat("=")
        self._define(name, self.s.sequences, self.sequence(), t)

    # -- designs
    def design(self):
        t = self.tok
        if t.kind == "ref":
            self.i += 1
            name = t.text[1:]
            if name not in self.s.designs:
                raise UnknownName(f"design {name} is not defined", t.line, t.col)
            head = self.s.designs[name]
            return self._maybe_app(head)
        if t.kind == "ident" and t.text not in KEYWORDS:
            self.i += 1
            if t.text in ("daimon", "omega"):
                if self.at("|"):
                    self.fail("the head of an application must be negative")
                return DAIMON if t.text == "daimon" else OMEGA
            return self._maybe_app(Var(t.text))
        if self.at("{"):
            return self._maybe_app(self.sum())
        self.fail(f"unexpected {t.text or 'end of input'!r}", ["design", "{", "@name"])

    def _maybe_app(self, head):
        if not self.at("|"):
            return head
        self.i += 1
        if head.positive:
            self.fail("the head of an application must be negative")
        name = self.ident("action name")
        self.eat("<")
        def arg():
            t = self.tok
            a = self.design()
            if a.positive:
                self.fail(f"argument {a} of {name} must be negative", tok=t)
            return a

        args = self.sep_list(arg, ">")
        self.eat(">")
        return App(head, name, tuple(args))

    def sum(self):
        self.eat("{")
        seen = set()

        def branch():
            t = self.tok
            name = self.ident("action name")
            if name in seen:
                self.fail(f"branch {name} appears twice", tok=t)
            seen.add(name)
            self.eat("(")
            xs = self.sep_list(lambda: self.ident("variable"), ")")
            self.eat(")")
            self.eat("=>")
            body = self.design()
            if not body.positive:
                self.fail(f"body of branch {name} must be positive", tok=t)
            return Branch(name, tuple(xs), body)

        bs = self.sep_list(branch, "}")
        self.eat("}")
        try:
            return Sum(bs)
        except LudicsError as e:
            self.fail(str(e))

    def _check_arity(self, d, tok=None):
        if self.s.signature.names:
            try:
                check_design(d, self.s.signature)
            except MalformedDesign as e:
                raise ArityError(str(e), *((tok.line, tok.col) if tok else ())) from None

    # -- sequences
    def sequence(self):
        if self.at("eps"):
            self.i += 1
            return ()
        out = []
        while True:
            t = self.tok
            if t.kind != "ident" or t.text in KEYWORDS:
                break
            if t.text == "daimon":
                self.i += 1
                out.append(DAIMON_ACTION)
                continue
            if self.peek().text == "|":
                addr = self.ident()
                self.eat("|")
                name = self.ident("action name")
                self.eat("<")
                args = self.sep_list(lambda: self.ident("variable"), ">")
                self.eat(">")
                out.append(Action("pos", addr, name, tuple(args)))
            elif self.peek().text == "^":
                name = self.ident()
                self.eat("^")
                addr = self.ident("address")
                self.eat("(")
                args = self.sep_list(lambda: self.ident("variable"), ")")
                self.eat(")")
                out.append(Action("neg", addr, name, tuple(args)))
            else:
                break
        if not out:
            self.fail("empty sequence", ["eps", "action"])
        return tuple(out)

    def end(self):
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self.tok.text!r}", ["end of input"])


def parse(text: str, check_workbenches: bool = True) -> SessionFile:
    return _Parser(text, check_workbenches=check_workbenches).session()


def parse_design(text: str, session: Optional[SessionFile] = None):
    p = _Parser(text, session)
    d = p.design()
    p.end()
    p._check_arity(d)
    return d


def parse_sequence(text: str) -> tuple:
    p = _Parser(text)
    s = p.sequence()
    p.end()
    return s
