"""Clause and program representation, concrete syntax, and printing.

Source syntax is Prolog-like: facts ``nat(0).``, rules
``nat(s(X)) :- nat(X).``, queries ``?- nat(s(X)).``.  Functors and
constants start lowercase or are bare digit strings, variables start with
an uppercase letter or underscore, ``%`` starts a comment, and ``[t, u]``
abbreviates the stream constructor ``scons(t, u)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .term import App, Subst, Term, Var, is_var

GOAL_FUNCTOR = "?"


@dataclass(frozen=True)
class Clause:
    """A head term plus an ordered body; arity is body length plus one.

    Goal clauses carry the reserved head symbol ``?``, which is excluded
    from every signature.
    """

    head: Term
    body: tuple[Term, ...] = ()

    @property
    def is_goal(self) -> bool:
        return isinstance(self.head, App) and self.head.functor == GOAL_FUNCTOR

    @property
    def arity(self) -> int:
        return len(self.body) + 1

    def subst(self, sigma: Subst) -> "Clause":
        return Clause(sigma.apply(self.head), tuple(sigma.apply(b) for b in self.body))


EMPTY_GOAL = Clause(App(GOAL_FUNCTOR))


def goal(*body: Term) -> Clause:
    return Clause(App(GOAL_FUNCTOR), tuple(body))


@dataclass(frozen=True)
class Program:
    """Clauses indexed contiguously from zero, in source order."""

    clauses: tuple[Clause, ...]

    def __len__(self) -> int:
        return len(self.clauses)

    def __getitem__(self, i: int) -> Clause:
        return self.clauses[i]

    @property
    def arity(self) -> int:
        return len(self.clauses)


def clause_vars(c: Clause) -> list:
    """Variables of a clause, head first, ordered by first occurrence."""
    seen: dict = {}
    for t in (c.head, *c.body):
        for v in _term_vars(t):
            seen.setdefault(v, None)
    return list(seen)


def _term_vars(t: Term):
    if is_var(t):
        yield t
    else:
        for a in t.args:
            yield from _term_vars(a)


def existential_vars(c: Clause) -> list:
    """Body variables absent from the head, ordered by first occurrence.

    The position in this list is the slot number used when such variables
    are renamed to position-pinned existential variables.
    """
    if c.is_goal:
        raise ValueError("goal clauses have no existential variables")
    head_vars = set(_term_vars(c.head))
    out: dict = {}
    for b in c.body:
        for v in _term_vars(b):
            if v not in head_vars:
                out.setdefault(v, None)
    return list(out)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


class ArityConflictError(ParseError):
    def __init__(self, functor: str, old: int, new: int, line: int, col: int):
        super().__init__(
            f"functor {functor!r} used with arity {new} but previously with arity {old}",
            line,
            col,
        )
        self.functor = functor


class Signature:
    """Name-to-arity table; one name maps to exactly one arity."""

    def __init__(self, arities: dict[str, int] | None = None):
        self._arities = dict(arities or {})

    def observe(self, name: str, arity: int, line: int = 0, col: int = 0) -> None:
        old = self._arities.get(name)
        if old is None:
            self._arities[name] = arity
        elif old != arity:
            raise ArityConflictError(name, old, arity, line, col)

    def observe_term(self, t: Term, line: int = 0, col: int = 0) -> None:
        if is_var(t):
            return
        self.observe(t.functor, len(t.args), line, col)
        for a in t.args:
            self.observe_term(a, line, col)

    def arity_of(self, name: str) -> int | None:
        return self._arities.get(name)

    def names(self) -> set[str]:
        return set(self._arities)

    def copy(self) -> "Signature":
        return Signature(self._arities)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<implies>:-)
  | (?P<query>\?-)
  | (?P<name>[a-z][A-Za-z0-9_]*|[0-9]+)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<punct>[(),.\[\]])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind not in ("ws", "comment"):
            tok_kind = lexeme if kind in ("punct", "implies", "query") else kind
            toks.append(_Tok(tok_kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str, signature: Signature):
        self.toks = _tokenize(text)
        self.pos = 0
        self.sig = signature

    def peek(self) -> _Tok | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def next(self) -> _Tok:
        tok = self.peek()
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col + len(last.text))
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at_end(self) -> bool:
        return self.pos >= len(self.toks)

    def term(self) -> Term:
        tok = self.next()
        if tok.kind == "var":
            return Var(tok.text)
        if tok.kind == "name":
            nxt = self.peek()
            if nxt is not None and nxt.kind == "(":
                self.next()
                args = [self.term()]
                while self.peek() is not None and self.peek().kind == ",":
                    self.next()
                    args.append(self.term())
                self.expect(")")
                self.sig.observe(tok.text, len(args), tok.line, tok.col)
                return App(tok.text, tuple(args))
            self.sig.observe(tok.text, 0, tok.line, tok.col)
            return App(tok.text)
        if tok.kind == "[":
            first = self.term()
            sep = self.next()
            if sep.kind != ",":
                raise ParseError("stream brackets take exactly two elements", sep.line, sep.col)
            second = self.term()
            close = self.next()
            if close.kind != "]":
                raise ParseError("stream brackets take exactly two elements", close.line, close.col)
            self.sig.observe("scons", 2, tok.line, tok.col)
            return App("scons", (first, second))
        raise ParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)

    def atom(self) -> Term:
        tok = self.peek()
        t = self.term()
        if is_var(t):
            raise ParseError("a clause atom cannot be a bare variable", tok.line, tok.col)
        return t

    def clause(self) -> Clause:
        tok = self.peek()
        if tok is not None and tok.kind == "?-":
            raise ParseError("queries are not allowed in a program file", tok.line, tok.col)
        head = self.atom()
        body: list[Term] = []
        nxt = self.next()
        if nxt.kind == ":-":
            body.append(self.atom())
            while True:
                nxt = self.next()
                if nxt.kind == ",":
                    body.append(self.atom())
                    continue
                break
        if nxt.kind != ".":
            raise ParseError(f"expected '.', found {nxt.text!r}", nxt.line, nxt.col)
        return Clause(head, tuple(body))

    def query(self) -> Clause:
        self.expect("?-")
        nxt = self.peek()
        if nxt is not None and nxt.kind == ".":
            self.next()
            return EMPTY_GOAL
        body = [self.atom()]
        while True:
            tok = self.next()
            if tok.kind == ",":
                body.append(self.atom())
                continue
            if tok.kind == ".":
                break
            raise ParseError(f"expected ',' or '.', found {tok.text!r}", tok.line, tok.col)
        return goal(*body)


def parse_program(text: str) -> tuple[Program, Signature]:
    """Parse a clause list; clauses are indexed in source order from zero."""
    sig = Signature()
    p = _Parser(text, sig)
    if p.at_end():
        raise ParseError("empty program", 1, 1)
    clauses = []
    while not p.at_end():
        clauses.append(p.clause())
    return Program(tuple(clauses)), sig


def parse_query(text: str) -> Clause:
    """Parse a goal of the form ``?- t1, ..., tn.``; ``?-.`` is the empty goal."""
    p = _Parser(text, Signature())
    g = p.query()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input after query: {tok.text!r}", tok.line, tok.col)
    return g


def parse_term(text: str) -> Term:
    p = _Parser(text, Signature())
    t = p.term()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"trailing input after term: {tok.text!r}", tok.line, tok.col)
    return t


def pretty(x) -> str:
    """Render a term, clause, or program back to source syntax."""
    if isinstance(x, Program):
        return "\n".join(pretty(c) for c in x.clauses)
    if isinstance(x, Clause):
        body = ", ".join(pretty_term(b) for b in x.body)
        if x.is_goal:
            return f"?- {body}." if body else "?-."
        if body:
            return f"{pretty_term(x.head)} :- {body}."
        return f"{pretty_term(x.head)}."
    return pretty_term(x)


def pretty_term(t: Term) -> str:
    if is_var(t):
        return t.name
    if not t.args:
        return t.functor
    return f"{t.functor}({', '.join(pretty_term(a) for a in t.args)})"
