"""First-order terms as finitely branching labeled trees.

A term is addressed by words over the naturals: the root lives at the
empty word and the k-th argument of a node at ``w`` lives at ``w + (k,)``.
Every constructor keeps the branching invariant "label arity == number of
children" by construction, since arity is just ``len(args)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

Address = tuple[int, ...]

EPSILON: Address = ()


class AddressError(LookupError):
    """Raised when an address is not in a term's domain."""


@dataclass(frozen=True)
class Var:
    """A plain named variable; occurs only at leaves."""

    name: str

    def __repr__(self) -> str:
        return f"Var({self.name!r})"


@dataclass(frozen=True)
class EVar:
    """An existential variable pinned to the position that introduced it.

    Clause-body variables that do not occur in the clause head are renamed
    to these when a clause instance is placed into a rewriting tree.  The
    identity is the pair (node address, slot), so rebuilding the same tree
    under a different accumulated substitution reproduces exactly the same
    existential variables at the same addresses.
    """

    address: Address
    slot: int

    @property
    def name(self) -> str:
        return "_E%d_%s" % (self.slot, "".join(str(i) for i in self.address))

    def __repr__(self) -> str:
        return f"EVar({self.address!r}, {self.slot})"


@dataclass(frozen=True)
class App:
    """A function symbol applied to zero or more argument terms."""

    functor: str
    args: tuple["Term", ...] = ()

    def __repr__(self) -> str:
        if not self.args:
            return f"App({self.functor!r})"
        return f"App({self.functor!r}, {self.args!r})"


Term = Union[Var, EVar, App]


def is_var(t: Term) -> bool:
    return isinstance(t, (Var, EVar))


def vars_of(t: Term) -> list[Var | EVar]:
    """All variables of a term, ordered by first occurrence, no repeats."""
    seen: dict[Var | EVar, None] = {}
    stack = [t]
    while stack:
        x = stack.pop(0)
        if is_var(x):
            seen.setdefault(x, None)
        else:
            stack[0:0] = list(x.args)
    return list(seen)


def is_ground(t: Term) -> bool:
    return not vars_of(t)


def depth(t: Term) -> int:
    if is_var(t) or not t.args:
        return 0
    return 1 + max(depth(a) for a in t.args)


def addresses(t: Term) -> Iterator[Address]:
    """Preorder iteration over the term's address domain."""

    def walk(x: Term, at: Address) -> Iterator[Address]:
        yield at
        if not is_var(x):
            for i, a in enumerate(x.args):
                yield from walk(a, at + (i,))

    return walk(t, EPSILON)


def node_count(t: Term) -> int:
    return sum(1 for _ in addresses(t))


def subtree_at(t: Term, address: Address) -> Term:
    """The subterm rooted at ``address``; the whole term at the empty word."""
    cur = t
    for step, i in enumerate(address):
        if is_var(cur) or i >= len(cur.args):
            raise AddressError(f"address {address[: step + 1]} not in term domain")
        cur = cur.args[i]
    return cur


def label_at(t: Term, address: Address) -> str:
    """The symbol or variable name at ``address``."""
    sub = subtree_at(t, address)
    return sub.name if is_var(sub) else sub.functor


class Subst:
    """A finite-support mapping from variables to terms.

    Application is a single simultaneous pass: images are substituted as
    given and never re-scanned, so ``{X -> f(Y), Y -> a}`` sends ``g(X, Y)``
    to ``g(f(Y), a)``.  Identity bindings are dropped on construction.
    """

    __slots__ = ("_map",)

    def __init__(self, mapping: dict | None = None):
        m: dict[Var | EVar, Term] = {}
        if mapping:
            for v, t in mapping.items():
                if t != v:
                    m[v] = t
        self._map = m

    @property
    def mapping(self) -> dict:
        return self._map

    def support(self) -> set:
        return set(self._map)

    def is_identity(self) -> bool:
        return not self._map

    def is_idempotent(self) -> bool:
        """True when no binding image mentions a variable of the support."""
        sup = self.support()
        return all(sup.isdisjoint(vars_of(t)) for t in self._map.values())

    def apply(self, t: Term) -> Term:
        if is_var(t):
            return self._map.get(t, t)
        if not t.args:
            return t
        return App(t.functor, tuple(self.apply(a) for a in t.args))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subst) and self._map == other._map

    def __bool__(self) -> bool:
        return bool(self._map)

    def __repr__(self) -> str:
        if not self._map:
            return "{id}"
        items = sorted(self._map.items(), key=lambda kv: _var_key(kv[0]))
        return "{" + ", ".join(f"{v.name} -> {_plain(t)}" for v, t in items) + "}"


IDENTITY = Subst()


def _var_key(v: Var | EVar) -> tuple:
    if isinstance(v, EVar):
        return (1, v.address, v.slot)
    return (0, v.name)


def _plain(t: Term) -> str:
    if is_var(t):
        return t.name
    if not t.args:
        return t.functor
    return f"{t.functor}({', '.join(_plain(a) for a in t.args)})"


def compose(outer: Subst, inner: Subst) -> Subst:
    """The substitution acting as ``inner`` first, then ``outer``."""
    m = {v: outer.apply(t) for v, t in inner.mapping.items()}
    for v, t in outer.mapping.items():
        m.setdefault(v, t)
    return Subst(m)


def restrict(sigma: Subst, keep: Iterable[Var | EVar]) -> Subst:
    """Projection of ``sigma`` onto ``keep``; identity everywhere else."""
    keep = set(keep)
    return Subst({v: t for v, t in sigma.mapping.items() if v in keep})


class FreshContext:
    """Monotone source of fresh variables for one derivation run.

    Not safe to share across concurrent runs; each run owns its context.
    ``avoid`` lists names already taken (program and query variables).
    """

    def __init__(self, prefix: str = "_G", avoid: Iterable[str] = ()):
        self._prefix = prefix
        self._n = 0
        self._avoid = set(avoid)

    def fresh(self) -> Var:
        while True:
            v = Var(f"{self._prefix}{self._n}")
            self._n += 1
            if v.name not in self._avoid:
                return v


def canonical_terms(terms: Iterable[Term]) -> tuple[Term, ...]:
    """Rename all variables across ``terms`` to a canonical series.

    Variables are numbered by first occurrence in a left-to-right scan of
    the sequence, so two term groups are alpha-equivalent exactly when
    their canonical forms are equal.
    """
    renaming: dict[Var | EVar, Var] = {}

    def canon(t: Term) -> Term:
        if is_var(t):
            if t not in renaming:
                renaming[t] = Var(f"_V{len(renaming)}")
            return renaming[t]
        return App(t.functor, tuple(canon(a) for a in t.args))

    return tuple(canon(t) for t in terms)


def canonical(t: Term) -> Term:
    return canonical_terms([t])[0]


def alpha_equiv(a: Term, b: Term) -> bool:
    return canonical(a) == canonical(b)
