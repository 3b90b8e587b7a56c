"""Most general unifiers and matchers, plus the renaming-apart protocol.

``unify``/``match`` raise typed errors that distinguish symbol clashes
from occurs-check failures; ``mgu``/``mgm`` are the optional-returning
wrappers used by the engines.  Matching is one-directional: only pattern
variables are ever bound, so a symbol sitting above a target variable is
a mismatch, not a binding opportunity.
"""

from __future__ import annotations

from .program import Clause, clause_vars, existential_vars
from .term import Address, App, EVar, FreshContext, Subst, Term, is_var, vars_of


class UnifyError(Exception):
    """Base for unification and matching failures."""


class ClashError(UnifyError):
    """Incompatible symbols, arities, or bindings."""


class OccursCheckError(UnifyError):
    """A variable would have to contain itself."""


def unify(t: Term, u: Term) -> Subst:
    """Most general unifier of ``t`` and ``u``; raises on failure.

    Robinson-style with an explicit occurs check.  The result is
    idempotent: all bindings are fully resolved before being returned.
    """
    bind: dict = {}

    def walk(x: Term) -> Term:
        while is_var(x) and x in bind:
            x = bind[x]
        return x

    def occurs(v, x: Term) -> bool:
        x = walk(x)
        if is_var(x):
            return x == v
        return any(occurs(v, a) for a in x.args)

    stack = [(t, u)]
    while stack:
        a, b = stack.pop()
        a, b = walk(a), walk(b)
        if a == b:
            continue
        if is_var(a):
            if occurs(a, b):
                raise OccursCheckError(f"{a.name} occurs in its own binding")
            bind[a] = b
        elif is_var(b):
            if occurs(b, a):
                raise OccursCheckError(f"{b.name} occurs in its own binding")
            bind[b] = a
        else:
            if a.functor != b.functor or len(a.args) != len(b.args):
                raise ClashError(
                    f"{a.functor}/{len(a.args)} clashes with {b.functor}/{len(b.args)}"
                )
            stack.extend(zip(a.args, b.args))

    def resolve(x: Term) -> Term:
        x = walk(x)
        if is_var(x):
            return x
        return App(x.functor, tuple(resolve(a) for a in x.args))

    return Subst({v: resolve(v) for v in bind})


def mgu(t: Term, u: Term) -> Subst | None:
    try:
        return unify(t, u)
    except UnifyError:
        return None


def match(pattern: Term, target: Term) -> Subst:
    """Most general matcher sending ``pattern`` onto ``target``.

    Binds pattern variables only; target variables are opaque constants
    here.  The occurs check is enabled for safety, although renamed-apart
    inputs never trip it.
    """
    bind: dict = {}
    stack = [(pattern, target)]
    while stack:
        p, t = stack.pop()
        if is_var(p):
            if p in bind:
                if bind[p] != t:
                    raise ClashError(f"{p.name} would need two different bindings")
            else:
                if p != t and p in vars_of(t):
                    raise OccursCheckError(f"{p.name} occurs in its own binding")
                bind[p] = t
        elif is_var(t):
            raise ClashError(f"symbol {p.functor!r} cannot match the variable {t.name}")
        else:
            if p.functor != t.functor or len(p.args) != len(t.args):
                raise ClashError(
                    f"{p.functor}/{len(p.args)} clashes with {t.functor}/{len(t.args)}"
                )
            stack.extend(zip(p.args, t.args))
    return Subst(bind)


def mgm(pattern: Term, target: Term) -> Subst | None:
    try:
        return match(pattern, target)
    except UnifyError:
        return None


def rename_apart(c: Clause, ctx: FreshContext, at_address: Address | None = None) -> Clause:
    """An alpha-variant of ``c`` with all variables replaced.

    Non-existential variables always become fresh variables from ``ctx``.
    When ``at_address`` is given the call is part of placing a clause
    instance at that rewriting-tree node, and each existential variable is
    renamed deterministically to the existential variable of that address
    and its slot; without an address they are freshened like the rest.
    """
    m: dict = {}
    if at_address is not None:
        for k, v in enumerate(existential_vars(c), start=1):
            m[v] = EVar(at_address, k)
    for v in clause_vars(c):
        if v not in m:
            m[v] = ctx.fresh()
    return c.subst(Subst(m))


def is_more_general(s1: Subst, s2: Subst, probe_vars) -> bool:
    """True when some delta turns every ``s1`` image into the ``s2`` image.

    Decided by matching the tuple of ``s1`` images against the tuple of
    ``s2`` images over ``probe_vars``, which keeps shared variables
    consistent across the probes.
    """
    ordered = sorted(probe_vars, key=lambda v: (isinstance(v, EVar), v.name))
    pat = App("$probe", tuple(s1.apply(v) for v in ordered))
    tgt = App("$probe", tuple(s2.apply(v) for v in ordered))
    return mgm(pat, tgt) is not None
