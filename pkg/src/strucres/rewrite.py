"""Rewriting trees: construction, substitution, transitions, success.

A rewriting tree records, for one goal clause under a program, every
matching alternative at once.  Or-nodes (even address length) hold clause
instances or placeholder variables, and-nodes (odd length) hold the body
terms still to be proved.  An and-node has one or-child per program
clause: the clause instance when its head matches the term, otherwise a
placeholder variable meaning "no match now, maybe after instantiation".

Trees may be infinite, so construction is bounded by a depth budget
(``fuel``).  A node at the cut depth whose subtree would continue is
replaced by an explicit truncation marker; trees whose true depth stays
under the budget come out unmarked.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .program import Clause, Program
from .term import (
    Address,
    App,
    EPSILON,
    FreshContext,
    IDENTITY,
    Subst,
    Term,
    Var,
    compose,
    is_var,
    vars_of,
)
from .unify import mgm, mgu, rename_apart

DEFAULT_FUEL = 32


@dataclass(frozen=True)
class RewVar:
    """Identity of a placeholder or-node.

    Serials are unique within one tree and assigned in lexicographic order
    of (parent address, clause index), which also fixes the ordering used
    to index transitions.
    """

    serial: int
    clause_index: int
    parent_address: Address

    @property
    def label(self) -> str:
        return f"X_{self.serial}"


@dataclass(frozen=True)
class AndNode:
    term: Term


@dataclass(frozen=True)
class OrClause:
    instance: Clause
    clause_index: int | None


@dataclass(frozen=True)
class OrVar:
    var: RewVar


@dataclass(frozen=True)
class Truncated:
    pass


TRUNCATED = Truncated()

RewNode = AndNode | OrClause | OrVar | Truncated


@dataclass
class RewritingTree:
    nodes: dict[Address, RewNode]
    program: Program
    root_clause: Clause
    sigma: Subst
    fuel: int
    truncated: bool

    def node(self, address: Address) -> RewNode:
        return self.nodes[address]

    def children(self, address: Address) -> list[Address]:
        out = []
        i = 0
        while address + (i,) in self.nodes:
            out.append(address + (i,))
            i += 1
        return out

    def term_at(self, address: Address) -> Term:
        node = self.nodes[address]
        if not isinstance(node, AndNode):
            raise ValueError(f"no term at {address}: {node}")
        return node.term

    @property
    def arity(self) -> int:
        return len(candidate_vars(self))


class _Builder:
    """Shared expansion engine for fresh trees and grafted subtrees."""

    def __init__(self, program: Program, sigma: Subst, fuel: int):
        self.program = program
        self.sigma = sigma
        self.fuel = fuel
        self.nodes: dict[Address, RewNode] = {}
        self.truncated = False

    def or_node(self, address: Address, instance: Clause, clause_index: int | None) -> None:
        if len(address) == self.fuel and instance.body:
            self.nodes[address] = TRUNCATED
            self.truncated = True
            return
        self.nodes[address] = OrClause(instance, clause_index)
        for j, body_term in enumerate(instance.body):
            self.and_node(address + (j,), body_term)

    def and_node(self, address: Address, term: Term) -> None:
        if len(address) == self.fuel:
            self.nodes[address] = TRUNCATED
            self.truncated = True
            return
        self.nodes[address] = AndNode(term)
        # The scratch names never survive matching, but they must not
        # collide with the term's own variables.
        scratch = FreshContext("_M", avoid={v.name for v in vars_of(term)})
        for i, clause in enumerate(self.program.clauses):
            child = address + (i,)
            renamed = rename_apart(clause, scratch, at_address=child)
            theta = mgm(renamed.head, term)
            if theta is None:
                self.nodes[child] = OrVar(RewVar(0, i, address))
            else:
                self.or_node(child, renamed.subst(theta).subst(self.sigma), i)


def _assign_serials(nodes: dict[Address, RewNode], start: int) -> None:
    pending = sorted(
        (addr for addr, n in nodes.items() if isinstance(n, OrVar) and n.var.serial == 0),
        key=lambda a: (a[:-1], a[-1]),
    )
    for serial, addr in enumerate(pending, start):
        old = nodes[addr].var
        nodes[addr] = OrVar(RewVar(serial, old.clause_index, old.parent_address))


def rew(program: Program, clause: Clause, sigma: Subst = IDENTITY, fuel: int = DEFAULT_FUEL) -> RewritingTree:
    """Construct the rewriting tree for ``clause`` under ``sigma``.

    Deterministic: placeholder serials and existential-variable identities
    are derived from node addresses, never from shared counters, so equal
    inputs give node-for-node equal trees.
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1")
    assert sigma.is_idempotent(), "accumulated substitution must be idempotent"
    b = _Builder(program, sigma, fuel)
    b.or_node(EPSILON, clause.subst(sigma), None)
    _assign_serials(b.nodes, 1)
    return RewritingTree(b.nodes, program, clause, sigma, fuel, b.truncated)


def candidate_vars(tree: RewritingTree) -> list[RewVar]:
    """All placeholder variables, in (parent address, clause index) order.

    This ordering fixes the child indices of derivation-tree nodes, and
    its length is the tree's arity.
    """
    vs = [n.var for n in tree.nodes.values() if isinstance(n, OrVar)]
    vs.sort(key=lambda v: (v.parent_address, v.clause_index))
    return vs


def tier2_subst(theta: Subst, tree: RewritingTree) -> RewritingTree:
    """Apply a first-order substitution to a whole rewriting tree.

    And-nodes and clause or-nodes are mapped pointwise.  A placeholder
    whose clause head now matches the instantiated parent term is replaced
    by the freshly expanded subtree for that clause instance; placeholders
    that still fail to match are kept unchanged, serial included.  The
    result equals a from-scratch construction under the composed
    substitution, up to renumbering of placeholder serials.
    """
    assert theta.is_idempotent(), "tree substitution must be idempotent"
    new_sigma = compose(theta, tree.sigma)
    nodes: dict[Address, RewNode] = {}
    truncated = tree.truncated
    deferred = []
    for addr, node in tree.nodes.items():
        if isinstance(node, AndNode):
            nodes[addr] = AndNode(theta.apply(node.term))
        elif isinstance(node, OrClause):
            nodes[addr] = OrClause(node.instance.subst(theta), node.clause_index)
        elif isinstance(node, OrVar):
            deferred.append((addr, node))
        else:
            nodes[addr] = node
    for addr, node in deferred:
        parent = nodes[node.var.parent_address]
        scratch = FreshContext("_M", avoid={v.name for v in vars_of(parent.term)})
        renamed = rename_apart(tree.program[node.var.clause_index], scratch, at_address=addr)
        theta_match = mgm(renamed.head, parent.term)
        if theta_match is None:
            nodes[addr] = node
        else:
            b = _Builder(tree.program, new_sigma, tree.fuel)
            b.or_node(addr, renamed.subst(theta_match).subst(new_sigma), node.var.clause_index)
            nodes.update(b.nodes)
            truncated = truncated or b.truncated
    top = max(
        (n.var.serial for n in nodes.values() if isinstance(n, OrVar) and n.var.serial > 0),
        default=0,
    )
    _assign_serials(nodes, top + 1)
    return RewritingTree(nodes, tree.program, tree.root_clause, new_sigma, tree.fuel, truncated)


def transition(
    program: Program,
    tree: RewritingTree,
    var: RewVar,
    ctx: FreshContext | None = None,
) -> tuple[RewritingTree, Subst] | None:
    """One search step at a placeholder variable.

    The clause head is unified with the parent and-node term; if no
    unifier exists the step is dead and ``None`` is returned.  Otherwise
    the unifier is the external resolvent, and the successor tree is a
    from-scratch construction of the root clause under the composed
    substitution.  Chain steps with a shared ``ctx`` so fresh names stay
    distinct along a derivation.
    """
    address = next(
        (a for a, n in tree.nodes.items() if isinstance(n, OrVar) and n.var == var),
        None,
    )
    if address is None:
        raise ValueError(f"unknown rewriting-tree variable {var!r}")
    parent_term = tree.term_at(var.parent_address)
    if ctx is None:
        ctx = FreshContext("_T", avoid={v.name for v in vars_of(parent_term)})
    renamed = rename_apart(program[var.clause_index], ctx)
    resolvent = mgu(renamed.head, parent_term)
    if resolvent is None:
        return None
    assert mgm(renamed.head, parent_term) is None, (
        "a matching clause head cannot sit at a placeholder node"
    )
    successor = rew(program, tree.root_clause, compose(resolvent, tree.sigma), tree.fuel)
    return successor, resolvent


def is_success(tree: RewritingTree) -> bool:
    """Whether the tree contains a complete proof of its root clause.

    A clause or-node succeeds when all of its body and-nodes succeed (so
    an empty body succeeds outright); an and-node succeeds when some
    clause or-child succeeds; placeholders and truncation markers never
    succeed.
    """
    return _success_map(tree)[EPSILON]


def _success_map(tree: RewritingTree) -> dict[Address, bool]:
    ok: dict[Address, bool] = {}

    def walk(address: Address) -> bool:
        node = tree.nodes[address]
        if isinstance(node, (OrVar, Truncated)):
            result = False
        elif isinstance(node, OrClause):
            result = all(walk(c) for c in tree.children(address))
        else:
            result = any(walk(c) for c in tree.children(address))
        ok[address] = result
        return result

    walk(EPSILON)
    return ok


def witness_addresses(tree: RewritingTree) -> frozenset[Address]:
    """Addresses of the proof skeleton: the nodes a success rests on.

    Empty when the tree is not a success.  At each succeeding and-node the
    lowest-index succeeding clause child is chosen, so the witness is
    deterministic.
    """
    ok = _success_map(tree)
    if not ok[EPSILON]:
        return frozenset()
    out: set[Address] = set()

    def walk(address: Address) -> None:
        out.add(address)
        node = tree.nodes[address]
        if isinstance(node, OrClause):
            for c in tree.children(address):
                walk(c)
        else:
            chosen = next(c for c in tree.children(address) if ok[c])
            walk(chosen)

    walk(EPSILON)
    return frozenset(out)


class Verdict(enum.Enum):
    FINITE_WITHIN_BOUND = "FiniteWithinBound"
    EXCEEDS_BOUND = "ExceedsBound"


def productivity_probe(program: Program, clause: Clause, fuel: int) -> Verdict:
    """Bounded check that the clause's rewriting tree stays finite.

    ``FINITE_WITHIN_BOUND`` is a definite observation; ``EXCEEDS_BOUND``
    only says the tree outgrew this budget, never that it is infinite.
    """
    tree = rew(program, clause, IDENTITY, fuel)
    return Verdict.EXCEEDS_BOUND if tree.truncated else Verdict.FINITE_WITHIN_BOUND


def canonical_form(tree: RewritingTree) -> dict[Address, tuple]:
    """A comparison key invariant under serial and plain-variable renaming.

    Plain variables are renumbered by first occurrence over an
    address-ordered traversal; existential variables are kept verbatim
    since their identity is positional.  Placeholder nodes compare by
    (parent address, clause index), which is what the canonical serial
    numbering would assign anyway.
    """
    renaming: dict = {}

    def canon_term(t: Term) -> Term:
        if isinstance(t, Var):
            if t not in renaming:
                renaming[t] = Var(f"_V{len(renaming)}")
            return renaming[t]
        if is_var(t):
            return t
        return App(t.functor, tuple(canon_term(a) for a in t.args))

    out: dict[Address, tuple] = {}
    for addr in sorted(tree.nodes):
        node = tree.nodes[addr]
        if isinstance(node, AndNode):
            out[addr] = ("and", canon_term(node.term))
        elif isinstance(node, OrClause):
            inst = node.instance
            out[addr] = (
                "or",
                node.clause_index,
                canon_term(inst.head),
                tuple(canon_term(b) for b in inst.body),
            )
        elif isinstance(node, OrVar):
            out[addr] = ("var", node.var.parent_address, node.var.clause_index)
        else:
            out[addr] = ("cut",)
    return out
