"""Derivation trees and search over rewriting-tree transitions.

A derivation-tree node is a whole rewriting tree; its children enumerate
the transitions at each placeholder variable, in the fixed candidate
order.  Search walks this tree lazily under explicit limits and extracts
answers from success trees by restricting the composed resolvents to the
query's own variables.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .program import Clause, Program, clause_vars
from .rewrite import (
    DEFAULT_FUEL,
    RewVar,
    RewritingTree,
    candidate_vars,
    is_success,
    rew,
    transition,
)
from .term import Address, FreshContext, IDENTITY, Subst, Term, compose, restrict


@dataclass
class SearchLimits:
    fuel: int = DEFAULT_FUEL
    max_depth: int = 64
    max_nodes: int = 10000
    max_steps: int = 10000


DEFAULT_LIMITS = SearchLimits()

STRATEGIES = ("dfs", "bfs", "iddfs")


@dataclass
class Answer:
    """A found proof: query-variable bindings, the success tree that
    witnesses them, and the transition trace that leads there."""

    bindings: Subst
    witness: RewritingTree
    trace: tuple[tuple[RewVar, Subst], ...]


@dataclass
class DerivationNode:
    tree: RewritingTree
    incoming: tuple[RewVar, Subst] | None
    accumulated: Subst


@dataclass
class DerivationTree:
    """Breadth-limited materialization of the full derivation tree.

    Child ``w + (k,)`` of node ``w`` corresponds to the k-th candidate
    variable of the tree at ``w``.  Dead transitions (null resolvent) are
    recorded as explicit dead leaves so the child indexing never shifts;
    ``frontier`` lists nodes whose children were cut off by the limits.
    """

    nodes: dict[Address, DerivationNode] = field(default_factory=dict)
    dead: dict[Address, RewVar] = field(default_factory=dict)
    frontier: set[Address] = field(default_factory=set)


def _base_names(program: Program, goal: Clause) -> set[str]:
    names = set()
    for c in (*program.clauses, goal):
        names.update(v.name for v in clause_vars(c))
    return names


def _step_ctx(depth: int, avoid: set[str]) -> FreshContext:
    # One context per transition, named by the depth along the path, so
    # replaying a trace reproduces the same fresh variables the search saw.
    return FreshContext(f"_R{depth}v", avoid)


def der_expand(program: Program, goal: Clause, limits: SearchLimits | None = None) -> DerivationTree:
    limits = limits or DEFAULT_LIMITS
    avoid = _base_names(program, goal)
    out = DerivationTree()
    out.nodes[()] = DerivationNode(rew(program, goal, IDENTITY, limits.fuel), None, IDENTITY)
    queue = deque([()])
    while queue:
        addr = queue.popleft()
        node = out.nodes[addr]
        if len(addr) >= limits.max_depth:
            if candidate_vars(node.tree):
                out.frontier.add(addr)
            continue
        for k, var in enumerate(candidate_vars(node.tree)):
            if len(out.nodes) >= limits.max_nodes:
                out.frontier.add(addr)
                break
            child = addr + (k,)
            result = transition(program, node.tree, var, _step_ctx(len(addr), avoid))
            if result is None:
                out.dead[child] = var
            else:
                tree, resolvent = result
                out.nodes[child] = DerivationNode(
                    tree, (var, resolvent), compose(resolvent, node.accumulated)
                )
                queue.append(child)
    return out


class AnswerStream:
    """Lazy answer iterator; ``exhausted`` reports whether any limit
    clipped the search, distinguishing "gave up" from finite failure.
    The flag is final once iteration completes."""

    def __init__(self):
        self.exhausted = False
        self._gen = None

    def __iter__(self):
        return self._gen


def solve(
    program: Program,
    goal: Clause,
    strategy: str = "dfs",
    limits: SearchLimits | None = None,
) -> AnswerStream:
    """Enumerate answers for a goal clause in the given strategy order.

    Every success node within the limits is eventually emitted;
    enumeration order is deterministic for a fixed strategy.
    """
    if not goal.is_goal:
        raise ValueError("solve expects a goal clause")
    strategy = strategy.lower()
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}")
    limits = limits or DEFAULT_LIMITS
    stream = AnswerStream()
    stream._gen = _drive(program, goal, strategy, limits, stream)
    return stream


def _drive(program, goal, strategy, limits, stream):
    budget = {"steps": 0, "nodes": 1}
    if strategy in ("dfs", "bfs"):
        clip = {"depth": False, "budget": False, "truncated": False}
        yield from _walk(
            program, goal, limits, strategy == "dfs", budget, clip, limits.max_depth
        )
        stream.exhausted = any(clip.values())
        return
    # Iterative deepening: each round emits only the answers first reached
    # at the current bound, so nothing is reported twice.
    truncated_any = False
    for bound in range(limits.max_depth + 1):
        clip = {"depth": False, "budget": False, "truncated": False}
        yield from _walk(
            program, goal, limits, True, budget, clip, bound, emit_depth=bound
        )
        truncated_any = truncated_any or clip["truncated"]
        if clip["budget"]:
            stream.exhausted = True
            return
        if not clip["depth"]:
            # Fully explored under this bound: nothing deeper exists.
            stream.exhausted = truncated_any
            return
    stream.exhausted = True


def _walk(program, goal, limits, lifo, budget, clip, depth_cap, emit_depth=None):
    avoid = _base_names(program, goal)
    qvars = clause_vars(goal)
    root = rew(program, goal, IDENTITY, limits.fuel)
    pending = deque([(root, IDENTITY, (), 0)])
    while pending:
        tree, acc, trace, depth = pending.pop() if lifo else pending.popleft()
        if tree.truncated:
            clip["truncated"] = True
        if is_success(tree) and (emit_depth is None or depth == emit_depth):
            yield Answer(restrict(acc, qvars), tree, trace)
        if depth >= depth_cap:
            if candidate_vars(tree):
                clip["depth"] = True
            continue
        children = []
        for var in candidate_vars(tree):
            if budget["steps"] >= limits.max_steps:
                clip["budget"] = True
                break
            budget["steps"] += 1
            result = transition(program, tree, var, _step_ctx(depth, avoid))
            if result is None:
                continue
            if budget["nodes"] >= limits.max_nodes:
                clip["budget"] = True
                break
            budget["nodes"] += 1
            child_tree, resolvent = result
            children.append(
                (child_tree, compose(resolvent, acc), trace + ((var, resolvent),), depth + 1)
            )
        pending.extend(reversed(children) if lifo else children)


@dataclass
class Observation:
    """The goal instances seen along a single fixed-strategy derivation."""

    goals: tuple[Term, ...]
    died: bool
    trees: tuple[RewritingTree, ...]


def observe_prefix(
    program: Program, goal: Clause, steps: int, fuel: int = DEFAULT_FUEL
) -> Observation:
    """Watch a derivation: the instantiated query of each tree it visits.

    Runs the fixed strategy "first candidate with a non-null resolvent"
    and reports the root goal term of each rewriting tree encountered,
    the initial tree included, up to ``steps`` entries.  If every
    candidate of some tree is dead first, the shorter list is returned
    with ``died`` set.
    """
    if not goal.body:
        return Observation((), False, ())
    if len(goal.body) != 1:
        raise ValueError("observation needs a single-term query")
    if steps <= 0:
        return Observation((), False, ())
    avoid = _base_names(program, goal)
    goals: list[Term] = []
    trees: list[RewritingTree] = []
    died = False
    tree = rew(program, goal, IDENTITY, fuel)
    while True:
        trees.append(tree)
        goals.append(tree.nodes[()].instance.body[0])
        if len(goals) == steps:
            break
        successor = None
        for var in candidate_vars(tree):
            result = transition(program, tree, var, _step_ctx(len(goals) - 1, avoid))
            if result is not None:
                successor = result[0]
                break
        if successor is None:
            died = True
            break
        tree = successor
    return Observation(tuple(goals), died, tuple(trees))


def replay_trace(
    program: Program,
    goal: Clause,
    trace,
    fuel: int = DEFAULT_FUEL,
) -> RewritingTree:
    """Re-run a recorded transition trace from the root tree.

    Uses the same depth-indexed fresh naming as the search, so the result
    reproduces the witness tree exactly.
    """
    avoid = _base_names(program, goal)
    tree = rew(program, goal, IDENTITY, fuel)
    for depth, (var, _expected) in enumerate(trace):
        result = transition(program, tree, var, _step_ctx(depth, avoid))
        if result is None:
            raise ValueError(f"trace step {depth} at {var!r} is dead")
        tree = result[0]
    return tree
