"""Baseline SLD resolution, used as an independent answer oracle.

Leftmost literal selection, clauses tried in index order, depth-first
backtracking.  Each answer reports the number of resolution steps on its
own derivation; a global step budget stops runaway searches.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .program import Clause, Program, clause_vars
from .term import FreshContext, IDENTITY, Subst, compose, restrict
from .unify import mgu, rename_apart


@dataclass
class SldAnswer:
    """Bindings restricted to the query variables, the length of the
    successful derivation, and the clause indices resolved along it."""

    bindings: Subst
    steps: int
    trace: tuple[int, ...]


class SldStream:
    """Lazy answer iterator with a final ``exhausted`` flag, set when the
    step budget ran out before the search space did."""

    def __init__(self):
        self.exhausted = False
        self._gen = None

    def __iter__(self):
        return self._gen


def sld_solve(
    program: Program,
    goal: Clause,
    selection: str = "topmost_clause",
    max_steps: int = 10000,
) -> SldStream:
    if not goal.is_goal:
        raise ValueError("sld_solve expects a goal clause")
    if selection != "topmost_clause":
        raise ValueError(f"unknown selection strategy {selection!r}")
    stream = SldStream()
    stream._gen = _search(program, goal, max_steps, stream)
    return stream


def _clause_ctx(depth: int, clause_index: int, avoid: set[str]) -> FreshContext:
    # Naming depends only on the position in the derivation, so replaying
    # a trace renames exactly as the search did.
    return FreshContext(f"_S{depth}c{clause_index}v", avoid)


def _search(program, goal, max_steps, stream):
    avoid = set()
    for c in (*program.clauses, goal):
        avoid.update(v.name for v in clause_vars(c))
    qvars = clause_vars(goal)
    pending = deque([(tuple(goal.body), IDENTITY, 0, ())])
    budget = 0
    while pending:
        goals, acc, depth, trace = pending.pop()
        if not goals:
            yield SldAnswer(restrict(acc, qvars), depth, trace)
            continue
        selected, rest = goals[0], goals[1:]
        children = []
        for i, clause in enumerate(program.clauses):
            if budget >= max_steps:
                stream.exhausted = True
                return
            renamed = rename_apart(clause, _clause_ctx(depth, i, avoid))
            unifier = mgu(renamed.head, selected)
            if unifier is None:
                continue
            budget += 1
            new_goals = tuple(unifier.apply(b) for b in renamed.body) + tuple(
                unifier.apply(g) for g in rest
            )
            children.append((new_goals, compose(unifier, acc), depth + 1, trace + (i,)))
        pending.extend(reversed(children))


def replay_sld_trace(program: Program, goal: Clause, trace) -> Subst:
    """Re-run a recorded clause-index trace; returns the final bindings
    restricted to the query variables.  Raises if any step fails or the
    trace does not end in the empty goal."""
    avoid = set()
    for c in (*program.clauses, goal):
        avoid.update(v.name for v in clause_vars(c))
    qvars = clause_vars(goal)
    goals = tuple(goal.body)
    acc = IDENTITY
    for depth, i in enumerate(trace):
        if not goals:
            raise ValueError("trace continues past the empty goal")
        renamed = rename_apart(program[i], _clause_ctx(depth, i, avoid))
        unifier = mgu(renamed.head, goals[0])
        if unifier is None:
            raise ValueError(f"trace step {depth} (clause {i}) does not resolve")
        goals = tuple(unifier.apply(b) for b in renamed.body) + tuple(
            unifier.apply(g) for g in goals[1:]
        )
        acc = compose(unifier, acc)
    if goals:
        raise ValueError("trace ends before the goal is empty")
    return restrict(acc, qvars)
