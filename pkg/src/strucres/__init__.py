"""Structural resolution for logic programs.

Proof search as transitions between rewriting trees: goals are expanded
into and/or trees by most-general matching, and unification only fires at
the placeholder variables where matching got stuck.  A conventional SLD
engine rides along for cross-checking answers.
"""

from .derive import (
    Answer,
    DerivationTree,
    Observation,
    SearchLimits,
    der_expand,
    observe_prefix,
    solve,
)
from .program import (
    Clause,
    Program,
    Signature,
    parse_program,
    parse_query,
    parse_term,
    pretty,
)
from .rewrite import (
    RewritingTree,
    Verdict,
    candidate_vars,
    is_success,
    productivity_probe,
    rew,
    tier2_subst,
    transition,
)
from .sld import sld_solve
from .term import EVar, FreshContext, IDENTITY, Subst, Var, compose, restrict
from .unify import is_more_general, mgm, mgu, rename_apart

__all__ = [
    "Answer",
    "Clause",
    "DerivationTree",
    "EVar",
    "FreshContext",
    "IDENTITY",
    "Observation",
    "Program",
    "RewritingTree",
    "SearchLimits",
    "Signature",
    "Subst",
    "Var",
    "Verdict",
    "candidate_vars",
    "compose",
    "der_expand",
    "is_more_general",
    "is_success",
    "mgm",
    "mgu",
    "observe_prefix",
    "parse_program",
    "parse_query",
    "parse_term",
    "pretty",
    "productivity_probe",
    "rename_apart",
    "restrict",
    "rew",
    "sld_solve",
    "solve",
    "tier2_subst",
    "transition",
]
