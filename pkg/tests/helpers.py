"""Small shared helpers for the test suite."""

from strucres.program import parse_query, parse_term
from strucres.term import App, Subst, Var, alpha_equiv, canonical_terms

pt = parse_term
pq = parse_query


def S(pairs: dict) -> Subst:
    """Substitution from {"X": "f(Y)"} style string pairs."""
    return Subst({Var(k): pt(v) for k, v in pairs.items()})


def substs_alpha_equal(s1: Subst, s2: Subst, probe_vars) -> bool:
    """Equality of two substitutions up to renaming, over the probe set."""
    ordered = sorted(probe_vars, key=lambda v: v.name)
    left = App("$t", tuple(s1.apply(v) for v in ordered))
    right = App("$t", tuple(s2.apply(v) for v in ordered))
    return alpha_equiv(left, right)


def terms_alpha_equal_jointly(xs, ys) -> bool:
    """Alpha-equality of two term sequences with shared variables."""
    return canonical_terms(xs) == canonical_terms(ys)
