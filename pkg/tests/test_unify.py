import pytest
from hypothesis import given, settings

from strucres.program import Clause, parse_program
from strucres.term import EVar, FreshContext, IDENTITY, Var, compose, restrict, vars_of
from strucres.unify import (
    ClashError,
    OccursCheckError,
    is_more_general,
    match,
    mgm,
    mgu,
    rename_apart,
    unify,
)

from .helpers import S, pt, substs_alpha_equal
from .strategies import ground_terms, idempotent_substs, terms


class TestMgu:
    def test_example_solution(self):
        assert mgu(pt("nat(s(X))"), pt("nat(s(0))")) == S({"X": "0"})

    def test_reflexive_gives_identity(self):
        t = pt("g(X, f(Y))")
        assert mgu(t, t) == IDENTITY

    def test_occurs_check(self):
        assert mgu(pt("X"), pt("f(X)")) is None
        with pytest.raises(OccursCheckError):
            unify(pt("X"), pt("f(X)"))

    def test_clash_diagnostic_is_distinct(self):
        with pytest.raises(ClashError):
            unify(pt("f(a)"), pt("g(a)"))
        with pytest.raises(ClashError):
            unify(pt("a"), pt("b"))

    def test_shared_variable_chains(self):
        sigma = mgu(pt("g(X, Y)"), pt("g(Y, a)"))
        assert sigma.apply(pt("g(X, Y)")) == pt("g(a, a)")


class TestMgm:
    def test_binds_pattern_variables_only(self):
        sigma = mgm(pt("from(X, scons(X, Y))"), pt("from(0, scons(0, Y1))"))
        assert sigma == S({"X": "0", "Y": "Y1"})

    def test_ground_identity(self):
        assert mgm(pt("nat(0)"), pt("nat(0)")) == IDENTITY

    def test_symbol_above_target_variable_fails(self):
        assert mgm(pt("nat(s(X))"), pt("nat(Y)")) is None

    def test_repeated_variable_consistency(self):
        assert mgm(pt("g(X, X)"), pt("g(a, b)")) is None
        assert mgm(pt("g(X, X)"), pt("g(a, a)")) == S({"X": "a"})

    def test_target_variables_never_bound(self):
        sigma = mgm(pt("p(X)"), pt("p(Y)"))
        assert sigma == S({"X": "Y"})
        assert Var("Y") not in sigma.support()


class TestRenameApart:
    CONN = "conn(X, Y) :- edge(X, Z), conn(Z, Y)."

    def clause(self) -> Clause:
        program, _ = parse_program(self.CONN)
        return program[0]

    def test_existential_gets_positional_identity(self):
        renamed = rename_apart(self.clause(), FreshContext(), at_address=(0, 1))
        ex = EVar((0, 1), 1)
        assert renamed.body[0].args[1] == ex
        assert renamed.body[1].args[0] == ex
        assert all(isinstance(v, Var) for v in vars_of(renamed.head))

    def test_no_variables_is_fixed_point(self):
        program, _ = parse_program("nat(0).")
        assert rename_apart(program[0], FreshContext()) == program[0]

    def test_deterministic_existentials_fresh_universals(self):
        ctx = FreshContext()
        first = rename_apart(self.clause(), ctx, at_address=(0, 1))
        second = rename_apart(self.clause(), ctx, at_address=(0, 1))
        assert first.body[0].args[1] == second.body[0].args[1]
        assert first.head != second.head

    def test_without_address_everything_is_fresh(self):
        renamed = rename_apart(self.clause(), FreshContext())
        assert all(isinstance(v, Var) for v in vars_of(renamed.body[0]))
        assert not (set(vars_of(renamed.head)) & set(vars_of(self.clause().head)))


class TestIsMoreGeneral:
    def test_identity_is_most_general(self):
        assert is_more_general(IDENTITY, S({"X": "f(a)"}), {Var("X")})

    def test_instance_relation(self):
        assert is_more_general(S({"X": "f(Y)"}), S({"X": "f(a)"}), {Var("X")})

    def test_distinct_constants_are_incomparable(self):
        assert not is_more_general(S({"X": "a"}), S({"X": "b"}), {Var("X")})


class TestProperties:
    @settings(max_examples=150, deadline=None)
    @given(terms(), terms())
    def test_mgu_soundness_and_idempotence(self, t, u):
        sigma = mgu(t, u)
        if sigma is not None:
            assert sigma.apply(t) == sigma.apply(u)
            assert sigma.is_idempotent()

    @settings(max_examples=150, deadline=None)
    @given(terms(), idempotent_substs(support=("X", "Y", "Z"), image_vars=()))
    def test_mgu_is_most_general(self, t, ground_sigma):
        ground_sigma = restrict(ground_sigma, vars_of(t))
        sigma = mgu(t, ground_sigma.apply(t))
        assert sigma is not None
        assert is_more_general(sigma, ground_sigma, set(vars_of(t)))

    @settings(max_examples=150, deadline=None)
    @given(terms(), idempotent_substs(support=("X", "Y", "Z"), image_vars=()))
    def test_mgm_sound_and_agrees_with_mgu_on_ground(self, p, ground_sigma):
        target = ground_sigma.apply(p)
        matcher = mgm(p, target)
        assert matcher is not None
        assert matcher.apply(p) == target
        assert matcher.is_idempotent()
        if not vars_of(target):
            unifier = mgu(p, target)
            assert unifier is not None
            assert substs_alpha_equal(matcher, unifier, vars_of(p))

    @settings(max_examples=150, deadline=None)
    @given(terms(), terms())
    def test_unifiability_is_symmetric(self, t, u):
        left = mgu(t, u)
        right = mgu(u, t)
        assert (left is None) == (right is None)
        if left is not None:
            assert substs_alpha_equal(left, right, set(vars_of(t)) | set(vars_of(u)))

    @settings(max_examples=150, deadline=None)
    @given(terms(), terms())
    def test_matching_implies_unifiability(self, p, t):
        matcher = mgm(p, t)
        if matcher is not None:
            assert mgu(p, t) is not None

    @settings(max_examples=100, deadline=None)
    @given(terms(), terms())
    def test_double_application_is_stable(self, t, u):
        sigma = mgu(t, u)
        if sigma is not None:
            once = sigma.apply(t)
            assert sigma.apply(once) == once
            assert compose(sigma, sigma).apply(t) == once
