# Copyright (C) 2026
#
# This file is part of Modulobox.
#
# Modulobox is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# Modulobox is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exceptions import ReductionLoopWarning
from generators import random_typed_proof
from proofterm import (App, BotElim, Case, EM, ExElim, Fst, Inl, Inr, Lam, LoopDetected, NormalForm, OutOfFuel, PVar,
                       Pair, Snd, TApp, TLam, Witness, contract, free_proof_vars, free_term_vars, is_neutral,
                       normalize_proof, proof_alpha_eq, reduce_step, size, step_outermost, substitute_proof)
from samples import proof_terms, terms
from syntax import Atom, Fun, Var, subst_term

a, b, c = PVar("a"), PVar("b"), PVar("c")
IDENTITY = Lam("a", a)
SELF = Lam("a", App(a, a))
OMEGA = App(SELF, SELF)


def test_free_variables():
    assert free_proof_vars(Lam("a", App(a, b))) == {"b"}
    assert free_proof_vars(Case(c, "a", a, "b", App(b, a))) == {"c", "a"}
    assert free_proof_vars(ExElim(c, "x", "a", App(a, b))) == {"c", "b"}
    assert free_term_vars(TLam("x", Witness(Var("x"), a))) == frozenset()
    assert free_term_vars(TApp(a, Fun("f", (Var("y"),)))) == {"y"}
    assert free_term_vars(ExElim(c, "x", "a", TApp(a, Var("x")))) == frozenset()
    assert free_term_vars(EM(Atom("in", (Var("x"), Var("y"))))) == {"x", "y"}


def test_size_and_neutrality():
    assert size(OMEGA) == 9
    assert is_neutral(App(a, b))
    assert is_neutral(c)
    assert not is_neutral(Pair(a, b))


def test_alpha_equivalence_of_both_binders():
    assert proof_alpha_eq(Lam("a", a), Lam("b", b))
    assert not proof_alpha_eq(Lam("a", b), Lam("b", b))
    assert proof_alpha_eq(TLam("x", TApp(a, Var("x"))), TLam("y", TApp(a, Var("y"))))
    assert proof_alpha_eq(ExElim(c, "x", "a", TApp(a, Var("x"))), ExElim(c, "y", "b", TApp(b, Var("y"))))


class TestSubstitution:

    def test_proof_binder_is_renamed(self):
        result = substitute_proof(Lam("b", App(a, b)), {"a": b})
        assert isinstance(result, Lam)
        assert result.var != "b"
        assert proof_alpha_eq(result, Lam("c", App(b, c)))

    def test_term_binder_is_renamed(self):
        p = TLam("y", Witness(Var("x"), TApp(a, Var("y"))))
        result = substitute_proof(p, terms={"x": Var("y")})
        assert proof_alpha_eq(result, TLam("z", Witness(Var("y"), TApp(a, Var("z")))))

    def test_terms_reach_excluded_middle(self):
        p = EM(Atom("in", (Var("x"), Var("y"))))
        assert substitute_proof(p, terms={"x": Var("z")}) == EM(Atom("in", (Var("z"), Var("y"))))

    def test_bound_names_are_untouched(self):
        p = Lam("a", App(a, b))
        assert substitute_proof(p, {"a": c}) == p


class TestContraction:

    def test_beta(self):
        assert contract(App(IDENTITY, b)) == b

    def test_projections(self):
        assert contract(Fst(Pair(a, b))) == a
        assert contract(Snd(Pair(a, b))) == b

    def test_case(self):
        assert contract(Case(Inl(c), "a", Pair(a, a), "b", b)) == Pair(c, c)
        assert contract(Case(Inr(c), "a", a, "b", App(b, b))) == App(c, c)

    def test_universal(self):
        p = TApp(TLam("x", Witness(Var("x"), a)), Fun("f", (Var("y"),)))
        assert contract(p) == Witness(Fun("f", (Var("y"),)), a)

    def test_existential(self):
        p = ExElim(Witness(Var("t"), c), "x", "a", TApp(a, Var("x")))
        assert contract(p) == TApp(c, Var("t"))

    def test_no_cut(self):
        assert contract(App(a, b)) is None
        assert contract(BotElim(a)) is None
        assert contract(EM(Atom("A"))) is None


class TestReduceStep:

    def test_normal_terms(self):
        assert reduce_step(Lam("a", App(a, b))) == []
        assert step_outermost(Pair(a, EM(Atom("A")))) is None

    def test_leftmost_outermost_first(self):
        p = Pair(App(IDENTITY, a), App(IDENTITY, b))
        assert reduce_step(p) == [Pair(a, App(IDENTITY, b)), Pair(App(IDENTITY, a), b)]

    def test_reducts_are_deduplicated(self):
        p = App(IDENTITY, App(IDENTITY, c))
        assert reduce_step(p) == [App(IDENTITY, c)]

    def test_reducts_under_binders(self):
        p = ExElim(c, "x", "a", App(IDENTITY, a))
        assert reduce_step(p) == [ExElim(c, "x", "a", a)]


class TestNormalization:

    def test_normal_form(self):
        result = normalize_proof(App(IDENTITY, App(IDENTITY, c)), fuel=10)
        assert result == NormalForm(c, 2)
        assert result.category == "normal"

    def test_loop(self):
        with pytest.warns(ReductionLoopWarning):
            result = normalize_proof(OMEGA, fuel=100)
        assert isinstance(result, LoopDetected)
        assert result.steps == 1
        assert result.category == "loop"

    def test_out_of_fuel(self):
        grow = Lam("a", App(App(a, a), a))
        result = normalize_proof(App(grow, grow), fuel=5)
        assert isinstance(result, OutOfFuel)
        assert result.steps == 5

    def test_arguments_are_checked(self):
        with pytest.raises(ValueError):
            normalize_proof(a, fuel=0)
        with pytest.raises(ValueError):
            normalize_proof(a, fuel=1, history_window=0)


@given(proof_terms(), proof_terms(), proof_terms())
def test_proof_substitutions_compose(p, q, r):
    left = substitute_proof(substitute_proof(p, {"a": q}), {"b": r})
    right = substitute_proof(p, {"a": substitute_proof(q, {"b": r}), "b": r})
    assert proof_alpha_eq(left, right)


@given(proof_terms(), terms(("x", "y")), terms(("x", "y")))
def test_term_substitutions_compose(p, t, u):
    left = substitute_proof(substitute_proof(p, terms={"x": t}), terms={"y": u})
    right = substitute_proof(p, terms={"x": subst_term(t, {Var("y"): u}), "y": u})
    assert proof_alpha_eq(left, right)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_normalization_is_deterministic(seed):
    proof = random_typed_proof(random.Random(seed), max_size=30)
    assert normalize_proof(proof.term, fuel=1000) == normalize_proof(proof.term, fuel=1000)


@settings(max_examples=30, deadline=None)
@given(proof_terms())
def test_untyped_normalization_is_deterministic(p):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ReductionLoopWarning)
        assert normalize_proof(p, fuel=20) == normalize_proof(p, fuel=20)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_one_step_reducts_are_joinable(seed):
    proof = random_typed_proof(random.Random(seed), max_size=30)
    reducts = reduce_step(proof.term)
    if len(reducts) < 2:
        return
    first, last = (normalize_proof(r, fuel=1000) for r in (reducts[0], reducts[-1]))
    assert isinstance(first, NormalForm) and isinstance(last, NormalForm)
    assert proof_alpha_eq(first.term, last.term)
