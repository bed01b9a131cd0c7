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

import os
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from checker import ProofChecker, ProofObject, Theory, check, check_sequent, infer
from exceptions import (ClassicalRuleDisabled, HeadMismatch, Mismatch, NotInferable, ReductionLoopWarning,
                        ScopeViolation, SignatureError, UnboundProofVariable)
from generators import random_typed_proof
from parser import parse_proof_file, parse_prop
from proofterm import (App, BotElim, Case, EM, ExElim, Fst, Inl, Inr, Lam, LoopDetected, NormalForm, PVar, Pair, Snd,
                       TApp, TLam, Witness, normalize_proof, reduce_step)
from rewrite import normalize_prop
from sf import builtin_theories, comprehend, theories_dir
from syntax import And, Atom, Bottom, Exists, Forall, Fun, Implies, Or, Signature, Var, alpha_eq, neg, numeral

A, B = Atom("A"), Atom("B")
a, b, h = PVar("a"), PVar("b"), PVar("h")
PROPOSITIONAL = Theory(Signature(predicates={"A": 0, "B": 0, "in": 2}), name="propositional")
SF = builtin_theories()["sf-empty"]
SF_COMPREHENSION = SF.copy(name="sf")
comprehend(SF_COMPREHENSION, Atom("in", (Var("y"), Var("x"))), ["x", "y"])
comprehend(SF_COMPREHENSION, Implies(Atom("in", (Var("x"), Var("y"))), Bottom()), ["y", "x"])


def member(x, y):
    return Atom("in", (Var(x), Var(y)))


def read_proofs(filename, theory):
    with open(os.path.join(theories_dir(), filename), encoding="utf-8") as f:
        return parse_proof_file(f.read(), theory.signature)


class TestTheory:

    def test_axioms_are_checked_against_the_signature(self):
        theory = Theory(Signature(predicates={"A": 0}))
        theory.add_axiom("ax", A)
        with pytest.raises(SignatureError):
            theory.add_axiom("ax", A)
        with pytest.raises(SignatureError):
            theory.add_axiom("other", B)

    def test_copy_is_independent(self, arithmetic):
        classical = arithmetic.copy(classical=True, name="classical")
        classical.add_axiom("zero", parse_prop("(= 0 0)", arithmetic.signature))
        assert classical.classical and not arithmetic.classical
        assert "zero" not in arithmetic.axioms


class TestRules:

    def test_implication(self):
        check(PROPOSITIONAL, (), Lam("a", a), Implies(A, A))
        check(PROPOSITIONAL, (("b", B),), Lam("a", b), Implies(A, B))
        with pytest.raises(HeadMismatch):
            check(PROPOSITIONAL, (), Lam("a", a), A)

    def test_application(self):
        context = (("h", Implies(A, B)), ("a", A))
        assert infer(PROPOSITIONAL, context, App(h, a)) == B
        with pytest.raises(Mismatch):
            check(PROPOSITIONAL, (("h", Implies(A, B)), ("a", B)), App(h, a), B)

    def test_conjunction(self):
        context = (("h", And(A, B)),)
        check(PROPOSITIONAL, context, Pair(Snd(h), Fst(h)), And(B, A))
        assert infer(PROPOSITIONAL, context, Fst(h)) == A

    def test_disjunction(self):
        context = (("h", Or(A, B)),)
        check(PROPOSITIONAL, context, Case(h, "a", Inr(a), "b", Inl(b)), Or(B, A))
        with pytest.raises(Mismatch):
            check(PROPOSITIONAL, context, Case(h, "a", Inl(a), "b", Inl(b)), Or(B, A))

    def test_falsity(self):
        check(PROPOSITIONAL, (("h", Bottom()),), BotElim(h), And(A, B))

    def test_universal(self):
        context = (("h", Forall("y", member("y", "v"))),)
        check(PROPOSITIONAL, context, TLam("x", TApp(h, Var("x"))), Forall("z", member("z", "v")))
        assert infer(PROPOSITIONAL, context, TApp(h, Var("w"))) == member("w", "v")

    def test_universal_eigenvariable(self):
        with pytest.raises(ScopeViolation):
            check(PROPOSITIONAL, (("h", member("x", "v")),), TLam("x", h), Forall("x", member("x", "v")))

    def test_existential(self):
        context = (("h", Exists("z", member("z", "u"))),)
        goal = Exists("w", member("w", "u"))
        check(PROPOSITIONAL, context, ExElim(h, "x", "a", Witness(Var("x"), a)), goal)
        check(PROPOSITIONAL, (("a", member("v", "u")),), Witness(Var("v"), a), goal)

    def test_existential_eigenvariable_cannot_escape(self):
        context = (("h", Exists("z", member("z", "u"))),)
        with pytest.raises(ScopeViolation):
            check(PROPOSITIONAL, context, ExElim(h, "x", "a", a), member("x", "u"))

    def test_existential_eigenvariable_must_be_fresh_for_the_major_premise(self):
        context = (("h", Forall("y", Exists("z", member("z", "y")))),)
        term = ExElim(TApp(h, Var("x")), "x", "a", Witness(Var("x"), a))
        with pytest.raises(ScopeViolation):
            check(PROPOSITIONAL, context, term, Exists("w", member("w", "w")))
        check(PROPOSITIONAL, context, ExElim(TApp(h, Var("x")), "t", "a", Witness(Var("t"), a)),
              Exists("w", member("w", "x")))

    def test_unbound_hypothesis(self):
        with pytest.raises(UnboundProofVariable):
            infer(PROPOSITIONAL, (), h)

    def test_later_hypotheses_shadow_earlier_ones(self):
        assert infer(PROPOSITIONAL, (("h", A), ("h", B)), h) == B

    def test_introductions_are_not_inferable(self):
        with pytest.raises(NotInferable):
            infer(PROPOSITIONAL, (), Lam("a", a))
        assert not ProofChecker.inferable(Pair(a, Lam("b", b)))
        assert ProofChecker.inferable(TApp(Fst(Pair(a, b)), Var("x")))

    def test_excluded_middle(self):
        with pytest.raises(ClassicalRuleDisabled):
            infer(PROPOSITIONAL, (), EM(A))
        classical = PROPOSITIONAL.copy(classical=True)
        assert infer(classical, (), EM(A)) == Or(A, neg(A))
        check(classical, (), Case(EM(A), "a", Inl(a), "b", Inr(b)), Or(A, neg(A)))

    def test_term_signature(self):
        with pytest.raises(SignatureError):
            check(PROPOSITIONAL, (("a", member("v", "u")),), Witness(Fun("f", (Var("v"),)), a),
                  Exists("w", member("w", "u")))


class TestCutFormulas:

    def test_injection_scrutinee(self):
        check(PROPOSITIONAL, (("a", A),), Case(Inl(a), "b", b, "c", PVar("c")), A)

    def test_right_injection_scrutinee(self):
        check(PROPOSITIONAL, (("a", A),), Case(Inr(a), "b", Pair(b, b), "c", Pair(PVar("c"), PVar("c"))), And(A, A))

    def test_witness_scrutinee(self):
        context = (("a", member("u", "v")),)
        check(PROPOSITIONAL, context, ExElim(Witness(Var("u"), a), "x", "b", b), member("u", "v"))

    def test_beta_redex(self):
        check(PROPOSITIONAL, (("b", B),), App(Lam("a", a), b), B)
        check(PROPOSITIONAL, (("b", B),), App(Lam("a", Pair(a, a)), b), And(B, B))

    def test_projection_of_introduction(self):
        check(PROPOSITIONAL, (("a", A), ("h", Implies(B, B))), Fst(Pair(a, Lam("c", PVar("c")))), A)

    def test_universal_redex(self):
        context = (("h", member("u", "v")),)
        check(PROPOSITIONAL, context, TApp(TLam("x", h), Var("w")), member("u", "v"))

    def test_search_limit(self):
        checker = ProofChecker(PROPOSITIONAL, search_limit=2)
        context = (("a", A), ("b", B), ("h", Implies(B, A)))
        assert len(checker.candidates(context, Bottom())) == 2


class TestModulo:

    def test_arithmetic(self, arithmetic):
        check(arithmetic, (), TApp(PVar("refl"), numeral(4)), parse_prop("(= (plus 2 2) (times 2 2))",
                                                                           arithmetic.signature))

    def test_integral_domain(self, integral):
        context = (("h", parse_prop("(= (times x y) 0)", integral.signature)),)
        goal = parse_prop("(or (= y 0) (= x 0))", integral.signature)
        check(integral, context, Case(h, "a", Inr(a), "b", Inl(b)), goal)

    def test_crabbe_projection(self, crabbe):
        check(crabbe, (), Lam("a", Fst(a)), Implies(A, B))

    def test_crabbe_refutation(self, crabbe):
        proof, = read_proofs("bot-from-b.prf", crabbe)
        assert check_sequent(crabbe, proof).ok

    def test_crabbe_reduction_loops(self, crabbe):
        proof, = read_proofs("bot-from-b.prf", crabbe)
        with pytest.warns(ReductionLoopWarning):
            result = normalize_proof(proof.term, fuel=100)
        assert isinstance(result, LoopDetected)
        for reduct in reduce_step(proof.term):
            check(crabbe, (), reduct, proof.goal)
            for second in reduce_step(reduct):
                check(crabbe, (), second, proof.goal)


class TestReports:

    def test_arithmetic_witness(self, arithmetic):
        proof, = read_proofs("four-even.prf", arithmetic)
        report = check_sequent(arithmetic, proof)
        assert report.ok
        assert report.category == "ok"

    def test_wrong_witness_is_located(self, arithmetic):
        proof, = read_proofs("four-even-bad.prf", arithmetic)
        report = check_sequent(arithmetic, proof)
        assert report.category == "check_failure"
        assert (report.line, report.column) == (3, 20)
        assert isinstance(report.term, TApp)
        assert report.expected == parse_prop("(= 6 4)", arithmetic.signature)
        assert report.found == parse_prop("(= 4 4)", arithmetic.signature)

    def test_no_proof_of_false(self, sf_theory):
        for classical in (False, True):
            theory = sf_theory.copy(classical=classical)
            for proof in read_proofs("sf-bottom.prf", theory):
                assert check_sequent(theory, proof).category == "check_failure"

    def test_fuel(self, arithmetic):
        proof, = read_proofs("four-even.prf", arithmetic)
        assert check_sequent(arithmetic, proof, fuel=1).category == "fuel"

    def test_signature(self, arithmetic):
        report = check_sequent(arithmetic, ProofObject("p", Atom("q"), h))
        assert report.category == "signature"
        assert not report.ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_generated_proofs_check(seed):
    proof = random_typed_proof(random.Random(seed), max_size=40)
    report = check_sequent(SF, proof)
    assert report.ok, report.message


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_subject_reduction(seed):
    proof = random_typed_proof(random.Random(seed), max_size=30)
    for reduct in reduce_step(proof.term):
        check(SF, proof.context, reduct, proof.goal)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_normal_forms_check(seed):
    proof = random_typed_proof(random.Random(seed), max_size=30)
    result = normalize_proof(proof.term, fuel=1000)
    assert isinstance(result, NormalForm)
    assert reduce_step(result.term) == []
    check(SF, proof.context, result.term, proof.goal)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_weakening(seed):
    proof = random_typed_proof(random.Random(seed), max_size=30)
    context = proof.context + (("unused", Exists("z", member("z", "z"))),)
    check(SF, context, proof.term, proof.goal, search_limit=256)


def test_inferred_propositions_are_alpha_stable():
    context = (("h", Forall("y", Exists("x", member("x", "y")))),)
    found = infer(PROPOSITIONAL, context, TApp(h, Var("x")))
    assert alpha_eq(found, Exists("x'", member("x'", "x")))


def test_checking_is_invariant_under_congruent_goals(arithmetic):
    good, = read_proofs("four-even.prf", arithmetic)
    bad, = read_proofs("four-even-bad.prf", arithmetic)
    folded = parse_prop("(exists x (= (times 2 x) (times 2 2)))", arithmetic.signature)
    for goal in (good.goal, folded, normalize_prop(good.goal, arithmetic.rules)):
        check(arithmetic, (), good.term, goal)
        with pytest.raises(Mismatch):
            check(arithmetic, (), bad.term, goal)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_generated_proofs_check_against_congruent_goals(seed):
    proof = random_typed_proof(random.Random(seed), SF_COMPREHENSION, max_size=30)
    for goal in (proof.goal, normalize_prop(proof.goal, SF_COMPREHENSION.rules)):
        check(SF_COMPREHENSION, proof.context, proof.term, goal)
