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

import pytest
from hypothesis import given

from checker import CheckReport
from exceptions import ArityError, KernelSyntaxError, SignatureError
from parser import (KernelParser, format_levels, format_proof, format_prop, format_report, format_term,
                    format_theory, load_theory, parse_proof, parse_proof_file, parse_prop, parse_term, parse_theory)
from proofterm import Case, ExElim, Lam, PVar, TApp, Witness
from samples import membership_props, terms
from sf import BUILTIN_FILES, theories_dir
from stratify import Stratification
from syntax import And, Atom, Bottom, Fun, Implies, Meta, Signature, Var, alpha_eq, iff, neg, numeral

MEMBERSHIP_ONLY = Signature(predicates={"in": 2})


class TestReader:

    def test_unclosed_parenthesis(self):
        with pytest.raises(KernelSyntaxError) as e:
            KernelParser().read("(in x\n  (y")
        assert (e.value.line, e.value.column) == (2, 3)

    def test_unbalanced_parenthesis(self):
        with pytest.raises(KernelSyntaxError) as e:
            KernelParser().read("(in x y))")
        assert (e.value.line, e.value.column) == (1, 9)

    def test_unterminated_string(self):
        with pytest.raises(KernelSyntaxError) as e:
            KernelParser().read('(in x "y')
        assert e.value.column == 7

    def test_comments_are_skipped(self):
        nodes = KernelParser().read("; header\n(in x y) ; trailing\n")
        assert len(nodes) == 1
        assert nodes[0].line == 2

    def test_read_one(self):
        with pytest.raises(KernelSyntaxError):
            KernelParser().read_one("(in x y) (in y x)")


class TestPropositions:

    def test_connectives_and_sugar(self):
        a = parse_prop("(iff (in x y) (not (in y x)))")
        xy, yx = Atom("in", (Var("x"), Var("y"))), Atom("in", (Var("y"), Var("x")))
        assert a == iff(xy, neg(yx))
        assert parse_prop("false") == Bottom()
        assert parse_prop("(=> (A) A)") == Implies(Atom("A"), Atom("A"))

    def test_unknown_symbols_are_located(self):
        with pytest.raises(SignatureError) as e:
            parse_prop("(and (in x y)\n     (p x))", MEMBERSHIP_ONLY)
        assert (e.value.line, e.value.column) == (2, 6)

    def test_arity(self):
        with pytest.raises(ArityError):
            parse_prop("(in x)", MEMBERSHIP_ONLY)

    def test_open_mode_learns_arities(self):
        parser = KernelParser()
        parser.prop(parser.read_one("(p (f x) y)"))
        assert parser.open_signature() == Signature({"f": 1}, {"in": 2, "p": 2})
        with pytest.raises(ArityError):
            parse_prop("(and (p x) (p x y))")
        with pytest.raises(SignatureError):
            parse_prop("(and (p x) (in (p y) x))")

    def test_reserved_words_are_not_names(self):
        with pytest.raises(KernelSyntaxError):
            parse_prop("(forall and (in and y))")

    def test_binders_take_two_arguments(self):
        with pytest.raises(KernelSyntaxError):
            parse_prop("(forall x)")


class TestTerms:

    def test_numerals(self, arithmetic, integral):
        assert parse_term("3", arithmetic.signature) == numeral(3)
        assert parse_term("0", integral.signature) == Fun("0")
        with pytest.raises(SignatureError):
            parse_term("2", integral.signature)

    def test_constants_and_variables(self):
        sig = Signature({"c": 0, "f": 1})
        assert parse_term("(f c)", sig) == Fun("f", (Fun("c"),))
        assert parse_term("(f x)", sig) == Fun("f", (Var("x"),))

    def test_metavariables_only_in_rules(self):
        assert parse_term("?x", allow_meta=True) == Meta("x")
        with pytest.raises(KernelSyntaxError):
            parse_term("?x")


class TestProofTerms:

    def test_binding_forms(self):
        assert parse_proof("(case (pvar h) (a (pvar a)) (b (pvar b)))") == Case(PVar("h"), "a", PVar("a"), "b",
                                                                                  PVar("b"))
        assert parse_proof("(exelim (pvar h) (x a (tapp (pvar a) x)))") == ExElim(PVar("h"), "x", "a",
                                                                                  TApp(PVar("a"), Var("x")))

    def test_constructor_arity(self):
        with pytest.raises(KernelSyntaxError):
            parse_proof("(lam a)")
        with pytest.raises(KernelSyntaxError):
            parse_proof("(case (pvar h) (a (pvar a)))")
        with pytest.raises(KernelSyntaxError):
            parse_proof("(zap (pvar h))")

    def test_printing(self):
        text = "(lam h (exelim (pvar h) (x a (witness (f x) (pvar a)))))"
        p = parse_proof(text)
        assert p == Lam("h", ExElim(PVar("h"), "x", "a", Witness(Fun("f", (Var("x"),)), PVar("a"))))
        assert format_proof(p) == text


class TestTheories:

    @pytest.mark.parametrize("filename", sorted(BUILTIN_FILES.values()))
    def test_bundled_files_are_canonical(self, filename):
        path = os.path.join(theories_dir(), filename)
        with open(path, encoding="utf-8") as f:
            text = f.read()
        theory = load_theory(path)
        assert theory.name == os.path.splitext(filename)[0]
        assert format_theory(theory) == text

    def test_arithmetic(self, arithmetic):
        assert dict(arithmetic.signature.functions) == {"0": 0, "S": 1, "plus": 2, "times": 2}
        assert [r.name for r in arithmetic.rules.rules] == ["r1", "r2", "r3", "r4"]
        assert list(arithmetic.axioms) == ["refl"]

    def test_skolem_declarations(self):
        theory = parse_theory("(signature (pred in 2) (skolem f_a (x1 x2) (in x2 x1)))\n"
                              "(rules (prop-rule (in ?x2 (f_a ?x1)) (in ?x2 ?x1)))")
        assert theory.signature.is_skolem("f_a")
        assert theory.signature.skolem_tags["f_a"].variables == ("x1", "x2")
        assert theory.rules.rules[0].name == "f_a"
        assert format_theory(parse_theory(format_theory(theory))) == format_theory(theory)

    def test_duplicate_declarations(self):
        with pytest.raises(SignatureError) as e:
            parse_theory("(signature\n  (pred p 1)\n  (fun p 1))")
        assert e.value.line == 3
        with pytest.raises(SignatureError):
            parse_theory("(signature (pred p 0)) (rules) (axioms (ax a (p)) (ax a (p)))")

    def test_section_order(self):
        with pytest.raises(KernelSyntaxError):
            parse_theory("(signature (pred p 0)) (axioms) (rules)")
        with pytest.raises(KernelSyntaxError):
            parse_theory("")

    def test_rule_shapes(self):
        with pytest.raises(KernelSyntaxError):
            parse_theory("(signature (fun c 0)) (rules (term-rule ?x c))")
        with pytest.raises(KernelSyntaxError):
            parse_theory("(signature (pred p 0)) (rules (prop-rule (and (p) (p)) (p)))")


class TestProofFiles:

    def test_positions(self, arithmetic):
        with open(os.path.join(theories_dir(), "four-even.prf"), encoding="utf-8") as f:
            proof, = parse_proof_file(f.read(), arithmetic.signature)
        assert proof.name == "four-even"
        assert proof.line == 1
        assert proof.positions[id(proof.term)] == (3, 9)
        assert proof.positions[id(proof.term.body)] == (3, 20)

    def test_local_context(self):
        proof, = parse_proof_file("(proof p (context (hyp h (A))) (goal (A)) (term (pvar h)))",
                                  Signature(predicates={"A": 0}))
        assert proof.context == (("h", Atom("A")),)

    def test_symbols_come_from_the_theory(self, arithmetic):
        with pytest.raises(SignatureError):
            parse_proof_file("(proof p (goal (in x y)) (term (pvar h)))", arithmetic.signature)


class TestPrinters:

    def test_terms(self):
        assert format_term(numeral(2)) == "2"
        assert format_term(Fun("c")) == "(c)"
        assert format_term(Fun("f", (Meta("x"), Var("y")))) == "(f ?x y)"

    def test_levels(self):
        assert format_levels(Stratification({"v": 0, "x": 1})) == "(levels (v 0) (x 1))"

    def test_reports(self):
        ok = CheckReport("p", "ok")
        assert format_report(ok) == "p: ok"
        assert format_report(ok, "sexp") == "(report p ok)"
        failure = CheckReport("q", "check_failure", 'bad "goal"', PVar("h"), Bottom(), And(Bottom(), Bottom()), 4, 9)
        assert format_report(failure).splitlines() == [
            'q: check failure at line 4, column 9: bad "goal"',
            "  subterm:  (pvar h)",
            "  expected: false",
            "  found:    (and false false)"]
        assert format_report(failure, "sexp") == ('(report q check_failure (message "bad \\"goal\\"") (at 4 9) '
                                                  '(expected false) (found (and false false)) (subterm (pvar h)))')


@given(membership_props())
def test_printed_propositions_read_back(a):
    assert parse_prop(format_prop(a)) == a


@given(terms())
def test_printed_terms_read_back(t):
    assert parse_term(format_term(t), Signature({"f": 1, "g": 2, "c": 0})) == t


@given(terms())
def test_printed_terms_read_back_without_a_signature(t):
    assert parse_term(format_term(t)) == t


def test_constants_read_back_without_a_signature():
    a = parse_prop("(in x (e))")
    assert a == Atom("in", (Var("x"), Fun("e")))
    assert format_prop(a) == "(in x (e))"
    assert alpha_eq(parse_prop(format_prop(a)), a)
