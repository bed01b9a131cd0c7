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

"""Bidirectional proof checking for natural deduction modulo.

Every side condition "C == ..." of the deduction rules is discharged by the congruence engine: the connective
expected by a rule is read off the head normal form of the proposition at hand, and inferred propositions are
compared with expected ones by rewrite.convertible().
"""

from dataclasses import dataclass, field

from exceptions import (CheckError, ClassicalRuleDisabled, FuelExhausted, HeadMismatch, KernelError, Mismatch,
                        NotInferable, ScopeViolation, SignatureError, UnboundProofVariable)
from proofterm import (App, BotElim, Case, EM, ExElim, Fst, Inl, Inr, Lam, PVar, Pair, Snd, TApp, TLam, Witness)
from rewrite import PropRule, RewriteSystem, Fuel, convertible, normalize_prop, whnf_prop
from syntax import (And, Bottom, Exists, Forall, Implies, Or, Signature, Var, alpha_key, free_vars, fresh_name, neg,
                    prop_metas, subformulas, substitute)

DEFAULT_SEARCH_LIMIT = 64

HEAD_NAMES = {Implies: "=>", And: "and", Or: "or", Bottom: "false", Forall: "forall", Exists: "exists"}


class Theory:
    """Signature, rewrite rules and named axioms.

    A theory is built (for instance by sf.comprehend()) by a single owner and shared read-only afterwards.
    """

    def __init__(self, signature=None, rules=None, axioms=None, classical=False, name=None):
        """
        :param Signature signature:
            symbols of the theory
        :param RewriteSystem | list rules:
            rewrite rules defining the congruence
        :param dict[str, object] axioms:
            axiom name -> proposition, they enter every proof context as hypotheses
        :param bool classical:
            whether the excluded middle rule is available
        :param str name:
            display name
        """
        self.signature = signature if signature is not None else Signature()
        if rules is None:
            rules = RewriteSystem()
        elif not isinstance(rules, RewriteSystem):
            rules = RewriteSystem(tuple(rules))
        self.rules = rules
        self.axioms = {}
        self.classical = classical
        self.name = name
        for rule in rules.rules:
            self._check_rule(rule)
        for axiom_name, prop in (axioms or {}).items():
            self.add_axiom(axiom_name, prop)

    def _check_rule(self, rule):
        if isinstance(rule, PropRule):
            self.signature.check_prop(rule.lhs, allow_meta=True)
            self.signature.check_prop(rule.rhs, allow_meta=True)
        else:
            self.signature.check_term(rule.lhs, allow_meta=True)
            self.signature.check_term(rule.rhs, allow_meta=True)

    def add_axiom(self, name, prop):
        if name in self.axioms:
            raise SignatureError('axiom "%s" is already declared' % name)
        self.signature.check_prop(prop)
        self.axioms[name] = prop

    def add_function(self, name, arity, tag=None):
        self.signature = self.signature.with_function(name, arity, tag)

    def add_rule(self, rule):
        self._check_rule(rule)
        self.rules = self.rules.extended(rule)

    def copy(self, classical=None, name=None):
        return Theory(self.signature, self.rules, dict(self.axioms),
                      self.classical if classical is None else classical,
                      self.name if name is None else name)

    def __repr__(self):
        return "Theory(%r, %s rules, %s axioms)" % (self.name, len(self.rules.rules), len(self.axioms))


@dataclass
class ProofObject:
    """One (proof ...) entry of a proof file"""
    name: str
    goal: object
    term: object
    context: tuple = ()
    positions: dict = field(default_factory=dict, repr=False, compare=False)
    line: int = None


@dataclass
class CheckReport:
    """Outcome of checking one proof object

    :ivar str category: "ok", "check_failure", "signature" or "fuel"
    """
    name: str
    category: str
    message: str = ""
    term: object = None
    expected: object = None
    found: object = None
    line: int = None
    column: int = None

    @property
    def ok(self):
        return self.category == "ok"


def _head_name(a):
    return HEAD_NAMES.get(type(a), "atom")


class ProofChecker:
    """Checks proof terms against a theory.

    Contexts are tuples of (name, proposition) pairs; later entries shadow earlier ones. The theory's axioms always
    come first.
    """

    def __init__(self, theory, fuel=None, search_limit=DEFAULT_SEARCH_LIMIT):
        """
        :param Theory theory:
            theory to check against
        :param int fuel:
            rewrite steps allowed to each congruence test, defaults to the rewrite system's own default
        :param int search_limit:
            maximum number of cut formulas tried when an elimination has a non inferable major premise
        """
        self.theory = theory
        self.fuel = fuel if fuel is not None else theory.rules.fuel_default
        self.search_limit = search_limit

    # congruence helpers

    def _fuel(self):
        return Fuel(self.fuel)

    def whnf(self, a):
        return whnf_prop(a, self.theory.rules, self._fuel())

    def convertible(self, a, b):
        return convertible(a, b, self.theory.rules, self._fuel())

    def base_context(self, context=()):
        if isinstance(context, dict):
            context = tuple(context.items())
        return tuple(self.theory.axioms.items()) + tuple(context)

    @staticmethod
    def lookup(context, name):
        for hyp, prop in reversed(context):
            if hyp == name:
                return prop
        return None

    def _expect(self, a, head, term):
        """Head normal form of a, which must have the given head connective"""
        h = self.whnf(a)
        if not isinstance(h, head):
            raise HeadMismatch('expected a proposition of the form "%s", found "%s"' % (HEAD_NAMES[head],
                                                                                         _head_name(h)),
                               term=term, expected=HEAD_NAMES[head], found=h)
        return h

    def _free_modulo(self, x, props):
        """Whether x is free in one of props once normalized.

        Rewriting never introduces variables (rule right-hand sides only use the variables of their left-hand sides),
        so only propositions where x occurs literally are normalized.
        """
        for a in props:
            if x in free_vars(a) and x in free_vars(normalize_prop(a, self.theory.rules, self._fuel())):
                return True
        return False

    def _check_scope(self, x, context, goal, term, rule):
        props = [prop for _, prop in context]
        if goal is not None:
            props.append(goal)
        if self._free_modulo(x, props):
            raise ScopeViolation('%s: variable "%s" is free in the context%s' %
                                 (rule, x, " or the goal" if goal is not None else ""), term=term)

    # inference

    @staticmethod
    def inferable(p):
        """Syntactic test of whether infer() can compute a proposition for p without a goal"""
        if isinstance(p, (PVar, EM)):
            return True
        if isinstance(p, App):
            return ProofChecker.inferable(p.fn)
        if isinstance(p, (Fst, Snd)):
            return ProofChecker.inferable(p.pair)
        if isinstance(p, TApp):
            return ProofChecker.inferable(p.fn)
        if isinstance(p, Pair):
            return ProofChecker.inferable(p.left) and ProofChecker.inferable(p.right)
        if isinstance(p, TLam):
            return ProofChecker.inferable(p.body)
        return False

    def infer(self, context, p):
        """Returns a proposition B such that context |- B is derivable with p

        :raises CheckError:
            when p is ill-formed or not an inference form
        """
        if isinstance(p, PVar):
            prop = self.lookup(context, p.name)
            if prop is None:
                raise UnboundProofVariable('unbound proof variable "%s"' % p.name, term=p)
            return prop
        if isinstance(p, App):
            f = self._expect(self.infer(context, p.fn), Implies, p)
            self.check(context, p.arg, f.left)
            return f.right
        if isinstance(p, Fst):
            return self._expect(self.infer(context, p.pair), And, p).left
        if isinstance(p, Snd):
            return self._expect(self.infer(context, p.pair), And, p).right
        if isinstance(p, TApp):
            self.theory.signature.check_term(p.term)
            f = self._expect(self.infer(context, p.fn), Forall, p)
            return substitute(f.body, f.var, p.term)
        if isinstance(p, Pair):
            return And(self.infer(context, p.left), self.infer(context, p.right))
        if isinstance(p, TLam):
            self._check_scope(p.var, context, None, p, "forall-intro")
            return Forall(p.var, self.infer(context, p.body))
        if isinstance(p, EM):
            self._require_classical(p)
            return Or(p.prop, neg(p.prop))
        raise NotInferable("cannot infer a proposition for %s without a goal" % type(p).__name__, term=p)

    def _require_classical(self, p):
        if not self.theory.classical:
            raise ClassicalRuleDisabled("excluded middle used in an intuitionistic theory", term=p)
        self.theory.signature.check_prop(p.prop)

    # checking

    def check(self, context, p, goal):
        """Checks that p derives goal in context, raises a CheckError otherwise"""
        if isinstance(p, Lam):
            g = self._expect(goal, Implies, p)
            self.check(context + ((p.var, g.left),), p.body, g.right)
        elif isinstance(p, Pair):
            g = self._expect(goal, And, p)
            self.check(context, p.left, g.left)
            self.check(context, p.right, g.right)
        elif isinstance(p, Witness):
            self.theory.signature.check_term(p.term)
            g = self._expect(goal, Exists, p)
            self.check(context, p.body, substitute(g.body, g.var, p.term))
        elif isinstance(p, (Inl, Inr)):
            g = self._expect(goal, Or, p)
            self.check(context, p.body, g.left if isinstance(p, Inl) else g.right)
        elif isinstance(p, TLam):
            g = self._expect(goal, Forall, p)
            self._check_scope(p.var, context, g, p, "forall-intro")
            self.check(context, p.body, substitute(g.body, g.var, Var(p.var)))
        elif isinstance(p, Case):
            d = self._expect(self._major(context, p.scrutinee, Or), Or, p)
            self.check(context + ((p.left_var, d.left),), p.left, goal)
            self.check(context + ((p.right_var, d.right),), p.right, goal)
        elif isinstance(p, ExElim):
            c = self._expect(self._major(context, p.scrutinee, Exists), Exists, p)
            self._check_scope(p.term_var, context, goal, p, "exists-elim")
            if self._free_modulo(p.term_var, [c]):
                raise ScopeViolation('exists-elim: variable "%s" is free in the eliminated proposition' % p.term_var,
                                     term=p)
            hyp = substitute(c.body, c.var, Var(p.term_var))
            self.check(context + ((p.proof_var, hyp),), p.body, goal)
        elif isinstance(p, BotElim):
            self.check(context, p.body, Bottom())
        elif isinstance(p, EM):
            self._require_classical(p)
            self._compare(Or(p.prop, neg(p.prop)), goal, p)
        elif self.inferable(p):
            self._compare(self.infer(context, p), goal, p)
        else:
            self._search(context, p, goal)

    def _compare(self, found, goal, p):
        if not self.convertible(found, goal):
            raise Mismatch("proposition does not match the goal modulo the rewrite rules", term=p,
                           expected=self._safe_whnf(goal), found=self._safe_whnf(found))

    def _safe_whnf(self, a):
        try:
            return self.whnf(a)
        except FuelExhausted:
            return a

    def _major(self, context, p, head):
        """Proposition of the major premise of an elimination; non inferable premises get a searched cut formula"""
        if self.inferable(p):
            return self.infer(context, p)
        for candidate in self.major_hints(context, p) + self.candidates(context, None):
            try:
                h = self.whnf(candidate)
                if isinstance(h, head):
                    self.check(context, p, h)
                    return h
            except (CheckError, FuelExhausted):
                continue
        raise NotInferable("no cut formula found for the major premise", term=p)

    def major_hints(self, context, p):
        """Cut formulas suggested by an introduction whose immediate subproof is inferable: A or A, A or C and
        C or A for an injection of a proof of A, and a vacuous exists z A for a witness of a proof of A"""
        if not isinstance(p, (Inl, Inr, Witness)) or not self.inferable(p.body):
            return []
        try:
            a = self.infer(context, p.body)
        except CheckError:
            return []
        if isinstance(p, Witness):
            z = fresh_name("z", free_vars(a)) if "z" in free_vars(a) else "z"
            return [Exists(z, a)]
        others = self.candidates(context, None)
        return [Or(a, a)] + [Or(a, c) if isinstance(p, Inl) else Or(c, a) for c in others]

    # cut formula search

    def candidates(self, context, goal):
        """Candidate cut formulas: subformulas of the goal, of the context (newest first) and of the ground
        proposition rules, without alpha-duplicates and at most search_limit of them"""
        sources = []
        if goal is not None:
            sources.append(goal)
        sources.extend(prop for _, prop in reversed(context))
        for rule in self.theory.rules.prop_rules:
            if not prop_metas(rule.lhs) and not prop_metas(rule.rhs):
                sources.append(rule.lhs)
                sources.append(rule.rhs)
        seen = set()
        result = []
        for source in sources:
            for a in subformulas(source):
                k = alpha_key(a)
                if k not in seen:
                    seen.add(k)
                    result.append(a)
                    if len(result) >= self.search_limit:
                        return result
        return result

    def _search(self, context, p, goal):
        """Checks an elimination whose major premise is not inferable by trying candidate cut formulas"""
        attempts = []
        if isinstance(p, App):
            if self.inferable(p.arg):
                arg = self.infer(context, p.arg)
                self.check(context, p.fn, Implies(arg, goal))
                return
            attempts = [(lambda c: (self.check(context, p.arg, c),
                                    self.check(context, p.fn, Implies(c, goal))))]
        elif isinstance(p, Fst):
            attempts = [lambda c: self.check(context, p.pair, And(goal, c))]
        elif isinstance(p, Snd):
            attempts = [lambda c: self.check(context, p.pair, And(c, goal))]
        elif isinstance(p, TApp):
            def attempt(c):
                h = self._expect(c, Forall, p)
                self._compare(substitute(h.body, h.var, p.term), goal, p)
                self.check(context, p.fn, h)
            attempts = [attempt]
        else:
            raise NotInferable("cannot check %s" % type(p).__name__, term=p)

        exhausted = None
        for candidate in self.candidates(context, goal):
            for attempt in attempts:
                try:
                    attempt(candidate)
                    return
                except CheckError:
                    continue
                except FuelExhausted as e:
                    exhausted = exhausted or e
        if exhausted is not None:
            raise exhausted
        raise NotInferable("no cut formula found for %s" % type(p).__name__, term=p)


def infer(theory, context, p, fuel=None):
    """Module level shortcut for ProofChecker(theory, fuel).infer() with the theory's axioms in context"""
    checker = ProofChecker(theory, fuel)
    return checker.infer(checker.base_context(context), p)


def check(theory, context, p, goal, fuel=None, search_limit=DEFAULT_SEARCH_LIMIT):
    """Checks that p derives goal from context and the axioms of theory, raises a CheckError otherwise"""
    checker = ProofChecker(theory, fuel, search_limit)
    checker.check(checker.base_context(context), p, goal)


def check_sequent(theory, proof, fuel=None, search_limit=DEFAULT_SEARCH_LIMIT):
    """Checks a proof object and returns a report instead of raising

    :param Theory theory:
        theory to check against
    :param ProofObject proof:
        proof to check, its local hypotheses extend the theory's axioms
    :rtype: CheckReport
    """
    try:
        theory.signature.check_prop(proof.goal)
        for _, prop in proof.context:
            theory.signature.check_prop(prop)
        check(theory, proof.context, proof.term, proof.goal, fuel, search_limit)
    except CheckError as e:
        line, column = proof.positions.get(id(e.term), (proof.line, None))
        return CheckReport(proof.name, "check_failure", e.message, e.term, e.expected, e.found, line, column)
    except FuelExhausted as e:
        return CheckReport(proof.name, "fuel", str(e), found=e.last, line=proof.line)
    except SignatureError as e:
        return CheckReport(proof.name, "signature", str(e), line=proof.line)
    except KernelError as e:
        return CheckReport(proof.name, "check_failure", str(e), line=proof.line)
    return CheckReport(proof.name, "ok", line=proof.line)
