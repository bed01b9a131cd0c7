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

"""Seeded random generators for the property suites and the acceptance suite.

Every generator takes an explicit random.Random, so that a seed fixes the whole sample.
"""

import itertools

from checker import ProofObject
from proofterm import App, Case, ExElim, Fst, Inl, Inr, Lam, PVar, Pair, Snd, TApp, TLam, Witness, size
from rewrite import one_step_reducts
from syntax import (And, Atom, Bottom, Exists, Forall, Fun, Implies, MEMBERSHIP, Or, Var, all_vars, alpha_eq,
                    free_vars, fresh_name, iff, neg, numeral, rename_apart, substitute)

MEMBERSHIP_NAMES = ("x", "y", "z", "u", "v", "w")
ARITH_VARIABLES = ("a", "b")
PROOF_TERMS = ("u", "v", "w")


def membership(x, y):
    return Atom(MEMBERSHIP, (Var(x), Var(y)))


# MEMBERSHIP LANGUAGE

def random_membership_formula(rng, max_vars=5, max_depth=3):
    """Random proposition of the language {in} with at most max_vars variables once binders are renamed apart"""
    names = MEMBERSHIP_NAMES[:max_vars]
    while True:
        a = _random_membership(rng, names, max_depth)
        if len(all_vars(rename_apart(a))) <= max_vars:
            return a


def _random_membership(rng, names, depth):
    if depth <= 0 or rng.random() < 0.3:
        return membership(rng.choice(names), rng.choice(names))
    kind = rng.choice(("=>", "and", "or", "iff", "not", "forall", "exists"))
    if kind in ("forall", "exists"):
        body = _random_membership(rng, names, depth - 1)
        return (Forall if kind == "forall" else Exists)(rng.choice(names), body)
    if kind == "not":
        return neg(_random_membership(rng, names, depth - 1))
    left = _random_membership(rng, names, depth - 1)
    right = _random_membership(rng, names, depth - 1)
    return {"=>": Implies, "and": And, "or": Or, "iff": iff}[kind](left, right)


def random_stratifiable_body(rng, max_params=3, max_depth=3, max_level=2):
    """Random stratifiable proposition of the language {in}.

    Every variable gets a level up front and only atoms x in y with level(y) = level(x) + 1 are built, so the result
    is stratifiable by construction. Free variables are among x1 ... x{max_params}, binders are y1, y2, ...
    """
    params = ["x%s" % (i + 1) for i in range(rng.randint(1, max_params))]
    levels = {p: rng.randint(0, max_level) for p in params}
    return _random_stratified(rng, levels, max_depth, max_level, itertools.count(1))


def _random_stratified(rng, levels, depth, max_level, counter):
    if depth <= 0 or rng.random() < 0.3:
        pairs = [(x, y) for x in levels for y in levels if levels[y] == levels[x] + 1]
        if not pairs:
            return Bottom()
        return membership(*rng.choice(pairs))
    kind = rng.choice(("=>", "and", "or", "not", "forall", "exists"))
    if kind in ("forall", "exists"):
        y = "y%s" % next(counter)
        inner = dict(levels)
        inner[y] = rng.randint(0, max_level)
        body = _random_stratified(rng, inner, depth - 1, max_level, counter)
        return (Forall if kind == "forall" else Exists)(y, body)
    if kind == "not":
        return neg(_random_stratified(rng, levels, depth - 1, max_level, counter))
    left = _random_stratified(rng, levels, depth - 1, max_level, counter)
    right = _random_stratified(rng, levels, depth - 1, max_level, counter)
    return {"=>": Implies, "and": And, "or": Or}[kind](left, right)


def random_comprehension_vars(rng, body, unused_prob=0.25):
    """Variable list for comprehending body: its free variables in random order, sometimes with an unused one"""
    names = sorted(free_vars(body))
    rng.shuffle(names)
    if not names or rng.random() < unused_prob:
        taken = set(names) | all_vars(body)
        extra = fresh_name("w", taken) if "w" in taken else "w"
        names.insert(rng.randint(0, len(names)), extra)
    return names


# ARITHMETIC

def random_arith_term(rng, depth=2, variables=ARITH_VARIABLES):
    if depth <= 0 or rng.random() < 0.3:
        if variables and rng.random() < 0.4:
            return Var(rng.choice(variables))
        return numeral(rng.randint(0, 2))
    kind = rng.choice(("S", "plus", "times"))
    if kind == "S":
        return Fun("S", (random_arith_term(rng, depth - 1, variables),))
    return Fun(kind, (random_arith_term(rng, depth - 1, variables), random_arith_term(rng, depth - 1, variables)))


def random_arith_prop(rng, max_depth=2, variables=ARITH_VARIABLES):
    """Random proposition over the arithmetic signature, small enough to normalize quickly"""
    if max_depth <= 0 or rng.random() < 0.4:
        return Atom("=", (random_arith_term(rng, 2, variables), random_arith_term(rng, 2, variables)))
    kind = rng.choice(("=>", "and", "or", "forall", "exists"))
    if kind in ("forall", "exists"):
        body = random_arith_prop(rng, max_depth - 1, variables)
        return (Forall if kind == "forall" else Exists)(rng.choice(variables), body)
    left = random_arith_prop(rng, max_depth - 1, variables)
    right = random_arith_prop(rng, max_depth - 1, variables)
    return {"=>": Implies, "and": And, "or": Or}[kind](left, right)


# TYPED PROOFS

def typed_proof_context(theory=None):
    """Hypotheses the typed generator builds on: membership facts, an implication, an existential and, for each
    unary Skolem symbol of theory, a membership in its set"""
    context = [("h1", membership("u", "v")),
               ("h2", membership("v", "w")),
               ("h3", Implies(membership("u", "v"), membership("v", "w"))),
               ("h4", Exists("z", membership("z", "u")))]
    if theory is not None:
        for name, arity in theory.signature.functions.items():
            if theory.signature.is_skolem(name) and arity == 1:
                context.append(("h%s" % (len(context) + 1), Atom(MEMBERSHIP, (Var("u"), Fun(name, (Var("v"),))))))
    return tuple(context)


class TypedProofGenerator:
    """Builds well-typed proof terms together with the proposition they prove.

    Cuts (introductions immediately eliminated) are built on purpose so that the terms have something to reduce.
    Subproofs placed where the checker needs to infer a proposition are generated in inferable form.
    """

    inferable_kinds = ("hyp", "pair", "fst", "snd", "tapp", "mp", "unfold")
    checkable_kinds = ("lam", "inl", "inr", "witness", "beta", "case", "exelim", "exhyp")

    def __init__(self, rng, context, terms=PROOF_TERMS, rules=None):
        """
        :param random.Random rng:
            source of randomness
        :param tuple context:
            (name, proposition) hypotheses
        :param tuple[str] terms:
            variables used as witnesses and instances, none of them is ever bound by a generated term
        :param RewriteSystem rules:
            rules of the theory, hypotheses are then also used at one of their one-step reducts
        """
        self.rng = rng
        self.context = tuple(context)
        self.terms = terms
        self.rules = rules
        self.counter = itertools.count(1)

    def fresh(self, prefix):
        return "%s%s" % (prefix, next(self.counter))

    def generate(self, depth, context=None, inferable=False):
        """Returns (proof term, proposition)"""
        context = self.context if context is None else context
        if depth <= 0:
            return self._hyp(context, 0, inferable)
        kinds = self.inferable_kinds if inferable else self.inferable_kinds + self.checkable_kinds
        return getattr(self, "_" + self.rng.choice(kinds))(context, depth - 1, inferable)

    def _term(self):
        return Var(self.rng.choice(self.terms))

    def _any_prop(self, context):
        return self.rng.choice(context)[1]

    def _hyp(self, context, depth, inferable):
        name, prop = self.rng.choice(context)
        return PVar(name), prop

    def _pair(self, context, depth, inferable):
        p1, a = self.generate(depth, context, inferable)
        p2, b = self.generate(depth, context, inferable)
        return Pair(p1, p2), And(a, b)

    def _fst(self, context, depth, inferable):
        p1, a = self.generate(depth, context, True)
        p2, _ = self.generate(depth, context, True)
        return Fst(Pair(p1, p2)), a

    def _snd(self, context, depth, inferable):
        p1, _ = self.generate(depth, context, True)
        p2, b = self.generate(depth, context, True)
        return Snd(Pair(p1, p2)), b

    def _tapp(self, context, depth, inferable):
        p, a = self.generate(depth, context, True)
        return TApp(TLam(self.fresh("t"), p), self._term()), a

    def _unfold(self, context, depth, inferable):
        if self.rules is not None:
            for name, prop in self.rng.sample(context, len(context)):
                reduct = next(one_step_reducts(prop, self.rules), None)
                if reduct is not None:
                    return PVar(name), reduct
        return self._hyp(context, depth, inferable)

    def _mp(self, context, depth, inferable):
        for name, prop in context:
            if isinstance(prop, Implies):
                for other, hyp in context:
                    if alpha_eq(hyp, prop.left):
                        return App(PVar(name), PVar(other)), prop.right
        return self._hyp(context, depth, inferable)

    def _lam(self, context, depth, inferable):
        a = self.fresh("a")
        c = self._any_prop(context)
        body, b = self.generate(depth, context + ((a, c),))
        return Lam(a, body), Implies(c, b)

    def _inl(self, context, depth, inferable):
        p, a = self.generate(depth, context)
        return Inl(p), Or(a, self._any_prop(context))

    def _inr(self, context, depth, inferable):
        p, a = self.generate(depth, context)
        return Inr(p), Or(self._any_prop(context), a)

    def _witness(self, context, depth, inferable):
        p, a = self.generate(depth, context)
        return Witness(self._term(), p), Exists(self.fresh("z"), a)

    def _beta(self, context, depth, inferable):
        q, a = self.generate(depth, context, True)
        alpha = self.fresh("a")
        body, b = self.generate(depth, context + ((alpha, a),))
        return App(Lam(alpha, body), q), b

    def _case(self, context, depth, inferable):
        q, a = self.generate(depth, context, True)
        alpha = self.fresh("a")
        body, b = self.generate(depth, context + ((alpha, a),))
        injection = self.rng.choice((Inl, Inr))
        return Case(injection(q), alpha, body, alpha, body), b

    def _exelim(self, context, depth, inferable):
        q, a = self.generate(depth, context, True)
        x, alpha = self.fresh("t"), self.fresh("a")
        body, b = self.generate(depth, context + ((alpha, a),))
        return ExElim(Witness(self._term(), q), x, alpha, body), b

    def _exhyp(self, context, depth, inferable):
        for name, prop in context:
            if isinstance(prop, Exists):
                x, alpha = self.fresh("t"), self.fresh("a")
                body, b = self.generate(depth, context + ((alpha, substitute(prop.body, prop.var, Var(x))),))
                if x in free_vars(b):
                    break
                return ExElim(PVar(name), x, alpha, body), b
        return self.generate(depth, context)


def random_typed_proof(rng, theory=None, max_size=40, depth=4):
    """A well-typed proof object over typed_proof_context(theory) with at most max_size nodes

    :rtype: ProofObject
    """
    rules = theory.rules if theory is not None else None
    generator = TypedProofGenerator(rng, typed_proof_context(theory), rules=rules)
    while True:
        term, goal = generator.generate(depth)
        if size(term) <= max_size:
            return ProofObject("random-%s" % next(generator.counter), goal, term, generator.context)
