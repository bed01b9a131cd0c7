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

"""Stratified Foundations: comprehension through Skolem symbols and proposition rules.

Each stratifiable proposition A of the language {in} with variables x1 ... xn+1 gets a function symbol f of arity n
and the rule

    ?xn+1 in f(?x1, ..., ?xn) -> A[?x1/x1, ..., ?xn+1/xn+1]

so that the comprehension axiom of A becomes provable modulo the rules.
"""

import hashlib
import os
from dataclasses import dataclass

from exceptions import NotPureMembershipLanguage, NotStratifiable, VariableCoverage
from parser import load_theory
from rewrite import PropRule, normalize_prop
from stratify import stratify
from syntax import (Atom, Exists, Forall, Fun, MEMBERSHIP, Meta, SkolemTag, Var, all_vars, alpha_key, atoms,
                    fresh_name, free_vars, iff, substitute_many)
from proofterm import Lam, PVar, Pair, TLam

SYMBOL_PREFIX = "f_"
HASH_LENGTH = 8

BUILTIN_FILES = {
    "arithmetic": "arith.thy",
    "integral-domain": "integral.thy",
    "crabbe": "crabbe.thy",
    "sf-empty": "sf-empty.thy",
}


@dataclass(frozen=True)
class ComprehensionInstance:
    """A comprehension body with its minted symbol

    :ivar body: stratifiable proposition of the language {in}
    :ivar tuple[str] variables: x1 ... xn+1 as given by the caller, xn+1 is the member variable
    :ivar str symbol: function symbol of arity n
    :ivar PropRule rule: xn+1 in symbol(x1 ... xn) -> body, with metavariables
    :ivar axiom: the closed skolemized scheme instance
    """
    body: object
    variables: tuple
    symbol: str
    rule: object
    axiom: object


def theories_dir():
    this_file_dir = os.path.dirname(os.path.realpath(__file__))
    return os.path.join(this_file_dir, "theories")


def builtin_theories():
    """Returns a fresh copy of every bundled theory, keyed by name

    :rtype: dict[str, checker.Theory]
    """
    return {name: load_theory(os.path.join(theories_dir(), filename), name)
            for name, filename in BUILTIN_FILES.items()}


def check_pure_membership(a, signature=None):
    """Raises NotPureMembershipLanguage unless every atom of a is x in y between variables"""
    for atom in atoms(a):
        if atom.predicate != MEMBERSHIP or len(atom.args) != 2:
            raise NotPureMembershipLanguage('predicate "%s" is not allowed in a comprehension body' % atom.predicate)
        for t in atom.args:
            if isinstance(t, Fun):
                kind = "Skolem symbol" if signature is not None and signature.is_skolem(t.symbol) else "symbol"
                raise NotPureMembershipLanguage('%s "%s" is not allowed in a comprehension body' % (kind, t.symbol))


def canonical_variables(n):
    return tuple("x%s" % (i + 1) for i in range(n))


def canonical_body(body, variables):
    """Renames the variables of body positionally to x1 ... xn+1"""
    names = canonical_variables(len(variables))
    return substitute_many(body, {Var(v): Var(c) for v, c in zip(variables, names)})


def symbol_for(body, variables, length=HASH_LENGTH):
    """Content-addressed symbol name: identical for alpha-equal bodies over the same variable positions"""
    key = (len(variables), alpha_key(canonical_body(body, variables)))
    return SYMBOL_PREFIX + hashlib.sha256(repr(key).encode("utf-8")).hexdigest()[:length]


def comprehension_rule(symbol, body, variables):
    names = canonical_variables(len(variables))
    rhs = substitute_many(canonical_body(body, variables), {Var(c): Meta(c) for c in names})
    lhs = Atom(MEMBERSHIP, (Meta(names[-1]), Fun(symbol, tuple(Meta(c) for c in names[:-1]))))
    return PropRule(symbol, lhs, rhs)


def comprehension_axiom(inst):
    """forall x1 ... forall xn+1 (xn+1 in f(x1 ... xn) <=> A), with <=> unfolded into two implications"""
    *params, member = inst.variables
    a = iff(Atom(MEMBERSHIP, (Var(member), Fun(inst.symbol, tuple(Var(x) for x in params)))), inst.body)
    for x in reversed(inst.variables):
        a = Forall(x, a)
    return a


def comprehension_scheme(body, variables):
    """The scheme instance before skolemization: forall x1 ... forall xn exists z forall xn+1 (xn+1 in z <=> A)"""
    *params, member = variables
    taken = set(variables) | all_vars(body)
    z = fresh_name("z", taken) if "z" in taken else "z"
    a = Exists(z, Forall(member, iff(Atom(MEMBERSHIP, (Var(member), Var(z))), body)))
    for x in reversed(params):
        a = Forall(x, a)
    return a


def comprehension_witness(inst):
    """Proof term of comprehension_axiom(inst): both implications are identities modulo the instance's rule"""
    p = Pair(Lam("a", PVar("a")), Lam("a", PVar("a")))
    for x in reversed(inst.variables):
        p = TLam(x, p)
    return p


def comprehend(theory, body, variables, allow_iterated=False, fuel=None):
    """Adds the comprehension symbol of body to theory.

    Calling it again with an alpha-equal body and the same variable list returns the same symbol and leaves the
    theory unchanged.

    :param checker.Theory theory:
        theory to extend in place, its signature must allow the predicate "in"
    :param body:
        comprehension proposition
    :param list[str] variables:
        x1 ... xn+1, the last one is the member variable
    :param bool allow_iterated:
        normalize body with the rules of theory first, so that bodies mentioning earlier Skolem symbols are accepted
        whenever they unfold into the pure language
    :param int fuel:
        rewrite steps allowed to that normalization
    :rtype: ComprehensionInstance
    :raises NotPureMembershipLanguage:
        body is not in the pure language {in}
    :raises VariableCoverage:
        variables are empty, repeated or miss a free variable of body
    :raises NotStratifiable:
        body cannot be stratified
    """
    variables = tuple(variables)
    if allow_iterated:
        body = normalize_prop(body, theory.rules, fuel)
    check_pure_membership(body, theory.signature)
    if not variables:
        raise VariableCoverage("at least the member variable is needed")
    if len(set(variables)) != len(variables):
        raise VariableCoverage("repeated variables in %s" % " ".join(variables))
    missing = free_vars(body) - set(variables)
    if missing:
        raise VariableCoverage("free variables %s are not among %s" % (", ".join(sorted(missing)),
                                                                       " ".join(variables)))
    if not stratify(body):
        raise NotStratifiable("the comprehension body is not stratifiable")

    names = canonical_variables(len(variables))
    canonical = canonical_body(body, variables)
    length = HASH_LENGTH
    symbol = symbol_for(body, variables, length)
    while symbol in theory.signature.functions or symbol in theory.signature.predicates:
        tag = theory.signature.skolem_tags.get(symbol)
        if tag is not None and len(tag.variables) == len(names) and alpha_key(tag.body) == alpha_key(canonical):
            inst = ComprehensionInstance(body, variables, symbol, theory.rules.rule_named(symbol), None)
            return _with_axiom(inst)
        length += 8
        symbol = symbol_for(body, variables, length)

    rule = comprehension_rule(symbol, body, variables)
    if MEMBERSHIP not in theory.signature.predicates:
        theory.signature = theory.signature.with_predicate(MEMBERSHIP, 2)
    theory.add_function(symbol, len(variables) - 1, SkolemTag(names, canonical))
    theory.add_rule(rule)
    return _with_axiom(ComprehensionInstance(body, variables, symbol, rule, None))


def _with_axiom(inst):
    return ComprehensionInstance(inst.body, inst.variables, inst.symbol, inst.rule, comprehension_axiom(inst))
