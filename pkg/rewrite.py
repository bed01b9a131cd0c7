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

"""Congruence engine: rewrite rules on terms and on atomic propositions, normal forms and the congruence they
generate, plus the two certificates used for the Stratified Foundations (orthogonality and the atom measure).
"""

import collections
from dataclasses import dataclass, field

from exceptions import FuelExhausted, RuleError
from syntax import (Atom, Bottom, BINDERS, CONNECTIVES, Fun, Meta, Var, alpha_eq, count_symbols, free_vars,
                    fresh_name, atoms, prop_metas, subst_term, substitute, substitute_many, term_metas, term_vars)

DEFAULT_STRATEGY = "LeftmostInnermost_Strategy"


# RULES

def _unique(names):
    seen = []
    for n in names:
        if n not in seen:
            seen.append(n)
    return tuple(seen)


@dataclass(frozen=True)
class TermRule:
    """lhs -> rhs between terms, lhs is an application pattern"""
    name: str
    lhs: object
    rhs: object

    kind = "term"

    def __post_init__(self):
        if not isinstance(self.lhs, Fun):
            raise RuleError('rule "%s": the left-hand side must be an application, got %s' % (self.name, self.lhs))
        missing = set(term_metas(self.rhs)) - set(term_metas(self.lhs))
        if missing:
            raise RuleError('rule "%s": metavariables %s of the right-hand side do not occur on the left' %
                            (self.name, ", ".join("?" + m for m in sorted(missing))))
        if not term_vars(self.rhs) <= term_vars(self.lhs):
            raise RuleError('rule "%s": the right-hand side introduces free variables' % self.name)

    @property
    def metavariables(self):
        return _unique(term_metas(self.lhs))


@dataclass(frozen=True)
class PropRule:
    """lhs -> rhs where lhs is an atomic pattern and rhs an arbitrary proposition"""
    name: str
    lhs: object
    rhs: object

    kind = "prop"

    def __post_init__(self):
        if not isinstance(self.lhs, Atom):
            raise RuleError('rule "%s": the left-hand side must be atomic' % self.name)
        lhs_metas = [m for t in self.lhs.args for m in term_metas(t)]
        missing = prop_metas(self.rhs) - set(lhs_metas)
        if missing:
            raise RuleError('rule "%s": metavariables %s of the right-hand side do not occur on the left' %
                            (self.name, ", ".join("?" + m for m in sorted(missing))))
        lhs_vars = frozenset()
        for t in self.lhs.args:
            lhs_vars = lhs_vars | term_vars(t)
        if not free_vars(self.rhs) <= lhs_vars:
            raise RuleError('rule "%s": the right-hand side introduces free variables' % self.name)

    @property
    def metavariables(self):
        return _unique(m for t in self.lhs.args for m in term_metas(t))


@dataclass(frozen=True)
class RewriteSystem:
    """Ordered, immutable collection of rules with unique names"""
    rules: tuple = ()
    fuel_default: int = 10000
    _term_index: dict = field(default=None, init=False, repr=False, compare=False)
    _prop_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        rules = tuple(self.rules)
        object.__setattr__(self, "rules", rules)
        names = [r.name for r in rules]
        duplicated = sorted(set(n for n in names if names.count(n) > 1))
        if duplicated:
            raise RuleError("duplicated rule names: %s" % ", ".join(duplicated))
        if self.fuel_default < 1:
            raise ValueError("fuel_default must be at least 1, got %s" % self.fuel_default)
        term_index = collections.defaultdict(list)
        prop_index = collections.defaultdict(list)
        for r in rules:
            if r.kind == "term":
                term_index[r.lhs.symbol].append(r)
            else:
                prop_index[r.lhs.predicate].append(r)
        object.__setattr__(self, "_term_index", dict(term_index))
        object.__setattr__(self, "_prop_index", dict(prop_index))

    @property
    def term_rules(self):
        return tuple(r for r in self.rules if r.kind == "term")

    @property
    def prop_rules(self):
        return tuple(r for r in self.rules if r.kind == "prop")

    def term_rules_for(self, symbol):
        return self._term_index.get(symbol, ())

    def prop_rules_for(self, predicate):
        return self._prop_index.get(predicate, ())

    def rule_named(self, name):
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def extended(self, *rules):
        """Returns a new system with the given rules appended"""
        return RewriteSystem(self.rules + tuple(rules), self.fuel_default)


# MATCHING

def match(pattern, t, sigma=None):
    """First-order matching of a term pattern against a term.

    :return:
        the extended substitution (metavariable name -> term), or None if t is not an instance of pattern
    """
    sigma = {} if sigma is None else sigma
    if isinstance(pattern, Meta):
        if pattern.name in sigma:
            return sigma if sigma[pattern.name] == t else None
        sigma[pattern.name] = t
        return sigma
    if isinstance(pattern, Var):
        return sigma if pattern == t else None
    if not isinstance(t, Fun) or t.symbol != pattern.symbol or len(t.args) != len(pattern.args):
        return None
    for p, a in zip(pattern.args, t.args):
        if match(p, a, sigma) is None:
            return None
    return sigma


def match_atom(pattern, atom):
    if pattern.predicate != atom.predicate or len(pattern.args) != len(atom.args):
        return None
    sigma = {}
    for p, a in zip(pattern.args, atom.args):
        if match(p, a, sigma) is None:
            return None
    return sigma


def _meta_mapping(sigma):
    return {Meta(name): t for name, t in sigma.items()}


def rewrite_term_root(t, system):
    """Applies the first applicable term rule at the root of t, returns None when there is none"""
    if not isinstance(t, Fun):
        return None
    for rule in system.term_rules_for(t.symbol):
        sigma = match(rule.lhs, t)
        if sigma is not None:
            return subst_term(rule.rhs, _meta_mapping(sigma))
    return None


def instantiate(rule, sigma):
    """Right-hand side of a proposition rule under sigma, binders of rhs are renamed to avoid capture"""
    return substitute_many(rule.rhs, _meta_mapping(sigma))


def rewrite_atom_root(a, system):
    """Applies the first applicable proposition rule at the root of atom a, returns None when there is none"""
    for rule in system.prop_rules_for(a.predicate):
        sigma = match_atom(rule.lhs, a)
        if sigma is not None:
            return instantiate(rule, sigma)
    return None


# NORMAL FORMS

class Fuel:
    """Step budget shared by every rewrite of one normalization"""

    def __init__(self, amount):
        if amount is None or amount < 1:
            raise ValueError("fuel must be at least 1, got %s" % amount)
        self.amount = amount
        self.used = 0

    def consume(self, last):
        """Accounts for one rewrite step, raises FuelExhausted(last) when the budget is spent"""
        if self.used >= self.amount:
            raise FuelExhausted(last, self.used)
        self.used += 1


def as_fuel(fuel, system):
    if isinstance(fuel, Fuel):
        return fuel
    return Fuel(system.fuel_default if fuel is None else fuel)


def get_strategy(strategy=DEFAULT_STRATEGY):
    """Returns a strategy instance.

    :param str | strategies.RewriteStrategy strategy:
        if string, a strategy with a corresponding name will be looked for in the strategies module, otherwise it
        will be used as a strategy itself
    """
    import strategies
    if strategy is None:
        raise ValueError('strategy cannot be None, use "%s" instead' % DEFAULT_STRATEGY)
    if isinstance(strategy, str):
        if not hasattr(strategies, strategy):
            raise ValueError('no rewrite strategy named "%s" was found' % strategy)
        return getattr(strategies, strategy)()
    return strategy


def normalize_term(t, system, fuel=None, strategy=DEFAULT_STRATEGY):
    return get_strategy(strategy).normalize_term(t, system, as_fuel(fuel, system))


def normalize_prop(a, system, fuel=None, strategy=DEFAULT_STRATEGY):
    """Rewrites a until no redex remains.

    :param a:
        proposition
    :param RewriteSystem system:
        rules to apply
    :param int | Fuel fuel:
        maximum number of rewrite steps, defaults to system.fuel_default
    :param str strategy:
        name of the strategy class in the strategies module
    :return:
        the normal form of a
    :raises FuelExhausted:
        when more than fuel steps would be needed, .last holds the proposition reached
    """
    return get_strategy(strategy).normalize(a, system, as_fuel(fuel, system))


def equiv(a, b, system, fuel=None, strategy=DEFAULT_STRATEGY):
    """Decides a == b modulo the congruence of system by comparing normal forms (each side gets its own fuel)"""
    na = normalize_prop(a, system, fuel, strategy)
    nb = normalize_prop(b, system, fuel, strategy)
    return alpha_eq(na, nb)


def whnf_prop(a, system, fuel=None):
    """Head normal form: an atom gets normalized arguments and is unfolded by proposition rules at its root until
    the head is a connective, a quantifier, false or an atom no rule applies to."""
    fuel = as_fuel(fuel, system)
    strategy = get_strategy()
    while isinstance(a, Atom):
        args = tuple(strategy.normalize_term(t, system, fuel) for t in a.args)
        a = Atom(a.predicate, args)
        unfolded = rewrite_atom_root(a, system)
        if unfolded is None:
            return a
        fuel.consume(a)
        a = unfolded
    return a


def convertible(a, b, system, fuel=None):
    """Congruence test driven by head normal forms.

    Alpha-equal propositions are convertible without rewriting anything; otherwise both sides are put in head normal
    form and compared head by head. With confluent terminating systems this agrees with equiv().
    """
    return _convertible(a, b, system, as_fuel(fuel, system))


def _convertible(a, b, system, fuel):
    if alpha_eq(a, b):
        return True
    a = whnf_prop(a, system, fuel)
    b = whnf_prop(b, system, fuel)
    if type(a) is not type(b):
        return False
    if isinstance(a, Atom):
        return a.predicate == b.predicate and a.args == b.args
    if isinstance(a, Bottom):
        return True
    if isinstance(a, CONNECTIVES):
        return _convertible(a.left, b.left, system, fuel) and _convertible(a.right, b.right, system, fuel)
    z = a.var
    avoid = free_vars(a) | free_vars(b)
    if z in avoid:
        z = fresh_name(z, avoid)
    return _convertible(substitute(a.body, a.var, Var(z)), substitute(b.body, b.var, Var(z)), system, fuel)


# ONE-STEP REDUCTS

def _term_reducts(t, system):
    if not isinstance(t, Fun):
        return
    for rule in system.term_rules_for(t.symbol):
        sigma = match(rule.lhs, t)
        if sigma is not None:
            yield subst_term(rule.rhs, _meta_mapping(sigma))
    for i, arg in enumerate(t.args):
        for r in _term_reducts(arg, system):
            yield Fun(t.symbol, t.args[:i] + (r,) + t.args[i + 1:])


def one_step_reducts(a, system):
    """Yields every proposition obtained from a by exactly one rule application, at any position"""
    if isinstance(a, Atom):
        for rule in system.prop_rules_for(a.predicate):
            sigma = match_atom(rule.lhs, a)
            if sigma is not None:
                yield instantiate(rule, sigma)
        for i, arg in enumerate(a.args):
            for r in _term_reducts(arg, system):
                yield Atom(a.predicate, a.args[:i] + (r,) + a.args[i + 1:])
    elif isinstance(a, CONNECTIVES):
        for r in one_step_reducts(a.left, system):
            yield type(a)(r, a.right)
        for r in one_step_reducts(a.right, system):
            yield type(a)(a.left, r)
    elif isinstance(a, BINDERS):
        for r in one_step_reducts(a.body, system):
            yield type(a)(a.var, r)


# ORTHOGONALITY

@dataclass(frozen=True)
class Violation:
    """One reason why a system is not orthogonal

    :ivar str kind: "non-left-linear" or "overlap"
    :ivar str rule: offending rule
    :ivar str other: rule whose left-hand side overlaps, None for non-left-linearity
    :ivar tuple position: argument path in rule's left-hand side where the overlap happens
    """
    kind: str
    rule: str
    other: str = None
    position: tuple = ()

    def __str__(self):
        if self.kind == "non-left-linear":
            return "rule %s is not left-linear" % self.rule
        where = "root" if not self.position else ".".join(str(i) for i in self.position)
        return "rule %s overlaps rule %s at %s" % (self.other, self.rule, where)


@dataclass(frozen=True)
class OrthogonalityReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def _walk(t, sigma):
    while isinstance(t, Meta) and t.name in sigma:
        t = sigma[t.name]
    return t


def _occurs(name, t, sigma):
    t = _walk(t, sigma)
    if isinstance(t, Meta):
        return t.name == name
    if isinstance(t, Fun):
        return any(_occurs(name, a, sigma) for a in t.args)
    return False


def unify(s, t, sigma=None):
    """Syntactic unification of two term patterns, metavariables being the unknowns.

    :return:
        a (triangular) most general unifier as a dict, or None
    """
    sigma = {} if sigma is None else sigma
    s = _walk(s, sigma)
    t = _walk(t, sigma)
    if isinstance(s, Meta):
        if s == t:
            return sigma
        if _occurs(s.name, t, sigma):
            return None
        sigma[s.name] = t
        return sigma
    if isinstance(t, Meta):
        return unify(t, s, sigma)
    if isinstance(s, Var) or isinstance(t, Var):
        return sigma if s == t else None
    if s.symbol != t.symbol or len(s.args) != len(t.args):
        return None
    for a, b in zip(s.args, t.args):
        if unify(a, b, sigma) is None:
            return None
    return sigma


def _rename_metas(t, suffix):
    if isinstance(t, Meta):
        return Meta(t.name + suffix)
    if isinstance(t, Fun):
        return Fun(t.symbol, tuple(_rename_metas(a, suffix) for a in t.args))
    return t


def _positions(t, path=()):
    """Yields (path, subterm) for every non-variable position of a term pattern"""
    if isinstance(t, Fun):
        yield path, t
        for i, a in enumerate(t.args):
            yield from _positions(a, path + (i,))


def check_orthogonality(system):
    """Checks that every left-hand side is left-linear and that no two left-hand sides overlap.

    Overlaps are searched at every non-variable position of every left-hand side, including proper positions of a
    rule with a renamed copy of itself. Binders only occur in right-hand sides, so first-order unification suffices.

    :rtype: OrthogonalityReport
    """
    violations = []
    for rule in system.rules:
        metas = term_metas(rule.lhs) if rule.kind == "term" else [m for t in rule.lhs.args for m in term_metas(t)]
        if len(metas) != len(set(metas)):
            violations.append(Violation("non-left-linear", rule.name))

    rules = system.rules
    for i, rule in enumerate(rules):
        if rule.kind == "prop":
            # root of a proposition rule against the other proposition rules
            for j, other in enumerate(rules):
                if j <= i or other.kind != "prop":
                    continue
                lhs = rule.lhs
                olhs = Atom(other.lhs.predicate, tuple(_rename_metas(a, "'") for a in other.lhs.args))
                if lhs.predicate == olhs.predicate and len(lhs.args) == len(olhs.args):
                    sigma = {}
                    if all(unify(a, b, sigma) is not None for a, b in zip(lhs.args, olhs.args)):
                        violations.append(Violation("overlap", rule.name, other.name, ()))
            subterms = [((k,) + path, sub) for k, arg in enumerate(rule.lhs.args) for path, sub in _positions(arg)]
        else:
            subterms = list(_positions(rule.lhs))
        for path, sub in subterms:
            for j, other in enumerate(rules):
                if other.kind != "term":
                    continue
                at_root = rule.kind == "term" and path == ()
                if at_root and j <= i:
                    # root overlaps are symmetric, and a rule trivially overlaps itself at its root
                    continue
                if unify(sub, _rename_metas(other.lhs, "'")) is not None:
                    violations.append(Violation("overlap", rule.name, other.name, path))
    return OrthogonalityReport(tuple(violations))


# TERMINATION CERTIFICATE

@dataclass(frozen=True, order=False)
class AtomMeasure:
    """Multiset of the number of function symbols of each atomic subproposition"""
    counts: tuple

    @classmethod
    def of(cls, a):
        return cls(tuple(sorted((sum(count_symbols(t) for t in atom.args) for atom in atoms(a)), reverse=True)))

    def __lt__(self, other):
        """Dershowitz-Manna multiset ordering"""
        mine = collections.Counter(self.counts)
        theirs = collections.Counter(other.counts)
        if mine == theirs:
            return False
        only_mine = mine - theirs
        only_theirs = theirs - mine
        return all(any(x > y for x in only_theirs) for y in only_mine)

    def __gt__(self, other):
        return other < self


def sf_measure_decreases(a, b):
    """Returns whether the atom measure of b is strictly smaller than the one of a in the multiset ordering"""
    return AtomMeasure.of(b) < AtomMeasure.of(a)
