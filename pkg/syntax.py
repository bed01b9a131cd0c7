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

"""First-order terms and propositions, signatures and sequents.

All values are immutable. Bound variables are stored by name, so every comparison between propositions has to go
through alpha_eq() (or alpha_key()), never through ==.
"""

from dataclasses import dataclass
from types import MappingProxyType

from exceptions import ArityError, SignatureError

MEMBERSHIP = "in"
ZERO = "0"
SUCC = "S"

# names that can never be symbols, they are the connectives of the concrete syntax
RESERVED = frozenset(["=>", "and", "or", "false", "forall", "exists", "iff", "not"])


# TERMS

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Meta:
    """Pattern metavariable of a rewrite rule, written ?name"""
    name: str

    def __str__(self):
        return "?" + self.name


@dataclass(frozen=True)
class Fun:
    symbol: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


# PROPOSITIONS

@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


CONNECTIVES = (Implies, And, Or)
BINDERS = (Forall, Exists)


def iff(a, b):
    """A <=> B, which is only sugar for (A => B) and (B => A)"""
    return And(Implies(a, b), Implies(b, a))


def neg(a):
    """not A, which is only sugar for A => false"""
    return Implies(a, Bottom())


def numeral(n):
    """Returns the term S(...S(0)) with n successors"""
    t = Fun(ZERO)
    for _ in range(n):
        t = Fun(SUCC, (t,))
    return t


def as_numeral(t):
    """Returns n if t is S(...S(0)) with n successors, None otherwise"""
    n = 0
    while isinstance(t, Fun) and t.symbol == SUCC and len(t.args) == 1:
        t = t.args[0]
        n += 1
    if isinstance(t, Fun) and t.symbol == ZERO and not t.args:
        return n
    return None


# TRAVERSALS

def term_vars(t):
    """Returns the set of variable names occurring in term t"""
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Fun):
        result = frozenset()
        for a in t.args:
            result = result | term_vars(a)
        return result
    return frozenset()


def term_metas(t):
    """Returns the list of metavariable names of t, in left to right order and with repetitions"""
    if isinstance(t, Meta):
        return [t.name]
    if isinstance(t, Fun):
        return [m for a in t.args for m in term_metas(a)]
    return []


def count_symbols(t):
    """Number of function symbol occurrences in term t"""
    if isinstance(t, Fun):
        return 1 + sum(count_symbols(a) for a in t.args)
    return 0


def free_vars(a):
    """Returns exactly the variables with a free occurrence in proposition a

    :rtype: frozenset[str]
    """
    if isinstance(a, Atom):
        result = frozenset()
        for t in a.args:
            result = result | term_vars(t)
        return result
    if isinstance(a, CONNECTIVES):
        return free_vars(a.left) | free_vars(a.right)
    if isinstance(a, BINDERS):
        return free_vars(a.body) - {a.var}
    return frozenset()


def prop_metas(a):
    """Returns the set of metavariable names of a proposition"""
    if isinstance(a, Atom):
        return frozenset(m for t in a.args for m in term_metas(t))
    if isinstance(a, CONNECTIVES):
        return prop_metas(a.left) | prop_metas(a.right)
    if isinstance(a, BINDERS):
        return prop_metas(a.body)
    return frozenset()


def all_vars(a):
    """Returns the free variables of a together with every binder name"""
    if isinstance(a, Atom):
        return free_vars(a)
    if isinstance(a, CONNECTIVES):
        return all_vars(a.left) | all_vars(a.right)
    if isinstance(a, BINDERS):
        return all_vars(a.body) | {a.var}
    return frozenset()


def atoms(a):
    """Yields the atomic subpropositions of a, left to right"""
    if isinstance(a, Atom):
        yield a
    elif isinstance(a, CONNECTIVES):
        yield from atoms(a.left)
        yield from atoms(a.right)
    elif isinstance(a, BINDERS):
        yield from atoms(a.body)


def subformulas(a):
    """Yields every subproposition of a, outermost first"""
    yield a
    if isinstance(a, CONNECTIVES):
        yield from subformulas(a.left)
        yield from subformulas(a.right)
    elif isinstance(a, BINDERS):
        yield from subformulas(a.body)


def prop_size(a):
    if isinstance(a, CONNECTIVES):
        return 1 + prop_size(a.left) + prop_size(a.right)
    if isinstance(a, BINDERS):
        return 1 + prop_size(a.body)
    return 1


# SUBSTITUTION

def fresh_name(base, avoid):
    """Returns base decorated with primes until it does not belong to avoid"""
    name = base + "'"
    while name in avoid:
        name += "'"
    return name


def subst_term(t, mapping):
    """Simultaneously replaces the Var / Meta keys of mapping in term t"""
    if isinstance(t, Fun):
        return Fun(t.symbol, tuple(subst_term(a, mapping) for a in t.args))
    return mapping.get(t, t)


def substitute_many(a, mapping):
    """Simultaneous capture-avoiding substitution.

    :param a:
        proposition
    :param dict[Var | Meta, Var | Meta | Fun] mapping:
        replacement for each variable or metavariable; metavariables are never bound
    :return:
        the substituted proposition, binders are renamed when they would capture a variable of an incoming term
    """
    mapping = {k: v for k, v in mapping.items() if k != v}
    if not mapping:
        return a
    return _substitute(a, mapping)


def _substitute(a, mapping):
    if isinstance(a, Atom):
        return Atom(a.predicate, tuple(subst_term(t, mapping) for t in a.args))
    if isinstance(a, CONNECTIVES):
        return type(a)(_substitute(a.left, mapping), _substitute(a.right, mapping))
    if isinstance(a, BINDERS):
        body_free = free_vars(a.body)
        inner = {k: v for k, v in mapping.items()
                 if isinstance(k, Meta) or (k.name != a.var and k.name in body_free)}
        if not inner:
            return a
        incoming = frozenset()
        for v in inner.values():
            incoming = incoming | term_vars(v)
        if a.var in incoming:
            avoid = incoming | body_free | {k.name for k in inner if isinstance(k, Var)}
            new_var = fresh_name(a.var, avoid)
            body = _substitute(a.body, {Var(a.var): Var(new_var)})
            return type(a)(new_var, _substitute(body, inner))
        return type(a)(a.var, _substitute(a.body, inner))
    return a


def substitute(a, x, t):
    """Returns [t/x]a, renaming bound variables of a that would capture a variable of t

    :param a:
        proposition
    :param str x:
        variable name
    :param t:
        term
    """
    return substitute_many(a, {Var(x): t})


def rename_apart(a, taken=None):
    """Renames every binder of a so that no two binders share a name and no binder shadows a free variable.

    Binders keep their name when it is still unused, so already distinct names are left alone.

    :param set[str] taken:
        names that binders must not take, the free variables of a are always added
    """
    used = set(free_vars(a)) | set(taken or ())
    return _rename_apart(a, used)


def _rename_apart(a, used):
    if isinstance(a, CONNECTIVES):
        left = _rename_apart(a.left, used)
        return type(a)(left, _rename_apart(a.right, used))
    if isinstance(a, BINDERS):
        name = a.var if a.var not in used else fresh_name(a.var, used)
        used.add(name)
        body = a.body if name == a.var else substitute(a.body, a.var, Var(name))
        return type(a)(name, _rename_apart(body, used))
    return a


# ALPHA-EQUIVALENCE

def term_key(t, env):
    """Hashable form of a term where bound variables are replaced by their binder level

    :param dict[str, int] env:
        bound variable name -> binder level
    """
    if isinstance(t, Var):
        if t.name in env:
            return ("b", env[t.name])
        return ("v", t.name)
    if isinstance(t, Meta):
        return ("m", t.name)
    return ("f", t.symbol, tuple(term_key(a, env) for a in t.args))


def alpha_key(a, env=None, depth=0):
    """Hashable canonical form of proposition a: two propositions are alpha-equivalent iff their keys are equal"""
    env = env if env is not None else {}
    if isinstance(a, Atom):
        return ("atom", a.predicate, tuple(term_key(t, env) for t in a.args))
    if isinstance(a, CONNECTIVES):
        return (type(a).__name__, alpha_key(a.left, env, depth), alpha_key(a.right, env, depth))
    if isinstance(a, BINDERS):
        inner = dict(env)
        inner[a.var] = depth
        return (type(a).__name__, alpha_key(a.body, inner, depth + 1))
    return ("bottom",)


def alpha_eq(a, b):
    """Returns whether a and b are equal up to renaming of bound variables"""
    return a is b or alpha_key(a) == alpha_key(b)


# SIGNATURES AND SEQUENTS

@dataclass(frozen=True)
class SkolemTag:
    """Comprehension metadata of a minted function symbol

    :ivar tuple[str] variables: x1 ... xn+1, the last one is the bound member variable
    :ivar body: the comprehension proposition
    """
    variables: tuple
    body: object

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))


class Signature:
    """Function and predicate symbols with their arities, plus the metadata of minted Skolem symbols.

    Signatures are immutable: the with_* methods return extended copies.
    """

    def __init__(self, functions=None, predicates=None, skolem_tags=None):
        """
        :param dict[str, int] functions:
            function symbol -> arity
        :param dict[str, int] predicates:
            predicate symbol -> arity
        :param dict[str, SkolemTag] skolem_tags:
            metadata of Skolem symbols, each one must also be a function symbol
        """
        self._functions = dict(functions or {})
        self._predicates = dict(predicates or {})
        self._skolem_tags = dict(skolem_tags or {})
        self._validate()

    def _validate(self):
        for name, arity in list(self._functions.items()) + list(self._predicates.items()):
            if name in RESERVED:
                raise SignatureError('"%s" is a reserved word and cannot be a symbol' % name)
            if not isinstance(arity, int) or arity < 0:
                raise SignatureError('symbol "%s" has invalid arity %r' % (name, arity))
        both = set(self._functions) & set(self._predicates)
        if both:
            raise SignatureError("symbols declared both as function and predicate: %s" % ", ".join(sorted(both)))
        for name, tag in self._skolem_tags.items():
            if name not in self._functions:
                raise SignatureError('skolem symbol "%s" is not a function symbol' % name)
            if self._functions[name] != len(tag.variables) - 1:
                raise ArityError('skolem symbol "%s" has arity %s but %s variables' %
                                 (name, self._functions[name], len(tag.variables)))

    @property
    def functions(self):
        return MappingProxyType(self._functions)

    @property
    def predicates(self):
        return MappingProxyType(self._predicates)

    @property
    def skolem_tags(self):
        return MappingProxyType(self._skolem_tags)

    def __eq__(self, other):
        return (isinstance(other, Signature) and self._functions == other._functions and
                self._predicates == other._predicates and self._skolem_tags == other._skolem_tags)

    def __repr__(self):
        return "Signature(functions=%r, predicates=%r, skolem=%r)" % (
            self._functions, self._predicates, sorted(self._skolem_tags))

    def with_function(self, name, arity, tag=None):
        if name in self._predicates:
            raise SignatureError('"%s" is already a predicate symbol' % name)
        if name in self._functions and self._functions[name] != arity:
            raise SignatureError('function symbol "%s" is already declared with arity %s' %
                                 (name, self._functions[name]))
        functions = dict(self._functions)
        functions[name] = arity
        tags = dict(self._skolem_tags)
        if tag is not None:
            tags[name] = tag
        return Signature(functions, self._predicates, tags)

    def with_predicate(self, name, arity):
        if name in self._functions:
            raise SignatureError('"%s" is already a function symbol' % name)
        if name in self._predicates and self._predicates[name] != arity:
            raise SignatureError('predicate symbol "%s" is already declared with arity %s' %
                                 (name, self._predicates[name]))
        predicates = dict(self._predicates)
        predicates[name] = arity
        return Signature(self._functions, predicates, self._skolem_tags)

    def is_skolem(self, name):
        return name in self._skolem_tags

    def check_term(self, t, allow_meta=False):
        """Raises SignatureError / ArityError unless t is well formed over this signature"""
        if isinstance(t, Var):
            return
        if isinstance(t, Meta):
            if not allow_meta:
                raise SignatureError("metavariable %s outside of a rule" % t)
            return
        if t.symbol not in self._functions:
            raise SignatureError('unknown function symbol "%s"' % t.symbol)
        if self._functions[t.symbol] != len(t.args):
            raise ArityError('function symbol "%s" expects %s arguments, got %s' %
                             (t.symbol, self._functions[t.symbol], len(t.args)))
        for a in t.args:
            self.check_term(a, allow_meta)

    def check_prop(self, a, allow_meta=False):
        """Raises SignatureError / ArityError unless proposition a is well formed over this signature"""
        if isinstance(a, Atom):
            if a.predicate not in self._predicates:
                raise SignatureError('unknown predicate symbol "%s"' % a.predicate)
            if self._predicates[a.predicate] != len(a.args):
                raise ArityError('predicate symbol "%s" expects %s arguments, got %s' %
                                 (a.predicate, self._predicates[a.predicate], len(a.args)))
            for t in a.args:
                self.check_term(t, allow_meta)
        elif isinstance(a, CONNECTIVES):
            self.check_prop(a.left, allow_meta)
            self.check_prop(a.right, allow_meta)
        elif isinstance(a, BINDERS):
            self.check_prop(a.body, allow_meta)


@dataclass(frozen=True)
class Sequent:
    """Named hypotheses |- goal"""
    hypotheses: tuple
    goal: object

    def __post_init__(self):
        hypotheses = tuple((name, prop) for name, prop in self.hypotheses)
        names = [name for name, _ in hypotheses]
        if len(set(names)) != len(names):
            raise ValueError("hypothesis names must be pairwise distinct, got %s" % names)
        object.__setattr__(self, "hypotheses", hypotheses)

    @property
    def context(self):
        return dict(self.hypotheses)
