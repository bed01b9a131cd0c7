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

"""Proof terms of natural deduction modulo and their reduction (cut elimination).

Proof variables and term variables live in separate namespaces: Lam, Case and ExElim bind proof variables, TLam and
ExElim bind term variables.
"""

import collections
import warnings
from dataclasses import dataclass

from exceptions import ReductionLoopWarning
from syntax import Var, alpha_key, fresh_name, free_vars, subst_term, substitute_many, term_key, term_vars

warnings.simplefilter("always", ReductionLoopWarning)

DEFAULT_HISTORY_WINDOW = 64


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class Lam:
    var: str
    body: object


@dataclass(frozen=True)
class App:
    fn: object
    arg: object


@dataclass(frozen=True)
class Pair:
    left: object
    right: object


@dataclass(frozen=True)
class Fst:
    pair: object


@dataclass(frozen=True)
class Snd:
    pair: object


@dataclass(frozen=True)
class Inl:
    body: object


@dataclass(frozen=True)
class Inr:
    body: object


@dataclass(frozen=True)
class Case:
    scrutinee: object
    left_var: str
    left: object
    right_var: str
    right: object


@dataclass(frozen=True)
class BotElim:
    body: object


@dataclass(frozen=True)
class TLam:
    var: str
    body: object


@dataclass(frozen=True)
class TApp:
    fn: object
    term: object


@dataclass(frozen=True)
class Witness:
    term: object
    body: object


@dataclass(frozen=True)
class ExElim:
    scrutinee: object
    term_var: str
    proof_var: str
    body: object


@dataclass(frozen=True)
class EM:
    """Excluded middle for prop: a classical leaf proving prop or (prop => false), it has no reduction rule"""
    prop: object


INTRODUCTIONS = (Lam, Pair, Inl, Inr, TLam, Witness, EM)
ELIMINATIONS = (App, Fst, Snd, Case, BotElim, TApp, ExElim)


def is_neutral(p):
    """A proof variable or an elimination, never an introduction"""
    return isinstance(p, (PVar,) + ELIMINATIONS)


def size(p):
    """Number of constructor nodes of p"""
    return 1 + sum(size(c) for c in _children(p))


def _children(p):
    if isinstance(p, (Lam, TLam, Inl, Inr, BotElim, Witness)):
        return (p.body,)
    if isinstance(p, (App,)):
        return (p.fn, p.arg)
    if isinstance(p, Pair):
        return (p.left, p.right)
    if isinstance(p, (Fst, Snd)):
        return (p.pair,)
    if isinstance(p, Case):
        return (p.scrutinee, p.left, p.right)
    if isinstance(p, TApp):
        return (p.fn,)
    if isinstance(p, ExElim):
        return (p.scrutinee, p.body)
    return ()


# FREE VARIABLES

def free_proof_vars(p):
    if isinstance(p, PVar):
        return frozenset([p.name])
    if isinstance(p, Lam):
        return free_proof_vars(p.body) - {p.var}
    if isinstance(p, Case):
        return (free_proof_vars(p.scrutinee) | (free_proof_vars(p.left) - {p.left_var}) |
                (free_proof_vars(p.right) - {p.right_var}))
    if isinstance(p, ExElim):
        return free_proof_vars(p.scrutinee) | (free_proof_vars(p.body) - {p.proof_var})
    result = frozenset()
    for c in _children(p):
        result = result | free_proof_vars(c)
    return result


def free_term_vars(p):
    if isinstance(p, TLam):
        return free_term_vars(p.body) - {p.var}
    if isinstance(p, TApp):
        return free_term_vars(p.fn) | term_vars(p.term)
    if isinstance(p, Witness):
        return term_vars(p.term) | free_term_vars(p.body)
    if isinstance(p, ExElim):
        return free_term_vars(p.scrutinee) | (free_term_vars(p.body) - {p.term_var})
    if isinstance(p, EM):
        return free_vars(p.prop)
    result = frozenset()
    for c in _children(p):
        result = result | free_term_vars(c)
    return result


# SUBSTITUTION

def substitute_proof(p, proofs=None, terms=None):
    """Simultaneous capture-avoiding substitution in both namespaces.

    :param p:
        proof term
    :param dict[str, object] proofs:
        proof variable name -> proof term
    :param dict[str, object] terms:
        term variable name -> term
    """
    proofs = {k: v for k, v in (proofs or {}).items() if v != PVar(k)}
    terms = {k: v for k, v in (terms or {}).items() if v != Var(k)}
    if not proofs and not terms:
        return p
    return _subst(p, proofs, terms)


def _incoming_term_vars(proofs, terms):
    result = frozenset()
    for v in terms.values():
        result = result | term_vars(v)
    for v in proofs.values():
        result = result | free_term_vars(v)
    return result


def _incoming_proof_vars(proofs):
    result = frozenset()
    for v in proofs.values():
        result = result | free_proof_vars(v)
    return result


def _bind_proof(var, body, proofs, terms):
    """Substitutes under a proof variable binder, returns (new binder name, new body)"""
    fpv = free_proof_vars(body)
    inner = {k: v for k, v in proofs.items() if k != var and k in fpv}
    fbody_terms = free_term_vars(body)
    inner_terms = {k: v for k, v in terms.items() if k in fbody_terms}
    if not inner and not inner_terms:
        return var, body
    incoming = _incoming_proof_vars(inner)
    if var in incoming:
        new_var = fresh_name(var, incoming | fpv | set(inner))
        body = _subst(body, {var: PVar(new_var)}, {})
        var = new_var
    return var, _subst(body, inner, inner_terms)


def _bind_term(var, body, proofs, terms):
    """Substitutes under a term variable binder, returns (new binder name, new body)"""
    ftv = free_term_vars(body)
    inner_terms = {k: v for k, v in terms.items() if k != var and k in ftv}
    fpv = free_proof_vars(body)
    inner = {k: v for k, v in proofs.items() if k in fpv}
    if not inner and not inner_terms:
        return var, body
    incoming = _incoming_term_vars(inner, inner_terms)
    if var in incoming:
        new_var = fresh_name(var, incoming | ftv | set(inner_terms))
        body = _subst(body, {}, {var: Var(new_var)})
        var = new_var
    return var, _subst(body, inner, inner_terms)


def _term_mapping(terms):
    return {Var(k): v for k, v in terms.items()}


def _subst(p, proofs, terms):
    if isinstance(p, PVar):
        return proofs.get(p.name, p)
    if isinstance(p, Lam):
        var, body = _bind_proof(p.var, p.body, proofs, terms)
        return Lam(var, body)
    if isinstance(p, App):
        return App(_subst(p.fn, proofs, terms), _subst(p.arg, proofs, terms))
    if isinstance(p, Pair):
        return Pair(_subst(p.left, proofs, terms), _subst(p.right, proofs, terms))
    if isinstance(p, (Fst, Snd)):
        return type(p)(_subst(p.pair, proofs, terms))
    if isinstance(p, (Inl, Inr, BotElim)):
        return type(p)(_subst(p.body, proofs, terms))
    if isinstance(p, Case):
        lvar, left = _bind_proof(p.left_var, p.left, proofs, terms)
        rvar, right = _bind_proof(p.right_var, p.right, proofs, terms)
        return Case(_subst(p.scrutinee, proofs, terms), lvar, left, rvar, right)
    if isinstance(p, TLam):
        var, body = _bind_term(p.var, p.body, proofs, terms)
        return TLam(var, body)
    if isinstance(p, TApp):
        return TApp(_subst(p.fn, proofs, terms), subst_term(p.term, _term_mapping(terms)))
    if isinstance(p, Witness):
        return Witness(subst_term(p.term, _term_mapping(terms)), _subst(p.body, proofs, terms))
    if isinstance(p, ExElim):
        scrutinee = _subst(p.scrutinee, proofs, terms)
        # the term binder is handled first, then the proof binder inside it
        ftv = free_term_vars(p.body)
        inner_terms = {k: v for k, v in terms.items() if k != p.term_var and k in ftv}
        fpv = free_proof_vars(p.body) - {p.proof_var}
        inner = {k: v for k, v in proofs.items() if k in fpv}
        term_var, proof_var, body = p.term_var, p.proof_var, p.body
        if term_var in _incoming_term_vars(inner, inner_terms):
            new_var = fresh_name(term_var, _incoming_term_vars(inner, inner_terms) | ftv | set(inner_terms))
            body = _subst(body, {}, {term_var: Var(new_var)})
            term_var = new_var
        incoming = _incoming_proof_vars(inner)
        if proof_var in incoming:
            new_var = fresh_name(proof_var, incoming | free_proof_vars(body) | set(inner))
            body = _subst(body, {proof_var: PVar(new_var)}, {})
            proof_var = new_var
        return ExElim(scrutinee, term_var, proof_var, _subst(body, inner, inner_terms))
    if isinstance(p, EM):
        return EM(substitute_many(p.prop, _term_mapping(terms)))
    raise TypeError("not a proof term: %r" % (p,))


# ALPHA-EQUIVALENCE

def proof_key(p, penv=None, tenv=None, depth=0):
    """Hashable canonical form: bound proof and term variables are replaced by their binder level"""
    penv = penv if penv is not None else {}
    tenv = tenv if tenv is not None else {}
    if isinstance(p, PVar):
        return ("pb", penv[p.name]) if p.name in penv else ("pv", p.name)
    if isinstance(p, Lam):
        return ("lam", proof_key(p.body, {**penv, p.var: depth}, tenv, depth + 1))
    if isinstance(p, Case):
        return ("case", proof_key(p.scrutinee, penv, tenv, depth),
                proof_key(p.left, {**penv, p.left_var: depth}, tenv, depth + 1),
                proof_key(p.right, {**penv, p.right_var: depth}, tenv, depth + 1))
    if isinstance(p, TLam):
        return ("tlam", proof_key(p.body, penv, {**tenv, p.var: depth}, depth + 1))
    if isinstance(p, TApp):
        return ("tapp", proof_key(p.fn, penv, tenv, depth), term_key(p.term, tenv))
    if isinstance(p, Witness):
        return ("witness", term_key(p.term, tenv), proof_key(p.body, penv, tenv, depth))
    if isinstance(p, ExElim):
        return ("exelim", proof_key(p.scrutinee, penv, tenv, depth),
                proof_key(p.body, {**penv, p.proof_var: depth}, {**tenv, p.term_var: depth}, depth + 1))
    if isinstance(p, EM):
        return ("em", alpha_key(p.prop, dict(tenv), depth))
    return (type(p).__name__,) + tuple(proof_key(c, penv, tenv, depth) for c in _children(p))


def proof_alpha_eq(p, q):
    return p is q or proof_key(p) == proof_key(q)


# REDUCTION

def contract(p):
    """Returns the reduct of p if p itself is a cut, None otherwise"""
    if isinstance(p, App) and isinstance(p.fn, Lam):
        return substitute_proof(p.fn.body, {p.fn.var: p.arg})
    if isinstance(p, Fst) and isinstance(p.pair, Pair):
        return p.pair.left
    if isinstance(p, Snd) and isinstance(p.pair, Pair):
        return p.pair.right
    if isinstance(p, Case) and isinstance(p.scrutinee, Inl):
        return substitute_proof(p.left, {p.left_var: p.scrutinee.body})
    if isinstance(p, Case) and isinstance(p.scrutinee, Inr):
        return substitute_proof(p.right, {p.right_var: p.scrutinee.body})
    if isinstance(p, TApp) and isinstance(p.fn, TLam):
        return substitute_proof(p.fn.body, terms={p.fn.var: p.term})
    if isinstance(p, ExElim) and isinstance(p.scrutinee, Witness):
        return substitute_proof(p.body, {p.proof_var: p.scrutinee.body}, {p.term_var: p.scrutinee.term})
    return None


def _reducts(p):
    """Yields the one-step reducts of p, leftmost-outermost first"""
    root = contract(p)
    if root is not None:
        yield root
    if isinstance(p, Lam):
        for r in _reducts(p.body):
            yield Lam(p.var, r)
    elif isinstance(p, App):
        for r in _reducts(p.fn):
            yield App(r, p.arg)
        for r in _reducts(p.arg):
            yield App(p.fn, r)
    elif isinstance(p, Pair):
        for r in _reducts(p.left):
            yield Pair(r, p.right)
        for r in _reducts(p.right):
            yield Pair(p.left, r)
    elif isinstance(p, (Fst, Snd)):
        for r in _reducts(p.pair):
            yield type(p)(r)
    elif isinstance(p, (Inl, Inr, BotElim)):
        for r in _reducts(p.body):
            yield type(p)(r)
    elif isinstance(p, Case):
        for r in _reducts(p.scrutinee):
            yield Case(r, p.left_var, p.left, p.right_var, p.right)
        for r in _reducts(p.left):
            yield Case(p.scrutinee, p.left_var, r, p.right_var, p.right)
        for r in _reducts(p.right):
            yield Case(p.scrutinee, p.left_var, p.left, p.right_var, r)
    elif isinstance(p, TLam):
        for r in _reducts(p.body):
            yield TLam(p.var, r)
    elif isinstance(p, TApp):
        for r in _reducts(p.fn):
            yield TApp(r, p.term)
    elif isinstance(p, Witness):
        for r in _reducts(p.body):
            yield Witness(p.term, r)
    elif isinstance(p, ExElim):
        for r in _reducts(p.scrutinee):
            yield ExElim(r, p.term_var, p.proof_var, p.body)
        for r in _reducts(p.body):
            yield ExElim(p.scrutinee, p.term_var, p.proof_var, r)


def reduce_step(p):
    """All one-step reducts of p, up to alpha-equivalence, leftmost-outermost first

    :rtype: list
    """
    result = []
    keys = set()
    for r in _reducts(p):
        k = proof_key(r)
        if k not in keys:
            keys.add(k)
            result.append(r)
    return result


def step_outermost(p):
    """The leftmost-outermost one-step reduct of p, or None if p is normal"""
    return next(_reducts(p), None)


@dataclass(frozen=True)
class NormalForm:
    term: object
    steps: int
    category = "normal"


@dataclass(frozen=True)
class OutOfFuel:
    """The fuel ran out before a normal form was reached"""
    last: object
    steps: int
    category = "fuel"


@dataclass(frozen=True)
class LoopDetected:
    """The reduction came back to a term alpha-equivalent to one seen recently"""
    witness: object
    steps: int
    category = "loop"


def normalize_proof(p, fuel, history_window=DEFAULT_HISTORY_WINDOW):
    """Normalizes p with the leftmost-outermost strategy.

    :param p:
        proof term
    :param int fuel:
        maximum number of reduction steps
    :param int history_window:
        how many of the latest terms are remembered for loop detection
    :rtype: NormalForm | OutOfFuel | LoopDetected
    """
    if fuel < 1:
        raise ValueError("fuel must be at least 1, got %s" % fuel)
    if history_window < 1:
        raise ValueError("history_window must be at least 1, got %s" % history_window)
    history = collections.deque([proof_key(p)], maxlen=history_window)
    steps = 0
    while True:
        reduct = step_outermost(p)
        if reduct is None:
            return NormalForm(p, steps)
        if steps >= fuel:
            return OutOfFuel(p, steps)
        steps += 1
        p = reduct
        key = proof_key(p)
        if key in history:
            warnings.warn("proof reduction came back to an earlier term after %s steps" % steps,
                          ReductionLoopWarning)
            return LoopDetected(p, steps)
        history.append(key)
