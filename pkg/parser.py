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
import re
from dataclasses import dataclass

from checker import ProofObject, Theory
from exceptions import ArityError, KernelSyntaxError, SignatureError
from proofterm import (App, BotElim, Case, EM, ExElim, Fst, Inl, Inr, Lam, PVar, Pair, Snd, TApp, TLam, Witness)
from rewrite import PropRule, RewriteSystem, TermRule
from syntax import (And, Atom, Bottom, Exists, Forall, Fun, Implies, MEMBERSHIP, Meta, Or, RESERVED, Signature,
                    SUCC, SkolemTag, Var, ZERO, as_numeral, iff, neg, numeral)


@dataclass(frozen=True)
class SAtom:
    """A bare token with its 1-based source position"""
    text: str
    line: int
    column: int


@dataclass(frozen=True)
class SList:
    items: tuple
    line: int
    column: int

    @property
    def head(self):
        if self.items and isinstance(self.items[0], SAtom):
            return self.items[0].text


class KernelParser:
    """Reader for the s-expression format of terms, propositions, proof terms, theories and proof files.

    A parser built with a signature resolves symbols against it and reports unknown symbols and wrong arities with
    their position. A parser built without one works in open mode: arities are learned from the first use of each
    symbol and must stay consistent afterwards, see open_signature().

    N.B. instances are stateful: the open-mode symbol table and the source positions of the last proof terms read are
    kept between calls.
    """

    # regexp used to split a text into tokens
    token_re = re.compile(r"""
                    (?P<space>\s+|;[^\n]*)
                  | (?P<open>\()
                  | (?P<close>\))
                  | (?P<string>"(?:[^"\\\n]|\\.)*")
                  | (?P<atom>[^\s();"]+)
                  | (?P<error>.)""", re.VERBOSE)

    name_re = re.compile(r"[^\s();\"?0-9][^\s();\"]*\Z")
    numeral_re = re.compile(r"[0-9]+\Z")

    proof_arity = {"pvar": 1, "lam": 2, "app": 2, "pair": 2, "fst": 1, "snd": 1, "inl": 1, "inr": 1, "case": 3,
                   "botelim": 1, "tlam": 2, "tapp": 2, "witness": 2, "exelim": 2, "em": 1}

    def __init__(self, signature=None):
        """
        :param Signature signature:
            signature to resolve symbols against, None for open mode
        """
        self.signature = signature
        self.open_functions = {}
        self.open_predicates = {MEMBERSHIP: 2}
        self.positions = {}

    def open_signature(self):
        """Signature made of the symbols met so far in open mode"""
        return Signature(self.open_functions, self.open_predicates)

    # READER

    def read(self, text):
        """Splits text into a list of s-expressions

        :rtype: list[SAtom | SList]
        """
        stack = [[]]
        starts = []
        line, line_start = 1, 0
        for m in self.token_re.finditer(text):
            kind = m.lastgroup
            column = m.start() - line_start + 1
            if kind == "error":
                raise KernelSyntaxError("unexpected character %r" % m.group(), line, column)
            if kind == "open":
                stack.append([])
                starts.append((line, column))
            elif kind == "close":
                if not starts:
                    raise KernelSyntaxError("unbalanced closing parenthesis", line, column)
                items = stack.pop()
                start_line, start_column = starts.pop()
                stack[-1].append(SList(tuple(items), start_line, start_column))
            elif kind in ("atom", "string"):
                stack[-1].append(SAtom(m.group(), line, column))
            newlines = m.group().count("\n")
            if newlines:
                line += newlines
                line_start = m.start() + m.group().rindex("\n") + 1
        if starts:
            raise KernelSyntaxError("unclosed parenthesis", *starts[-1])
        return stack[0]

    def read_one(self, text):
        nodes = self.read(text)
        if len(nodes) != 1:
            raise KernelSyntaxError("expected exactly one expression, found %s" % len(nodes))
        return nodes[0]

    @staticmethod
    def _fail(message, node):
        raise KernelSyntaxError(message, node.line, node.column)

    def _name(self, node, what="name"):
        if not isinstance(node, SAtom) or not self.name_re.match(node.text) or node.text in RESERVED:
            self._fail("expected a %s" % what, node)
        return node.text

    def _expect_list(self, node, head, size):
        if not isinstance(node, SList) or node.head != head or len(node.items) != size + 1:
            self._fail("expected (%s ...) with %s arguments" % (head, size), node)
        return node.items[1:]

    # SYMBOLS

    def _function_arity(self, name, node, arity):
        if self.signature is not None:
            if name not in self.signature.functions:
                raise SignatureError('unknown function symbol "%s"' % name, node.line, node.column)
            expected = self.signature.functions[name]
        else:
            if name in self.open_predicates:
                raise SignatureError('"%s" is a predicate symbol' % name, node.line, node.column)
            expected = self.open_functions.setdefault(name, arity)
        if expected != arity:
            raise ArityError('function symbol "%s" expects %s arguments, got %s' % (name, expected, arity),
                             node.line, node.column)

    def _predicate_arity(self, name, node, arity):
        if self.signature is not None:
            if name not in self.signature.predicates:
                raise SignatureError('unknown predicate symbol "%s"' % name, node.line, node.column)
            expected = self.signature.predicates[name]
        else:
            if name in self.open_functions:
                raise SignatureError('"%s" is a function symbol' % name, node.line, node.column)
            expected = self.open_predicates.setdefault(name, arity)
        if expected != arity:
            raise ArityError('predicate symbol "%s" expects %s arguments, got %s' % (name, expected, arity),
                             node.line, node.column)

    def _is_constant(self, name):
        functions = self.signature.functions if self.signature is not None else self.open_functions
        return functions.get(name) == 0

    # TERMS AND PROPOSITIONS

    def term(self, node, allow_meta=False):
        if isinstance(node, SAtom):
            text = node.text
            if self.numeral_re.match(text):
                n = int(text)
                self._function_arity(ZERO, node, 0)
                if n:
                    self._function_arity(SUCC, node, 1)
                return numeral(n)
            if text.startswith("?"):
                if not allow_meta:
                    self._fail("metavariable %s outside of a rule" % text, node)
                return Meta(self._name(SAtom(text[1:], node.line, node.column + 1), "metavariable name"))
            name = self._name(node, "variable")
            if self._is_constant(name):
                return Fun(name)
            return Var(name)
        if not node.items:
            self._fail("empty application", node)
        symbol = self._name(node.items[0], "function symbol")
        args = tuple(self.term(item, allow_meta) for item in node.items[1:])
        self._function_arity(symbol, node, len(args))
        return Fun(symbol, args)

    def prop(self, node, allow_meta=False):
        if isinstance(node, SAtom):
            if node.text == "false":
                return Bottom()
            name = self._name(node, "proposition")
            self._predicate_arity(name, node, 0)
            return Atom(name)
        head = node.head
        args = node.items[1:]
        if head in ("=>", "and", "or", "iff"):
            if len(args) != 2:
                self._fail("(%s ...) expects 2 propositions" % head, node)
            left, right = self.prop(args[0], allow_meta), self.prop(args[1], allow_meta)
            return {"=>": Implies, "and": And, "or": Or, "iff": iff}[head](left, right)
        if head == "not":
            if len(args) != 1:
                self._fail("(not ...) expects 1 proposition", node)
            return neg(self.prop(args[0], allow_meta))
        if head in ("forall", "exists"):
            if len(args) != 2:
                self._fail("(%s x A) expects a variable and a proposition" % head, node)
            var = self._name(args[0], "bound variable")
            return (Forall if head == "forall" else Exists)(var, self.prop(args[1], allow_meta))
        if head == "false":
            self._fail("false takes no arguments", node)
        if head is None:
            self._fail("expected a proposition", node)
        predicate = self._name(node.items[0], "predicate symbol")
        terms = tuple(self.term(item, allow_meta) for item in args)
        self._predicate_arity(predicate, node, len(terms))
        return Atom(predicate, terms)

    # PROOF TERMS

    def proof(self, node):
        if not isinstance(node, SList) or node.head not in self.proof_arity:
            self._fail("expected a proof term", node)
        head = node.head
        args = node.items[1:]
        if len(args) != self.proof_arity[head]:
            self._fail("(%s ...) expects %s arguments" % (head, self.proof_arity[head]), node)
        if head == "pvar":
            p = PVar(self._name(args[0], "proof variable"))
        elif head == "lam":
            p = Lam(self._name(args[0], "proof variable"), self.proof(args[1]))
        elif head in ("app", "pair"):
            p = (App if head == "app" else Pair)(self.proof(args[0]), self.proof(args[1]))
        elif head in ("fst", "snd", "inl", "inr", "botelim"):
            p = {"fst": Fst, "snd": Snd, "inl": Inl, "inr": Inr, "botelim": BotElim}[head](self.proof(args[0]))
        elif head == "case":
            left_var, left = self._branch(args[1], 2)
            right_var, right = self._branch(args[2], 2)
            p = Case(self.proof(args[0]), left_var[0], left, right_var[0], right)
        elif head == "tlam":
            p = TLam(self._name(args[0], "term variable"), self.proof(args[1]))
        elif head == "tapp":
            p = TApp(self.proof(args[0]), self.term(args[1]))
        elif head == "witness":
            p = Witness(self.term(args[0]), self.proof(args[1]))
        elif head == "exelim":
            (term_var, proof_var), body = self._branch(args[1], 3)
            p = ExElim(self.proof(args[0]), term_var, proof_var, body)
        else:
            p = EM(self.prop(args[0]))
        self.positions[id(p)] = (node.line, node.column)
        return p

    def _branch(self, node, size):
        """(a π) of a case, or (x a π) of an exelim"""
        if not isinstance(node, SList) or len(node.items) != size:
            self._fail("expected a branch of %s elements" % size, node)
        names = tuple(self._name(item, "bound variable") for item in node.items[:-1])
        return names, self.proof(node.items[-1])

    # THEORIES

    def rule(self, node, index):
        if not isinstance(node, SList) or node.head not in ("term-rule", "prop-rule") or len(node.items) != 3:
            self._fail("expected (term-rule lhs rhs) or (prop-rule lhs rhs)", node)
        if node.head == "term-rule":
            lhs, rhs = self.term(node.items[1], True), self.term(node.items[2], True)
            if not isinstance(lhs, Fun):
                self._fail("the left-hand side of a term rule must be an application", node)
            return TermRule("r%s" % index, lhs, rhs)
        lhs, rhs = self.prop(node.items[1], True), self.prop(node.items[2], True)
        if not isinstance(lhs, Atom):
            self._fail("the left-hand side of a proposition rule must be atomic", node)
        return PropRule(skolem_rule_name(self.signature, lhs) or "r%s" % index, lhs, rhs)

    def _signature_section(self, node):
        if not isinstance(node, SList) or node.head != "signature":
            self._fail("a theory starts with (signature ...)", node)
        functions, predicates, skolems = {}, {}, []
        for decl in node.items[1:]:
            if not isinstance(decl, SList) or decl.head not in ("fun", "pred", "skolem"):
                self._fail("expected (fun name arity), (pred name arity) or (skolem name (vars) body)", decl)
            if decl.head == "skolem":
                skolems.append(decl)
                continue
            name_node, arity_node = self._expect_list(decl, decl.head, 2)
            if not isinstance(name_node, SAtom) or name_node.text in RESERVED:
                self._fail("expected a symbol name", name_node)
            if not isinstance(arity_node, SAtom) or not self.numeral_re.match(arity_node.text):
                self._fail("expected an arity", arity_node)
            table = functions if decl.head == "fun" else predicates
            if name_node.text in functions or name_node.text in predicates:
                raise SignatureError('symbol "%s" is declared twice' % name_node.text, decl.line, decl.column)
            table[name_node.text] = int(arity_node.text)
        try:
            self.signature = Signature(functions, predicates)
        except SignatureError as e:
            raise SignatureError(str(e), node.line, node.column)
        for decl in skolems:
            name_node, vars_node, body_node = self._expect_list(decl, "skolem", 3)
            name = self._name(name_node, "skolem symbol")
            if not isinstance(vars_node, SList) or not vars_node.items:
                self._fail("expected the variable list x1 ... xn+1", vars_node)
            variables = tuple(self._name(item, "variable") for item in vars_node.items)
            body = self.prop(body_node)
            if name in self.signature.functions or name in self.signature.predicates:
                raise SignatureError('symbol "%s" is declared twice' % name, decl.line, decl.column)
            self.signature = self.signature.with_function(name, len(variables) - 1, SkolemTag(variables, body))
        return self.signature

    def theory(self, nodes, name=None):
        """Builds a Theory from the top-level expressions of a theory file"""
        if not nodes:
            raise KernelSyntaxError("empty theory")
        signature = self._signature_section(nodes[0])
        rules, axioms = [], {}
        rest = list(nodes[1:])
        if rest and isinstance(rest[0], SList) and rest[0].head == "rules":
            rules = [self.rule(item, i + 1) for i, item in enumerate(rest.pop(0).items[1:])]
        if rest and isinstance(rest[0], SList) and rest[0].head == "axioms":
            for item in rest.pop(0).items[1:]:
                ax_name, ax_prop = self._expect_list(item, "ax", 2)
                ax_name = self._name(ax_name, "axiom name")
                if ax_name in axioms:
                    raise SignatureError('axiom "%s" is declared twice' % ax_name, item.line, item.column)
                axioms[ax_name] = self.prop(ax_prop)
        if rest:
            self._fail("unexpected section after (axioms ...)", rest[0])
        return Theory(signature, RewriteSystem(tuple(rules)), axioms, name=name)

    def proof_object(self, node):
        if not isinstance(node, SList) or node.head != "proof" or len(node.items) < 4:
            self._fail("expected (proof name (goal A) (term π))", node)
        self.positions = {}
        name = self._name(node.items[1], "proof name")
        sections = list(node.items[2:])
        context = []
        if isinstance(sections[0], SList) and sections[0].head == "context":
            for hyp in sections.pop(0).items[1:]:
                hyp_name, hyp_prop = self._expect_list(hyp, "hyp", 2)
                context.append((self._name(hyp_name, "hypothesis name"), self.prop(hyp_prop)))
        if len(sections) != 2:
            self._fail("expected (goal A) (term π)", node)
        goal, = self._expect_list(sections[0], "goal", 1)
        term, = self._expect_list(sections[1], "term", 1)
        goal = self.prop(goal)
        term = self.proof(term)
        return ProofObject(name, goal, term, tuple(context), self.positions, node.line)


def skolem_rule_name(signature, lhs):
    """Rules of the form x in f(...) with f a Skolem symbol are named after f"""
    if signature is None or lhs.predicate != MEMBERSHIP or len(lhs.args) != 2:
        return None
    container = lhs.args[1]
    if isinstance(container, Fun) and signature.is_skolem(container.symbol):
        return container.symbol


# CONVENIENCE READERS

def parse_term(text, signature=None, allow_meta=False):
    parser = KernelParser(signature)
    return parser.term(parser.read_one(text), allow_meta)


def parse_prop(text, signature=None, allow_meta=False):
    parser = KernelParser(signature)
    return parser.prop(parser.read_one(text), allow_meta)


def parse_proof(text, signature=None):
    parser = KernelParser(signature)
    return parser.proof(parser.read_one(text))


def parse_theory(text, name=None):
    parser = KernelParser()
    return parser.theory(parser.read(text), name)


def parse_proof_file(text, signature):
    """Reads every (proof ...) entry of a proof file

    :rtype: list[ProofObject]
    """
    parser = KernelParser(signature)
    return [parser.proof_object(node) for node in parser.read(text)]


def load_theory(path, name=None):
    """Reads a theory file, the theory is named after the file when no name is given"""
    with open(path, encoding="utf-8") as f:
        text = f.read()
    return parse_theory(text, name or os.path.splitext(os.path.basename(path))[0])


# PRINTERS

def format_term(t):
    if isinstance(t, (Var, Meta)):
        return str(t)
    n = as_numeral(t)
    if n is not None:
        return str(n)
    if not t.args:
        return "(%s)" % t.symbol
    return "(%s %s)" % (t.symbol, " ".join(format_term(a) for a in t.args))


def format_prop(a):
    if isinstance(a, Atom):
        return "(%s)" % " ".join([a.predicate] + [format_term(t) for t in a.args])
    if isinstance(a, Bottom):
        return "false"
    if isinstance(a, (Implies, And, Or)):
        op = {Implies: "=>", And: "and", Or: "or"}[type(a)]
        return "(%s %s %s)" % (op, format_prop(a.left), format_prop(a.right))
    return "(%s %s %s)" % ("forall" if isinstance(a, Forall) else "exists", a.var, format_prop(a.body))


def format_proof(p):
    if isinstance(p, PVar):
        return "(pvar %s)" % p.name
    if isinstance(p, (Lam, TLam)):
        return "(%s %s %s)" % ("lam" if isinstance(p, Lam) else "tlam", p.var, format_proof(p.body))
    if isinstance(p, (App, Pair)):
        first, second = (p.fn, p.arg) if isinstance(p, App) else (p.left, p.right)
        return "(%s %s %s)" % ("app" if isinstance(p, App) else "pair", format_proof(first), format_proof(second))
    if isinstance(p, (Fst, Snd)):
        return "(%s %s)" % ("fst" if isinstance(p, Fst) else "snd", format_proof(p.pair))
    if isinstance(p, (Inl, Inr, BotElim)):
        return "(%s %s)" % ({Inl: "inl", Inr: "inr", BotElim: "botelim"}[type(p)], format_proof(p.body))
    if isinstance(p, Case):
        return "(case %s (%s %s) (%s %s))" % (format_proof(p.scrutinee), p.left_var, format_proof(p.left),
                                             p.right_var, format_proof(p.right))
    if isinstance(p, TApp):
        return "(tapp %s %s)" % (format_proof(p.fn), format_term(p.term))
    if isinstance(p, Witness):
        return "(witness %s %s)" % (format_term(p.term), format_proof(p.body))
    if isinstance(p, ExElim):
        return "(exelim %s (%s %s %s))" % (format_proof(p.scrutinee), p.term_var, p.proof_var,
                                           format_proof(p.body))
    return "(em %s)" % format_prop(p.prop)


def format_any(x):
    """Prints a term, proposition, proof term or plain string"""
    if x is None or isinstance(x, str):
        return x
    if isinstance(x, (Var, Meta, Fun)):
        return format_term(x)
    if isinstance(x, (PVar, Lam, App, Pair, Fst, Snd, Inl, Inr, Case, BotElim, TLam, TApp, Witness, ExElim, EM)):
        return format_proof(x)
    return format_prop(x)


def format_rule(rule):
    if isinstance(rule, TermRule):
        return "(term-rule %s %s)" % (format_term(rule.lhs), format_term(rule.rhs))
    return "(prop-rule %s %s)" % (format_prop(rule.lhs), format_prop(rule.rhs))


def _section(head, entries):
    if not entries:
        return "(%s)" % head
    return "(%s\n%s)" % (head, "\n".join("  " + e for e in entries))


def format_theory(theory):
    """Canonical text of a theory file, read back by parse_theory()"""
    signature = theory.signature
    declarations = ["(fun %s %s)" % (name, arity) for name, arity in signature.functions.items()
                    if not signature.is_skolem(name)]
    declarations += ["(pred %s %s)" % item for item in signature.predicates.items()]
    declarations += ["(skolem %s (%s) %s)" % (name, " ".join(tag.variables), format_prop(tag.body))
                     for name, tag in signature.skolem_tags.items()]
    return "\n".join([_section("signature", declarations),
                      _section("rules", [format_rule(r) for r in theory.rules.rules]),
                      _section("axioms", ["(ax %s %s)" % (name, format_prop(a))
                                          for name, a in theory.axioms.items()])]) + "\n"


def format_proof_object(proof):
    lines = ["(proof %s" % proof.name]
    if proof.context:
        lines.append("  (context %s)" % " ".join("(hyp %s %s)" % (name, format_prop(a))
                                                 for name, a in proof.context))
    lines.append("  (goal %s)" % format_prop(proof.goal))
    lines.append("  (term %s))" % format_proof(proof.term))
    return "\n".join(lines)


def format_levels(stratification):
    return "(levels %s)" % " ".join("(%s %s)" % item for item in stratification.levels.items())


def _quote(text):
    return '"%s"' % text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", " ")


def format_report(report, output="text"):
    """Prints a CheckReport as human-readable text or as an s-expression

    :param CheckReport report:
        report to print
    :param str output:
        "text" or "sexp"
    """
    expected, found, term = format_any(report.expected), format_any(report.found), format_any(report.term)
    if output == "sexp":
        parts = ["report", report.name, report.category]
        if not report.ok:
            parts.append("(message %s)" % _quote(report.message))
            if report.line is not None:
                parts.append("(at %s %s)" % (report.line, report.column if report.column is not None else 0))
            if expected is not None:
                parts.append("(expected %s)" % expected)
            if found is not None:
                parts.append("(found %s)" % found)
            if term is not None:
                parts.append("(subterm %s)" % term)
        return "(%s)" % " ".join(parts)
    if report.ok:
        return "%s: ok" % report.name
    where = ""
    if report.line is not None:
        where = " at line %s" % report.line + (", column %s" % report.column if report.column is not None else "")
    lines = ["%s: %s%s: %s" % (report.name, report.category.replace("_", " "), where, report.message)]
    if term is not None:
        lines.append("  subterm:  %s" % term)
    if expected is not None:
        lines.append("  expected: %s" % expected)
    if found is not None:
        lines.append("  found:    %s" % found)
    return "\n".join(lines)
